import pytest
from hypothesis import given, strategies as st

import oracle
from fdalg.algebra import (
    Algebra, UnsupportedCharacteristic, check_algebra, is_local, is_selfinjective, opposite,
    symmetrizing_form, tensor_product, trivial_extension,
)
from fdalg.families import (
    gorenstein_example, liu_schulz, quantum_exterior_2, truncated_polynomial,
    upper_triangular_matrices,
)
from fdalg.linalg import GF, QQ


def test_liu_schulz_structure(A2):
    assert A2.dim == 8
    assert A2.labels == ["1", "x", "y", "z", "xy", "xz", "yz", "xyz"]
    chk = check_algebra(A2)
    assert chk.ok and chk.triples_checked == 512


def test_liu_schulz_relations(A2):
    x, y, z = A2.gen("x"), A2.gen("y"), A2.gen("z")
    assert (x * x).coords == A2.zero_vector()
    assert y * x + 2 * (x * y) == 0 * x
    assert x * z + 2 * (z * x) == 0 * x
    assert z * y + 2 * (y * z) == 0 * x


def test_radical_powers(A2):
    # xyz spans rad^3, rad^4 = 0
    assert [len(e) for e in A2.radical_powers] == [8, 7, 4, 1, 0]
    assert is_local(A2)


def test_symmetric_form_found(A2):
    form = symmetrizing_form(A2)
    assert form.status == "found"
    assert form.gram_rank == 8


def test_selfinjective(A2):
    assert is_selfinjective(A2)


def test_nonassociative_detected():
    table = [
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[0, 1, 0], [0, 0, 1], [0, 0, 0]],
        [[0, 0, 1], [0, 1, 0], [0, 0, 0]],
    ]
    a = Algebra.from_table(QQ, table, [1, 0, 0])
    chk = check_algebra(a)
    assert not chk.ok
    assert not oracle.is_associative(a)


def test_upper_triangular_idempotents():
    t = upper_triangular_matrices(QQ, 3)
    assert t.dim == 6
    assert len(t.idempotents) == 3
    assert len(t.radical) == 3
    assert not is_selfinjective(t)


def test_idempotent_lifting_without_hint():
    t = upper_triangular_matrices(QQ, 2)
    bare = Algebra(t.field, t.table, t.unit)
    es = bare.idempotents
    assert len(es) == 2
    for e in es:
        assert bare.mult(e, e) == e
    assert bare.mult(es[0], es[1]) == bare.zero_vector()


def test_opposite_is_cached_and_involutive(A2):
    op = opposite(A2)
    assert op.opposite() is A2
    assert check_algebra(op).ok
    # b_i b_j in A is b_j b_i in A^op
    assert op.table[1][2] == A2.table[2][1]


def test_json_round_trip(A2):
    back = Algebra.from_json(A2.to_json())
    assert back.same_as(A2)
    assert back.labels == A2.labels


def test_trivial_extension_of_quantum_exterior():
    lam = quantum_exterior_2(QQ, 2)
    t = trivial_extension(lam)
    assert t.dim == 8
    assert check_algebra(t).ok
    assert is_local(t)
    assert symmetrizing_form(t).status == "found"


def test_quantum_exterior_not_symmetric_when_a_not_minus_one():
    # the Nakayama automorphism is nontrivial unless the relation is xy = yx
    assert symmetrizing_form(quantum_exterior_2(QQ, 2)).status == "absent"
    assert symmetrizing_form(quantum_exterior_2(QQ, -1)).status == "found"


def test_tensor_product_dims():
    k2 = truncated_polynomial(QQ, 2)
    t2 = upper_triangular_matrices(QQ, 2)
    p = tensor_product(k2, t2)
    assert p.dim == 6
    assert check_algebra(p).ok


def test_gorenstein_example_is_not_selfinjective():
    g = gorenstein_example(QQ)
    assert g.dim == 6
    assert not is_selfinjective(g)


def test_small_characteristic_needs_local_hint():
    t = upper_triangular_matrices(GF(2), 3)
    bare = Algebra(t.field, t.table, t.unit)
    with pytest.raises(UnsupportedCharacteristic):
        bare.radical


def test_liu_schulz_over_small_prime_uses_local_radical():
    from fdalg.families import LiuSchulzParams
    a = liu_schulz(LiuSchulzParams(GF(7), 2))
    assert check_algebra(a).ok
    assert [len(e) for e in a.radical_powers] == [8, 7, 4, 1, 0]


def test_bad_local_hint_rejected():
    a = truncated_polynomial(QQ, 3)
    bare = Algebra(a.field, a.table, a.unit)
    bare._local_radical = [bare.basis_vector(0), bare.basis_vector(1)]
    with pytest.raises(ValueError):
        bare.radical


@given(st.fractions(min_value=-5, max_value=5).filter(lambda q: q != 0))
def test_liu_schulz_associative_for_random_r(r):
    a = liu_schulz(r=r)
    assert check_algebra(a).ok


def test_symmetrizing_form_small_examples():
    k2 = truncated_polynomial(QQ, 2)
    form = symmetrizing_form(k2)
    assert form.status == "found" and form.gram_rank == 2
    kk = Algebra.from_table(QQ, [[[1, 0], [0, 0]], [[0, 0], [0, 1]]], [1, 1])
    assert symmetrizing_form(kk).status == "found"
    t = trivial_extension(k2)
    assert t.dim == 4 and symmetrizing_form(t).status == "found"


def test_symmetrizing_form_is_trace_like(A2):
    form = symmetrizing_form(A2)
    lam = form.functional
    for i in range(A2.dim):
        for j in range(A2.dim):
            u = A2.mult(A2.basis_vector(i), A2.basis_vector(j))
            v = A2.mult(A2.basis_vector(j), A2.basis_vector(i))
            assert sum(a * b for a, b in zip(lam, u)) == sum(a * b for a, b in zip(lam, v))


def test_trivial_extension_of_upper_triangular_is_symmetric():
    t = trivial_extension(upper_triangular_matrices(QQ, 2))
    assert t.dim == 6 and check_algebra(t).ok
    assert symmetrizing_form(t).status == "found"
