import pytest
from hypothesis import given, strategies as st

import oracle
from fdalg.families import gorenstein_example, quantum_exterior_2, upper_triangular_matrices
from fdalg.linalg import QQ
from fdalg.module import (
    Module, check_module, cokernel, cosyzygy, direct_sum, dual, hom_space,
    hom_space_direct, image, injective_envelope, is_generator, is_indecomposable, is_injective,
    is_projective, isomorphism_test, kernel, projective_cover, projective_indecomposable,
    radical_series, regular_module, socle, strip_projective_summands, syzygy, top,
)

cvals = st.sampled_from([1, 2, 3, 4, 5, -1, "1/2", "3/2"])


def test_Mc_dimension_and_validity(M):
    for c in (1, 2, 3, 4, 5):
        m = M(c)
        assert m.dim == 4
        assert check_module(m).ok


def test_Mc_rejects_zero(A2):
    from fdalg.families import module_Mc
    with pytest.raises(ValueError):
        module_Mc(A2, 0)


def test_radical_layers_of_Mc(M):
    m = M(1)
    assert radical_series(m) == [4, 3, 1, 0]
    assert top(m).dim == 1
    assert socle(m)[0].dim == 1


def test_module_json_round_trip(M, A2):
    m = M(3)
    back = Module.from_json(m.to_json(), A2)
    assert back.dim == 4
    assert all(a == b for a, b in zip(back.actions, m.actions))


def test_hom_dims_against_oracle(M):
    for c, e in [(1, 1), (1, 4), (1, 2), (3, 5), (2, 8)]:
        assert hom_space(M(c), M(e)).dim == oracle.hom_dim(M(c), M(e))


def test_hom_space_presentation_matches_direct(M):
    for c, e in [(1, 4), (2, 2), (5, 3)]:
        assert hom_space(M(c), M(e)).dim == hom_space_direct(M(c), M(e)).dim


def test_hom_basis_elements_are_intertwiners(M):
    hs = hom_space(M(1), M(4))
    assert hs.dim == 3
    for f in hs.maps():
        assert f.is_intertwiner()


def test_projective_cover_of_Mc(M, A2):
    cov = projective_cover(M(1))
    assert cov.projective.dim == 8
    assert cov.map.is_surjective()
    assert cov.syzygy.dim == 4


def test_syzygy_identities(M):
    # (x + c y)A is M_{cr}: Omega(M_1) = M_2 and Omega^2(M_1) = M_4 for r = 2
    for k, target in ((1, 2), (2, 4)):
        cert = isomorphism_test(syzygy(M(1), k), M(target))
        assert cert.verdict == "iso"
        assert cert.verify()


def test_cosyzygy_inverts_syzygy(M):
    assert isomorphism_test(cosyzygy(M(2), 1), M(1)).verdict == "iso"


def test_non_isomorphic_Mc(M):
    cert = isomorphism_test(M(1), M(3))
    assert cert.verdict == "non_iso"
    assert cert.reason


def test_regular_module_is_projective_and_injective(A2):
    reg = regular_module(A2)
    assert is_projective(reg)
    assert is_injective(reg)


def test_Mc_indecomposable_not_projective(M):
    assert is_indecomposable(M(1))
    assert not is_projective(M(1))
    assert not is_indecomposable(direct_sum([M(1), M(2)]))


def test_direct_sum_structure(M):
    s = direct_sum([M(1), M(2), M(3)])
    assert s.dim == 12
    assert check_module(s).ok
    for inj, proj in zip(s.injections, s.projections):
        assert proj.compose(inj).matrix == M(1).identity().matrix


def test_kernel_image_cokernel(M):
    cov = projective_cover(M(1))
    ker, inc = kernel(cov.map)
    im, _ = image(cov.map)
    cok, _ = cokernel(cov.map)
    assert ker.dim == 4 and im.dim == 4 and cok.dim == 0
    assert inc.is_injective()


def test_strip_projective_summands(M, A2):
    rest, removed = strip_projective_summands(direct_sum([regular_module(A2), M(1)]))
    assert rest.dim == 4
    assert len(removed) == 1


def test_is_generator(M, A2):
    assert is_generator(direct_sum([regular_module(A2), M(1)]))
    assert not is_generator(M(1))
    t = upper_triangular_matrices(QQ, 2)
    p0 = projective_indecomposable(t, 0)
    assert not is_generator(p0)
    assert is_generator(regular_module(t))


def test_injective_envelope_over_nonselfinjective():
    g = gorenstein_example(QQ)
    for j in range(2):
        s = top(projective_indecomposable(g, j))
        env = injective_envelope(s)
        assert env.is_injective()
        assert is_injective(env.target)


def test_simple_over_quantum_exterior_has_oracle_ext():
    lam = quantum_exterior_2(QQ, 2)
    k = top(regular_module(lam))
    assert oracle.ext1_dim(k, k) == 2


@given(cvals)
def test_dual_involution(c):
    from fdalg.families import liu_schulz, module_Mc
    m = module_Mc(liu_schulz(r=2), QQ.parse(str(c)))
    d = dual(m)
    assert d.algebra is m.algebra.opposite()
    assert dual(d) is m
    assert check_module(d).ok


@given(cvals, cvals)
def test_hom_duality(c, e):
    from fdalg.families import liu_schulz, module_Mc
    a = liu_schulz(r=2)
    m, n = module_Mc(a, QQ.parse(str(c))), module_Mc(a, QQ.parse(str(e)))
    assert hom_space(m, n).dim == hom_space(dual(n), dual(m)).dim


@given(cvals)
def test_cosyzygy_of_syzygy_is_identity(c):
    from fdalg.families import liu_schulz, module_Mc
    m = module_Mc(liu_schulz(r=2), QQ.parse(str(c)))
    assert isomorphism_test(cosyzygy(syzygy(m, 1), 1), m).verdict == "iso"
    assert isomorphism_test(syzygy(cosyzygy(m, 1), 1), m).verdict == "iso"


@given(st.lists(cvals, min_size=1, max_size=3))
def test_direct_sum_dimension(cs):
    from fdalg.families import liu_schulz, module_Mc
    a = liu_schulz(r=2)
    parts = [module_Mc(a, QQ.parse(str(c))) for c in cs]
    s = direct_sum(parts)
    assert s.dim == sum(p.dim for p in parts)
    assert len(s.summands) == len(parts)


def test_zero_module_is_projective_and_injective(A2):
    from fdalg.module import zero_module
    z = zero_module(A2)
    assert is_projective(z) and is_injective(z)
