import pytest
from hypothesis import given, strategies as st

from fdalg.algebra import check_algebra
from fdalg.families import (
    LiuSchulzParams, QCIParams, hom_ext_grid, liu_schulz, module_Mc, multiplicative_order,
    power_index, quantum_complete_intersection, quantum_exterior_2, tail_vanishes,
    tail_vanishes_bounded, truncated_polynomial,
)
from fdalg.linalg import GF, QQ


def test_liu_schulz_rejects_zero():
    with pytest.raises(ValueError):
        liu_schulz(r=0)


def test_params_flags():
    p = LiuSchulzParams(QQ, 1)
    assert p.r_squared_is_one and p.r_cubed_is_one
    assert p.warnings()
    assert LiuSchulzParams(QQ, -1).r_squared_is_one
    assert not LiuSchulzParams(QQ, 2).warnings()
    assert LiuSchulzParams(GF(13), 3).root_of_unity_order == 3


def test_r_equal_one_still_dimension_eight():
    a = liu_schulz(r=1)
    assert a.dim == 8 and check_algebra(a).ok


def test_qci_matches_liu_schulz():
    # yx = -r xy, zy = -r yz, zx = -r^{-1} xz  <->  q[(1,0)] = q[(2,1)] = r, q[(2,0)] = 1/r
    r = QQ(2)
    ls = liu_schulz(r=r)
    q = quantum_complete_intersection(QCIParams(QQ, [2, 2, 2], {(1, 0): r, (2, 1): r, (2, 0): 1 / r}))
    perm = [q.labels.index(lab) for lab in ls.labels]
    for i in range(8):
        for j in range(8):
            assert [q.table[perm[i]][perm[j]][perm[k]] for k in range(8)] == ls.table[i][j]


def test_qci_small_cases():
    k3 = truncated_polynomial(QQ, 3)
    assert k3.dim == 3 and k3.labels == ["1", "x", "x^2"]
    lam = quantum_exterior_2(QQ, 3)
    assert lam.dim == 4 and sorted(lam.labels) == ["1", "x", "xy", "y"]
    x, y = lam.gen("x"), lam.gen("y")
    assert x * y + 3 * (y * x) == 0 * x


@given(st.lists(st.integers(2, 3), min_size=1, max_size=3),
       st.lists(st.sampled_from([1, 2, -1, 3, "1/2"]), min_size=3, max_size=3))
def test_qci_dimension_is_product(exps, qs):
    n = len(exps)
    q = {}
    k = 0
    for i in range(n):
        for j in range(i):
            q[(i, j)] = QQ.parse(str(qs[k]))
            k += 1
    a = quantum_complete_intersection(QCIParams(QQ, exps, q))
    prod = 1
    for e in exps:
        prod *= e
    assert a.dim == prod
    assert check_algebra(a).ok


def test_power_index():
    assert power_index(QQ, 2, 8) == 3
    assert power_index(QQ, 2, QQ.parse("1/2")) is None
    assert power_index(QQ, -1, -1) == 1
    assert power_index(GF(13), 3, 9) == 2
    assert multiplicative_order(GF(13), 3, 10) == 3


def test_tail_criterion_closed_form():
    assert tail_vanishes(QQ, 2, 1, 3)
    assert not tail_vanishes(QQ, 2, 1, 1024)
    assert tail_vanishes(QQ, 2, 1, 4, start=4)
    assert not tail_vanishes(QQ, 2, 1, 4, start=3)
    assert tail_vanishes(QQ, 2, 1, QQ.parse("1/2"))
    # over F_p the orbit cycles, so being hit once means hit forever
    assert not tail_vanishes(GF(13), 3, 1, 1, start=50)


def test_tail_bounded_prediction():
    assert not tail_vanishes_bounded(QQ, 2, 1, 16, 1, 12)
    assert not tail_vanishes_bounded(QQ, 2, 1, 16, 5, 12)
    assert tail_vanishes_bounded(QQ, 2, 1, 16, 6, 12)


@pytest.mark.parametrize("r", ["2", "3", "5/2"])
def test_grid_agrees_with_closed_forms(r):
    t = hom_ext_grid(QQ.parse(r), [1, 2, 3, 4, 5], 12)
    assert t.all_agree
    assert not t.disagreements()


def test_grid_cells():
    t = hom_ext_grid(2, [1, 2, 3, 4, 5], 12)
    cell = {(c["c"], c["d"]): c for c in t.ext1}
    assert cell[("1", "4")]["dim"] > 0
    assert cell[("3", "5")]["dim"] == 0
    assert all(c["dim"] == 3 for c in t.hom if c["c"] == c["d"])
    js = t.to_json()
    assert js["all_agree"] and len(js["tail"]) == 25
    assert "all cells agree" in t.to_text()


def test_grid_over_root_of_unity_records_cycling():
    # r = 3 has order 3 in F_13: Ext^1(M_1, M_1) picks up c r^3 = c
    t = hom_ext_grid(3, [1, 2], 10, GF(13))
    cell = {(c["c"], c["d"]): c for c in t.ext1}
    assert cell[("1 mod 13", "1 mod 13")]["dim"] == 2
    tail = {(c["c"], c["d"]): c for c in t.tail}
    assert not tail[("1 mod 13", "1 mod 13")]["criterion_all_i"]


def test_grid_rejects_bad_input():
    with pytest.raises(ValueError):
        hom_ext_grid(2, [1, 1], 4)
    with pytest.raises(ValueError):
        hom_ext_grid(2, [0, 1], 4)


def test_Mc_parameter_recorded(A2):
    m = module_Mc(A2, 5)
    assert m.parameter == 5 and m.name == "M_5"
