import pytest

import oracle
from fdalg.algebra import check_algebra
from fdalg.endo import (
    codomdim_crosscheck, end_algebra, gendo_domdim_crosscheck, hom_db_module,
    hom_functor_map, hom_functor_module, mueller_crosscheck, refute_nearly_gorenstein,
)
from fdalg.families import gorenstein_example
from fdalg.homological import DimensionValue
from fdalg.linalg import QQ
from fdalg.module import (
    cosyzygy, direct_sum, dual, isomorphism_test, projective_cover, regular_module, syzygy,
)


@pytest.fixture(scope="module")
def ctx1(A2, M):
    return end_algebra(direct_sum([regular_module(A2), M(1)], name="N"))


def test_end_algebra_dimension(ctx1):
    parts = ctx1.summands
    want = sum(oracle.hom_dim(p, q) for p in parts for q in parts)
    assert ctx1.algebra.dim == want == 19
    assert check_algebra(ctx1.algebra).ok


def test_end_algebra_idempotents(ctx1):
    b = ctx1.algebra
    assert len(b.idempotents) == 2
    assert len(b.class_representatives) == 2
    assert ctx1.gendo_symmetric


def test_yoneda(ctx1):
    y = hom_functor_module(ctx1, ctx1.generator)
    assert isomorphism_test(y, regular_module(ctx1.algebra)).verdict == "iso"


def test_hom_functor_is_functorial(ctx1, M):
    cov = projective_cover(M(2))
    fmap = hom_functor_map(ctx1, cov.map)
    assert fmap.is_intertwiner()
    assert fmap.source.dim == hom_functor_module(ctx1, cov.projective).dim


def test_mueller_on_regular(ctx1):
    cc = mueller_crosscheck(ctx1, ctx1.generator)
    assert cc.agree
    assert cc.direct == DimensionValue.exact(2, 12)


def test_mueller_on_twisted_module(ctx1, M):
    cc = mueller_crosscheck(ctx1, M("1/2"))
    assert cc.agree
    assert not cc.direct.is_exact and cc.direct.value == 13


def test_four_summand_endomorphism_algebra(A2, M):
    ctx = end_algebra(direct_sum([regular_module(A2), M(1), M(2), M(3)], name="N"))
    assert ctx.algebra.dim == 53
    assert len(ctx.algebra.idempotents) == 4
    cc = mueller_crosscheck(ctx, ctx.generator)
    assert cc.agree and cc.direct.value == 2


def test_codomdim_formula(ctx1, M, A2):
    for x in (M(1), M(2), M("1/2"), cosyzygy(M(1), 1), regular_module(A2), syzygy(M(5), 1)):
        assert codomdim_crosscheck(ctx1, x).agree


def test_gendo_iso_criterion(ctx1, M):
    for y in (regular_module(ctx1.algebra), hom_functor_module(ctx1, M("1/2"))):
        g = gendo_domdim_crosscheck(ctx1, y)
        assert g.consistent
        assert g.iso.verdict == "iso"
    # a simple B-module has dominant dimension 0 and is not Hom_B(D(B), -)-fixed
    s = hom_functor_module(ctx1, M(1))
    g = gendo_domdim_crosscheck(ctx1, s)
    assert g.consistent


def test_hom_db_dimension(ctx1):
    y = regular_module(ctx1.algebra)
    assert hom_db_module(y).dim == y.dim


def test_witness_bundle(A2, M):
    w = refute_nearly_gorenstein(A2, [M(1)], bound=12, depth=4)
    assert w.ok and w.l == 1
    c = w.certificates
    assert c["codomdim"] == {"kind": "exact", "value": 0, "bound": 12}
    assert c["domdim"]["kind"] == "at_least" and c["domdim"]["value"] == 13
    assert c["criterion"].startswith("criterion-certified")
    assert c["costable_up_to"]["holds"]
    assert c["domdim_B"]["value"] == 2
    assert "codomdim = 0 < 2" in c["not_GI_reason"]
    assert [d["value"] for d in c["cosyzygy_codomdims"]] == [1, 2, 3, 4]
    js = w.to_json()
    assert set(js) >= {"base_algebra", "generator_summands", "l", "m_label", "R", "certificates"}


def test_witness_depth_zero(A2, M):
    w = refute_nearly_gorenstein(A2, [M(1)], bound=8, depth=0)
    assert not w.certificates.get("cosyzygy_codomdims")


def test_witness_with_overlapping_parameters(A2, M):
    w = refute_nearly_gorenstein(A2, [M(1), M(2), M(4)], bound=8, depth=2)
    assert w.ok


def test_witness_requires_symmetric_base():
    g = gorenstein_example(QQ)
    with pytest.raises(ValueError):
        refute_nearly_gorenstein(g, [dual(regular_module(g.opposite()))], bound=4)


def test_witness_rejects_projective_summand(A2, M):
    with pytest.raises(ValueError):
        refute_nearly_gorenstein(A2, [direct_sum([regular_module(A2), M(1)])], bound=4)


def test_witness_fails_honestly_without_tail(A2, M):
    # Ext^i(M_1, M_{2^12}) is nonzero at i = 12, so no candidate passes at H = 12
    with pytest.raises(ValueError):
        refute_nearly_gorenstein(A2, [M(1)], m=M(4096), bound=12)
