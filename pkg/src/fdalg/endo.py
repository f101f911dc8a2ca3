"""Endomorphism algebras of generators and the Hom(N, -) functor.

``B = End_A(N)`` has as basis the concatenated bases of ``Hom(N_i, N_j)`` for the
given summands ``N_i`` of ``N``; the product is composition, ``b * b' = b o b'``,
so that ``Hom_A(N, x)`` is a right ``B``-module by precomposition.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algebra import Algebra, NonSplitError, UnsupportedCharacteristic, symmetrizing_form
from .families import tail_vanishes
from .homological import (
    DEFAULT_BOUND, DimensionValue, codominant_dimension, dominant_dimension, ext_dims,
    finitistic_codominant_witness, first_nonzero_ext, is_costable, is_gorenstein_injective,
    is_stable,
)
from .linalg import Matrix
from .module import (
    Module, ModuleMap, cosyzygy, direct_sum, dual, hom_space,
    is_generator, is_indecomposable, isomorphism_test, regular_module,
    strip_projective_summands, syzygy,
)

__all__ = [
    "EndoContext", "CrossCheck", "Witness", "end_algebra", "hom_functor_module",
    "hom_functor_map", "mueller_crosscheck", "codomdim_crosscheck",
    "gendo_domdim_crosscheck", "refute_nearly_gorenstein",
    "liu_schulz_domdim_criterion", "hom_from_dual_module",
]


@dataclass
class EndoContext:
    base: Algebra
    generator: Module
    summands: list
    algebra: Algebra
    blocks: dict                    # (i, j) -> HomSpace(N_i, N_j)
    index: list                     # basis position -> (i, j, k)
    gendo_symmetric: bool = False
    _functor_cache: dict = dc_field(default_factory=dict, repr=False)

    def basis_map(self, s) -> Matrix:
        i, j, k = self.index[s]
        return self.blocks[(i, j)].basis[k]


def end_algebra(n: Module, summands=None, check_generator=True) -> EndoContext:
    """``End_A(n)`` with basis blockwise over ``Hom(N_i, N_j)``."""
    a = n.algebra
    f = a.field
    parts = list(summands or n.summands or (n,))
    if summands is not None or n.summands is None:
        n = direct_sum(parts, name=n.name) if len(parts) > 1 or parts[0] is not n else n
    k = len(parts)
    blocks = {}
    index = []
    offsets = {}
    for i in range(k):
        for j in range(k):
            hs = hom_space(parts[i], parts[j])
            blocks[(i, j)] = hs
            offsets[(i, j)] = len(index)
            index.extend((i, j, t) for t in range(hs.dim))
    d = len(index)
    table = [[None] * d for _ in range(d)]
    zero = [f.zero] * d
    for s, (i, j, p) in enumerate(index):
        bs = blocks[(i, j)].basis[p]
        for t, (k2, l, q) in enumerate(index):
            # b_s o b_t is nonzero only when b_t lands where b_s starts
            if l != i:
                table[s][t] = zero
                continue
            prod = bs @ blocks[(k2, l)].basis[q]
            hs = blocks[(k2, j)]
            v = list(zero)
            off = offsets[(k2, j)]
            for r, c in enumerate(hs.coordinates(prod)):
                v[off + r] = c
            table[s][t] = v
    unit = list(zero)
    for i in range(k):
        hs = blocks[(i, i)]
        for r, c in enumerate(hs.coordinates(Matrix.identity(f, parts[i].dim))):
            unit[offsets[(i, i)] + r] = c
    labels = [f"h{i}{j}.{p}" for (i, j, p) in index]
    names = ",".join(p.name or "?" for p in parts)
    b = Algebra(f, table, unit, labels, f"End({names})")
    if all(_is_indecomposable_safe(p) for p in parts):
        idems = []
        for i in range(k):
            e = list(zero)
            for r, c in enumerate(blocks[(i, i)].coordinates(Matrix.identity(f, parts[i].dim))):
                e[offsets[(i, i)] + r] = c
            idems.append(e)
        b._known_idempotents = idems
    gendo = False
    if check_generator:
        gendo = bool(symmetrizing_form(a)) and is_generator(n)
    return EndoContext(a, n, parts, b, blocks, index, gendo)


def _is_indecomposable_safe(m):
    try:
        return is_indecomposable(m)
    except (NonSplitError, UnsupportedCharacteristic):
        return False


def hom_functor_module(ctx: EndoContext, x: Module, name=None) -> Module:
    """``Hom_A(N, x)`` as a right ``B``-module, ``phi . b = phi o b``."""
    key = id(x)
    hit = ctx._functor_cache.get(key)
    if hit is not None and hit[0] is x:
        return hit[1]
    f = x.field
    parts = ctx.summands
    hx = [hom_space(p, x) for p in parts]
    offs = [0]
    for h in hx:
        offs.append(offs[-1] + h.dim)
    dim = offs[-1]
    acts = []
    for s in range(len(ctx.index)):
        k, l, q = ctx.index[s]
        bt = ctx.blocks[(k, l)].basis[q]
        m = Matrix.zeros(f, dim, dim)
        # phi in Hom(N_l, x) is sent to phi o b_t in Hom(N_k, x)
        for r, phi in enumerate(hx[l].basis):
            coords = hx[k].coordinates(phi @ bt)
            for u, c in enumerate(coords):
                if c:
                    m.rows[offs[k] + u][offs[l] + r] = c
        acts.append(m)
    mod = Module(ctx.algebra, dim, acts, name=name or (f"Hom(N,{x.name})" if x.name else None))
    mod.functor_blocks = (hx, offs)
    ctx._functor_cache[key] = (x, mod)
    return mod


def hom_functor_map(ctx: EndoContext, g: ModuleMap) -> ModuleMap:
    """``Hom_A(N, g)``: postcomposition with ``g: x -> y``."""
    X = hom_functor_module(ctx, g.source)
    Y = hom_functor_module(ctx, g.target)
    hx, ox = X.functor_blocks
    hy, oy = Y.functor_blocks
    F = Matrix.zeros(g.source.field, Y.dim, X.dim)
    for k in range(len(ctx.summands)):
        for r, phi in enumerate(hx[k].basis):
            for u, c in enumerate(hy[k].coordinates(g.matrix @ phi)):
                if c:
                    F.rows[oy[k] + u][ox[k] + r] = c
    return ModuleMap(X, Y, F)


# ---------------------------------------------------------------------------
# cross-checks

@dataclass
class CrossCheck:
    name: str
    direct: DimensionValue
    formula: DimensionValue
    detail: str = ""

    @property
    def agree(self):
        return self.direct.same_value(self.formula)

    def __bool__(self):
        return self.agree

    def to_json(self):
        return {"check": self.name, "direct": self.direct.to_json(),
                "formula": self.formula.to_json(), "agree": self.agree,
                "detail": self.detail}


def _sum_ext_dims(parts, x, top):
    tot = [0] * (top + 1)
    for p in parts:
        for i, d in enumerate(ext_dims(p, x, top)):
            tot[i] += d
    return tot


def mueller_crosscheck(ctx: EndoContext, x: Module, bound=DEFAULT_BOUND) -> CrossCheck:
    """``domdim Hom(N, x)`` directly over ``B`` and as ``inf{i >= 1 : Ext^i(N,x) != 0} + 1``."""
    y = hom_functor_module(ctx, x)
    direct = dominant_dimension(y, bound)
    dims = _sum_ext_dims(ctx.summands, x, bound - 1)
    first = next((i for i in range(1, bound) if dims[i]), None)
    if first is None:
        formula = DimensionValue.at_least(bound + 1, bound, f"Ext^i(N,x) = 0 for 1 <= i <= {bound - 1}")
    else:
        formula = DimensionValue.exact(first + 1, bound, f"first nonzero Ext^{first}(N,x)")
    return CrossCheck("mueller", direct, formula, f"Ext dims {dims[1:]}")


def codomdim_crosscheck(ctx: EndoContext, x: Module, bound=DEFAULT_BOUND) -> CrossCheck:
    """``codomdim Hom(N, x)`` directly and as ``inf{i >= 1 : Ext^1(N, Omega^i x) != 0} - 1``."""
    if not ctx.base.__dict__.get("_selfinjective_checked"):
        from .algebra import is_selfinjective
        if not is_selfinjective(ctx.base):
            raise ValueError("the base algebra must be selfinjective")
        ctx.base.__dict__["_selfinjective_checked"] = True
    y = hom_functor_module(ctx, x)
    direct = codominant_dimension(y, bound)
    first = None
    cur = x
    seen = []
    for i in range(1, bound + 2):
        cur = syzygy(cur, 1)
        e = sum(ext_dims(p, cur, 1)[1] for p in ctx.summands) if cur.dim else 0
        seen.append(e)
        if e:
            first = i
            break
    if first is None:
        formula = DimensionValue.at_least(bound + 1, bound,
                                          f"Ext^1(N, Omega^i x) = 0 for 1 <= i <= {bound + 1}")
    else:
        formula = DimensionValue.exact(first - 1, bound, f"Ext^1(N, Omega^{first} x) != 0")
    return CrossCheck("codomdim", direct, formula, f"dim Ext^1(N, Omega^i x) = {seen}")


def hom_from_dual_module(b: Algebra) -> tuple:
    """``(D(B), left action matrices)``: ``D(B)`` as a right ``B``-module together
    with the commuting left ``B``-action ``(b . phi)(v) = phi(v b)``."""
    db = dual(regular_module(b.opposite()))
    f = b.field
    d = b.dim
    lam = []
    for i in range(d):
        rows = [[b.table[k][i][l] for l in range(d)] for k in range(d)]
        lam.append(Matrix(f, rows, d))
    return db, lam


def hom_db_module(y: Module) -> Module:
    """``Hom_B(D(B), y)`` as a right ``B``-module, ``(F . b) = F o lambda(b)``."""
    b = y.algebra
    db, lam = hom_from_dual_module(b)
    hs = hom_space(db, y)
    f = y.field
    acts = []
    for i in range(b.dim):
        m = Matrix.zeros(f, hs.dim, hs.dim)
        for r, F in enumerate(hs.basis):
            for u, c in enumerate(hs.coordinates(F @ lam[i])):
                if c:
                    m.rows[u][r] = c
        acts.append(m)
    return Module(b, hs.dim, acts, name=f"Hom(D(B),{y.name})" if y.name else None)


@dataclass
class GendoCheck:
    domdim: DimensionValue
    iso: object
    formula: DimensionValue | None
    consistent: bool

    def __bool__(self):
        return self.consistent

    def to_json(self):
        out = {"domdim": self.domdim.to_json(), "iso_verdict": self.iso.verdict,
               "iso_reason": self.iso.reason, "consistent": self.consistent}
        if self.formula is not None:
            out["formula"] = self.formula.to_json()
        return out


def gendo_domdim_crosscheck(ctx: EndoContext, y: Module, bound=DEFAULT_BOUND) -> GendoCheck:
    """``domdim y >= 2`` iff ``y = Hom_B(D(B), y)``; then also compare with
    ``inf{i >= 1 : Ext^i_B(D(B), y) != 0} + 1``."""
    if not ctx.gendo_symmetric:
        raise ValueError("the endomorphism algebra is not known to be gendo-symmetric")
    dd = dominant_dimension(y, bound)
    iso = isomorphism_test(hom_db_module(y), y)
    big = dd.value >= 2
    formula = None
    consistent = (iso.verdict == "iso") == big and iso.verdict != "unknown"
    if big:
        db, _ = hom_from_dual_module(ctx.algebra)
        first = first_nonzero_ext(db, y, 1, bound - 1)
        if first is None:
            formula = DimensionValue.at_least(bound + 1, bound)
        else:
            formula = DimensionValue.exact(first + 1, bound)
        consistent = consistent and formula.same_value(dd)
    return GendoCheck(dd, iso, formula, consistent)


# ---------------------------------------------------------------------------
# the nearly-Gorenstein refutation

def liu_schulz_domdim_criterion(a: Algebra, xs, m: Module, l: int):
    """Closed-form check that ``Hom(A + X, Omega^{-l} m)`` has infinite dominant
    dimension, for ``X`` a sum of ``M_{c_j}`` and ``m = M_c`` over a Liu-Schulz
    algebra: ``d = c / r^l`` must avoid ``r^k c_j`` for all ``k >= 0``.
    Returns a certificate string or None when it does not apply."""
    params = getattr(a, "params", None)
    if params is None or getattr(m, "parameter", None) is None:
        return None
    if any(getattr(x, "parameter", None) is None for x in xs):
        return None
    f = a.field
    r = params.r
    d = m.parameter
    for _ in range(l):
        d = d * f.inv(r) % f.p if f.p else d / r
    for x in xs:
        if not tail_vanishes(f, r, x.parameter, d, start=1):
            return None
    cs = ", ".join(f.format(x.parameter) for x in xs)
    return (f"criterion-certified: d = {f.format(d)} is not r^k c_j for any k >= 0 "
            f"(r = {f.format(r)}, c_j in {{{cs}}}), so Ext^i(N, M_d) = 0 for all i >= 1")


@dataclass
class Witness:
    base_algebra: str
    generator_summands: list
    l: int
    m_label: str
    R: Module
    certificates: dict
    ok: bool
    dual: dict | None = None

    def to_json(self, include_module=True):
        out = {
            "base_algebra": self.base_algebra,
            "generator_summands": self.generator_summands,
            "l": self.l,
            "m_label": self.m_label,
            "certificates": self.certificates,
            "ok": self.ok,
        }
        if include_module:
            out["R"] = self.R.to_json()
        if self.dual is not None:
            out["dual"] = self.dual
        return out


def _find_l(xs, m, bound):
    dims = _sum_ext_dims(xs, m, bound)
    nz = [i for i in range(1, bound + 1) if dims[i]]
    if not nz or nz[-1] == bound:
        return None, dims
    return nz[-1], dims


def refute_nearly_gorenstein(a: Algebra, xs, m: Module | None = None, l: int | None = None,
                             bound=DEFAULT_BOUND, depth=4, candidates=None,
                             with_dual=False) -> Witness:
    """Build ``B = End(A + X)`` and ``R = Hom(A + X, Omega^{-l} m)`` with all
    certificates showing R is costable, not Gorenstein injective, and that
    ``B`` has finitistic codominant dimension at least ``depth``.

    ``xs`` lists the summands of ``X``.  When ``m`` is None the modules in
    ``candidates`` (default ``xs``) are scanned for a valid ``(m, l)``.
    """
    form = symmetrizing_form(a)
    if not form:
        raise ValueError("the base algebra must be symmetric")
    xs = list(xs)
    for x in xs:
        _, removed = strip_projective_summands(x)
        if removed:
            raise ValueError(f"{x.name or 'summand'} has a projective summand")
        if not is_indecomposable(x):
            raise ValueError(f"{x.name or 'summand'} is not indecomposable")
    ext_profile = None
    if m is None:
        pool = list(candidates if candidates is not None else xs)
        for cand in pool:
            lc, dims = _find_l(xs, cand, bound)
            if lc is not None and (l is None or lc == l):
                m, l, ext_profile = cand, lc, dims
                break
        if m is None:
            raise ValueError("no candidate m with a vanishing Ext tail within the bound")
    else:
        lc, ext_profile = _find_l(xs, m, bound)
        if l is None:
            l = lc
        if l is None or lc != l:
            raise ValueError(f"hypothesis fails: Ext^i(X, m) profile {ext_profile[1:]}")
    if not is_indecomposable(m):
        raise ValueError("m must be indecomposable")
    reg = regular_module(a)
    n = direct_sum([reg] + xs, name="N")
    ctx = end_algebra(n)
    b = ctx.algebra
    target = cosyzygy(m, l)
    target.name = f"Omega^-{l}({m.name})" if m.name else None
    r = hom_functor_module(ctx, target, name="R")
    certs = {}
    dd = dominant_dimension(r, bound)
    crit = liu_schulz_domdim_criterion(a, xs, m, l)
    if crit:
        dd = dd.with_certificate(crit)
    certs["domdim"] = dd.to_json()
    if crit:
        certs["criterion"] = crit
    cd = codominant_dimension(r, bound)
    certs["codomdim"] = cd.to_json()
    cs = is_costable(r, bound)
    certs["costable_up_to"] = cs.to_json()
    bdd = dominant_dimension(regular_module(b), bound)
    certs["domdim_B"] = bdd.to_json()
    gi = is_gorenstein_injective(r, bound, algebra_domdim=bdd)
    certs["not_GI_reason"] = gi.certificate if not gi.holds else None
    chain = finitistic_codominant_witness(r, depth, bound) if depth else []
    certs["cosyzygy_codomdims"] = [c.to_json() for _, c in chain]
    certs["ext_profile_X_m"] = ext_profile[1:] if ext_profile else None
    certs["simple_count_B"] = len(b.class_representatives)
    ok = (dd.kind == "at_least" and dd.value == bound + 1
          and cd.is_exact and cd.value == 0 and cs.holds and not gi.holds
          and all(c.is_exact and c.value == i + 1 for i, (_, c) in enumerate(chain)))
    dual_part = None
    if with_dual:
        dr = dual(r)
        st = is_stable(dr, bound)
        dual_part = {
            "module": "D(R) over the opposite algebra",
            "stable_up_to": st.to_json(),
            "dominant_dimension": dominant_dimension(dr, bound).to_json(),
            "not_GP_reason": (f"D(D(R)) = R is not Gorenstein injective; equivalently "
                              f"domdim D(R) = {cd.value} < {bdd.value} = domdim(B^op)"),
        }
        ok = ok and st.holds
    return Witness(a.name, [p.name for p in ctx.summands], l, m.name or "m", r, certs, ok, dual_part)
