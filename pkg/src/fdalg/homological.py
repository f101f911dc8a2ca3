"""Resolutions, Ext, dominant dimensions and Gorenstein-type tests.

Every unbounded statement is checked up to a bound ``H`` and reported with it.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .linalg import Echelon, Matrix, rank
from .module import (
    Module, ModuleMap, ProjectiveModule, cosyzygy, dual, hom_space, is_projective,
    projective_cover, projective_indecomposable, projective_sum, quotient,
    regular_module, strip_projective_summands,
)

__all__ = [
    "DEFAULT_BOUND", "DimensionValue", "Resolution", "BoundedVerdict",
    "GorensteinVerdict", "LSpecial", "projective_resolution",
    "injective_coresolution", "ext_dim", "ext_dims", "ext_dim_via_syzygy", "iter_ext_dims", "first_nonzero_ext",
    "ext_vanishing_from", "is_stable", "is_costable", "projective_dimension",
    "injective_dimension", "dominant_dimension", "codominant_dimension",
    "transpose", "ar_translate", "is_gorenstein_projective",
    "is_gorenstein_injective", "l_special_scan", "finitistic_codominant_witness",
    "gorenstein_dimensions",
]

DEFAULT_BOUND = 12


@dataclass(frozen=True)
class DimensionValue:
    """``exact`` n, or ``at_least`` n when the computation was truncated."""
    kind: str
    value: int
    bound: int | None = None
    certificate: str | None = None

    @classmethod
    def exact(cls, n, bound=None, certificate=None):
        return cls("exact", n, bound, certificate)

    @classmethod
    def at_least(cls, n, bound=None, certificate=None):
        return cls("at_least", n, bound, certificate)

    @property
    def is_exact(self):
        return self.kind == "exact"

    def with_certificate(self, text):
        return DimensionValue(self.kind, self.value, self.bound, text)

    def same_value(self, other):
        return self.kind == other.kind and self.value == other.value

    def __str__(self):
        s = str(self.value) if self.is_exact else f">= {self.value}"
        if self.certificate:
            s += f" [{self.certificate}]"
        return s

    def to_json(self):
        out = {"kind": self.kind, "value": self.value, "bound": self.bound}
        if self.certificate:
            out["certificate"] = self.certificate
        return out


# ---------------------------------------------------------------------------
# resolutions

@dataclass
class Resolution:
    """Minimal projective resolution ``... -> P_1 -> P_0 -> m`` (or the dual
    injective coresolution).  ``syzygies[i]`` is the image in ``P_{i-1}``,
    with ``syzygies[0] = m``; ``differentials[i]`` is ``P_i -> P_{i-1}``
    (``differentials[0]`` is the augmentation ``P_0 -> m``)."""
    direction: str
    module: Module
    terms: list = dc_field(default_factory=list)
    differentials: list = dc_field(default_factory=list)
    syzygies: list = dc_field(default_factory=list)
    minimal: bool = True

    @property
    def length(self):
        return len(self.terms)

    @property
    def terminated(self):
        """True when a zero syzygy was reached (finite resolution)."""
        return bool(self.syzygies) and self.syzygies[-1].dim == 0

    def is_exact(self) -> bool:
        """Rank checks: ``d_i d_{i+1} = 0`` and ``rank d_i + rank d_{i+1} = dim P_i``."""
        ds = self.differentials
        if ds and ds[0].rank() != self.module.dim:
            return False
        for i in range(len(ds) - 1):
            a, b = ds[i].matrix, ds[i + 1].matrix
            if not (a @ b).is_zero():
                return False
            if rank(a) + rank(b) != self.terms[i].dim:
                if i + 1 == len(ds) - 1 and not self.terminated:
                    continue
                return False
        return True


def _extend(res: Resolution, length: int):
    while len(res.terms) < length and not res.terminated:
        cur = res.syzygies[-1]
        cov = projective_cover(cur)
        if res.terms:
            # compose with the inclusion of cur into the previous term
            inc = cur._cache["resolution_inclusion"]
            d = ModuleMap(cov.projective, res.terms[-1], inc.matrix @ cov.map.matrix)
        else:
            d = cov.map
        res.terms.append(cov.projective)
        res.differentials.append(d)
        syz = cov.syzygy
        syz._cache["resolution_inclusion"] = cov.inclusion
        res.syzygies.append(syz)
    return res


def projective_resolution(m: Module, length: int) -> Resolution:
    """Minimal projective resolution with ``length`` terms ``P_0..P_{length-1}``
    (fewer if it terminates).  Cached and extended on demand."""
    res = m._cache.get("resolution")
    if res is None:
        res = Resolution("projective", m, syzygies=[m])
        m._cache["resolution"] = res
    return _extend(res, length)


def injective_coresolution(m: Module, length: int) -> Resolution:
    """Minimal injective coresolution ``m -> I_0 -> I_1 -> ...``, as the dual of
    the projective resolution of ``D(m)``.  Differentials point forward."""
    pr = projective_resolution(dual(m), length)
    res = Resolution("injective", m)
    res.terms = [dual(p) for p in pr.terms]
    res.differentials = [d.dual() for d in pr.differentials]
    res.syzygies = [dual(s) for s in pr.syzygies]
    return res


# ---------------------------------------------------------------------------
# Ext

def _hom_from_projective_dim(P: ProjectiveModule, n: Module):
    a = n.algebra
    return sum(rank(n.act(a.idempotents[j])) for j in P.tops)


def _coboundary_rank(P: ProjectiveModule, d: ModuleMap, n: Module):
    """Rank of ``Hom(P, n) -> Hom(Q, n)``, ``phi -> phi o d`` for ``d: Q -> P``."""
    a = n.algebra
    f = n.field
    Q = d.source
    if P.dim == 0 or Q.dim == 0 or n.dim == 0:
        return 0
    # images of the generators of Q inside P, split into block elements of A
    imgs = []
    for s in range(len(Q.tops)):
        w = d.matrix.apply(Q.generator(s))
        imgs.append([P.block_element(w, t) for t in range(len(P.tops))])
    cols = []
    for t, j in enumerate(P.tops):
        for u in Echelon(f, n.dim, n.act(a.idempotents[j]).columns()).rows:
            col = []
            for s in range(len(Q.tops)):
                col.extend(n.act(imgs[s][t]).apply(u))
            cols.append(col)
    if not cols:
        return 0
    return rank(Matrix.from_columns(f, cols, len(cols[0])))


def _ext_at(m: Module, n: Module, i: int) -> int:
    """``dim Ext^i(m, n)`` on the cached minimal resolution, extended as needed."""
    res = projective_resolution(m, i + 2)
    if i >= res.length:
        return 0
    cache = m._cache.setdefault("coboundary_ranks", {})

    def coboundary(k):
        # rank of Hom(P_k, n) -> Hom(P_{k+1}, n)
        if k < 0 or k + 1 >= res.length:
            return 0
        key = (id(n), k)
        hit = cache.get(key)
        if hit is None or hit[0] is not n:
            hit = (n, _coboundary_rank(res.terms[k], res.differentials[k + 1], n))
            cache[key] = hit
        return hit[1]

    h = _hom_from_projective_dim(res.terms[i], n)
    return h - coboundary(i) - coboundary(i - 1)


def iter_ext_dims(m: Module, n: Module, start=0):
    """Yields ``(i, dim Ext^i(m, n))`` for ``i = start, start+1, ...``, extending
    the resolution lazily; callers decide when to stop."""
    if not m.algebra.same_as(n.algebra):
        from .module import AlgebraMismatch
        raise AlgebraMismatch("Ext between modules over different algebras")
    i = start
    while True:
        yield i, _ext_at(m, n, i)
        i += 1


def ext_dims(m: Module, n: Module, top: int):
    """``[dim Ext^0(m,n), ..., dim Ext^top(m,n)]`` from one minimal resolution."""
    out = []
    for i, d in iter_ext_dims(m, n):
        if i > top:
            break
        out.append(d)
    return out


def first_nonzero_ext(m: Module, n: Module, start: int, stop: int):
    """Least ``i`` in ``[start, stop]`` with ``Ext^i(m, n) != 0``, or None."""
    for i, d in iter_ext_dims(m, n, start):
        if i > stop:
            return None
        if d:
            return i


def ext_dim(m: Module, n: Module, i: int) -> int:
    if i < 0:
        raise ValueError("i must be nonnegative")
    if i == 0:
        return hom_space(m, n).dim
    return ext_dims(m, n, i)[i]


def ext_dim_via_syzygy(m: Module, n: Module, i: int) -> int:
    """Independent route: ``Ext^i(m,n) = Ext^1(Omega^{i-1} m, n)`` and the
    four-term sequence ``0 -> Hom(X,n) -> Hom(P,n) -> Hom(Omega X,n) -> Ext^1(X,n) -> 0``."""
    if i < 1:
        raise ValueError("i must be at least 1")
    x = m
    for _ in range(i - 1):
        x = projective_cover(x).syzygy
    if x.dim == 0:
        return 0
    cov = projective_cover(x)
    hp = _hom_from_projective_dim(cov.projective, n)
    return hom_space(cov.syzygy, n).dim - hp + hom_space(x, n).dim


@dataclass
class BoundedVerdict:
    """``holds`` up to ``bound``; otherwise ``first_failure`` is the offending index."""
    holds: bool
    bound: int
    first_failure: int | None = None
    detail: str = ""

    def __bool__(self):
        return self.holds

    def to_json(self):
        out = {"holds": self.holds, "bound": self.bound, "grade": f"bounded (H={self.bound})"}
        if self.first_failure is not None:
            out["first_failure"] = self.first_failure
        if self.detail:
            out["detail"] = self.detail
        return out


def ext_vanishing_from(m, n, start=1, bound=DEFAULT_BOUND) -> BoundedVerdict:
    """Check ``Ext^i(m,n) = 0`` for ``start <= i <= bound``."""
    if start < 1:
        raise ValueError("start must be at least 1")
    i = first_nonzero_ext(m, n, start, bound)
    if i is not None:
        return BoundedVerdict(False, bound, i, f"dim Ext^{i} = {_ext_at(m, n, i)}")
    return BoundedVerdict(True, bound, None, f"Ext^i vanishes for {start} <= i <= {bound}")


def is_stable(m: Module, bound=DEFAULT_BOUND) -> BoundedVerdict:
    """``Ext^i(m, A) = 0`` for ``1 <= i <= bound``."""
    return ext_vanishing_from(m, regular_module(m.algebra), 1, bound)


def is_costable(m: Module, bound=DEFAULT_BOUND) -> BoundedVerdict:
    """``Ext^i(D(A), m) = 0``, computed as stability of ``D(m)`` over the opposite algebra."""
    return is_stable(dual(m), bound)


def projective_dimension(m: Module, bound=DEFAULT_BOUND) -> DimensionValue:
    res = projective_resolution(m, bound + 2)
    if m.dim == 0:
        return DimensionValue.exact(0, bound)
    if res.terminated:
        return DimensionValue.exact(res.length - 1, bound)
    return DimensionValue.at_least(bound + 1, bound)


def injective_dimension(m: Module, bound=DEFAULT_BOUND) -> DimensionValue:
    return projective_dimension(dual(m), bound)


def gorenstein_dimensions(a, bound=DEFAULT_BOUND):
    """Injective dimensions of ``A`` as a right and as a left module."""
    right = injective_dimension(regular_module(a), bound)
    left = injective_dimension(regular_module(a.opposite()), bound)
    return right, left


# ---------------------------------------------------------------------------
# dominant dimension

def _injective_hull_is_projective(a, j):
    """Is ``D(e_j A^op)``, the injective hull of the j-th simple A-module, projective?"""
    cache = a.__dict__.setdefault("_inj_proj", {})
    if j not in cache:
        op = a.opposite()
        cache[j] = is_projective(dual(projective_indecomposable(op, j)))
    return cache[j]


def dominant_dimension(m: Module, bound=DEFAULT_BOUND) -> DimensionValue:
    """Number of leading projective terms of the minimal injective coresolution.

    Checks ``I_0 .. I_bound``; returns ``at_least(bound + 1)`` if all are
    projective or the coresolution stops with projective terms only.
    """
    a = m.algebra
    if m.dim == 0:
        return DimensionValue.at_least(bound + 1, bound, "zero module")
    dm = dual(m)
    for i in range(bound + 1):
        res = projective_resolution(dm, i + 1)
        if i >= res.length:
            return DimensionValue.at_least(bound + 1, bound, f"coresolution stops after I_{i - 1}")
        if not all(_injective_hull_is_projective(a, j) for j in res.terms[i].tops):
            return DimensionValue.exact(i, bound)
    return DimensionValue.at_least(bound + 1, bound)


def codominant_dimension(m: Module, bound=DEFAULT_BOUND) -> DimensionValue:
    return dominant_dimension(dual(m), bound)


# ---------------------------------------------------------------------------
# transpose and AR translate

def transpose(m: Module) -> Module:
    """``Tr m``: cokernel of ``Hom(P_0, A) -> Hom(P_1, A)``, a right module over
    the opposite algebra, for the minimal presentation ``P_1 -> P_0 -> m``."""
    a = m.algebra
    op = a.opposite()
    f = m.field
    res = projective_resolution(m, 2)
    P0 = res.terms[0]
    P1 = res.terms[1] if res.length > 1 else projective_sum(a, [])
    S0 = projective_sum(op, P0.tops)
    S1 = projective_sum(op, P1.tops)
    if S1.dim == 0:
        return quotient(S1, [])[0]
    d1 = res.differentials[1].matrix if res.length > 1 else None
    # w[s][t]: block t of d1(g_s), an element of e_{j_t} A
    w = []
    for s in range(len(P1.tops)):
        img = d1.apply(P1.generator(s))
        w.append([P0.block_element(img, t) for t in range(len(P0.tops))])
    cols = []
    for t in range(len(P0.tops)):
        for arow in S0.blocks[t].rows:          # arow in A e_{j_t}, A-coordinates
            col = []
            for s in range(len(P1.tops)):
                val = a.mult(arow, w[s][t])
                col.extend(S1.blocks[s].coordinates(val))
            cols.append(col)
    dstar = Matrix.from_columns(f, cols, S1.dim) if cols else Matrix.zeros(f, S1.dim, 0)
    tr, _ = quotient(S1, dstar.columns(), name=f"Tr({m.name})" if m.name else None)
    tr._cache["transpose_map"] = ModuleMap(S0, S1, dstar)
    return tr


def ar_translate(m: Module) -> Module:
    """``tau(m) = D(Tr m)``; ``m`` must have no projective summands."""
    rest, removed = strip_projective_summands(m)
    if removed:
        raise ValueError("module has a projective summand")
    t = dual(transpose(m))
    if m.name:
        t.name = f"tau({m.name})"
    return t


# ---------------------------------------------------------------------------
# Gorenstein projective / injective

@dataclass
class GorensteinVerdict:
    kind: str                 # "GP" or "GI"
    holds: bool
    bound: int
    failing: str | None = None
    certificate: str | None = None

    def __bool__(self):
        return self.holds

    def to_json(self):
        out = {"kind": self.kind, "holds": self.holds, "bound": self.bound,
               "grade": f"bounded (H={self.bound})"}
        if self.failing:
            out["failing"] = self.failing
        if self.certificate:
            out["certificate"] = self.certificate
            out["grade"] = "exact"
        return out


def is_gorenstein_projective(m: Module, bound=DEFAULT_BOUND) -> GorensteinVerdict:
    """Bounded check of ``Ext^i(m, A) = 0`` and ``Ext^i(D(A), tau m) = 0``."""
    st = is_stable(m, bound)
    if not st:
        return GorensteinVerdict("GP", False, bound, f"Ext^{st.first_failure}(m, A) != 0")
    rest, _ = strip_projective_summands(m)
    if rest.dim == 0:
        return GorensteinVerdict("GP", True, bound, certificate="projective")
    tau = ar_translate(rest)
    ct = is_costable(tau, bound)
    if not ct:
        return GorensteinVerdict("GP", False, bound, f"Ext^{ct.first_failure}(D(A), tau m) != 0")
    return GorensteinVerdict("GP", True, bound)


def is_gorenstein_injective(m: Module, bound=DEFAULT_BOUND, algebra_domdim=None) -> GorensteinVerdict:
    """Gorenstein injectivity via the dual; a codominant dimension below the
    dominant dimension of the algebra refutes it outright."""
    a = m.algebra
    if algebra_domdim is None:
        algebra_domdim = dominant_dimension(regular_module(a), bound)
    if algebra_domdim.value >= 1:
        cd = codominant_dimension(m, bound)
        if cd.is_exact and cd.value < algebra_domdim.value:
            return GorensteinVerdict(
                "GI", False, bound, "codominant dimension too small",
                f"codomdim = {cd.value} < {algebra_domdim.value} = domdim(algebra); "
                "Gorenstein injective modules have codominant dimension at least domdim(algebra)")
    v = is_gorenstein_projective(dual(m), bound)
    return GorensteinVerdict("GI", v.holds, bound, v.failing, v.certificate)


# ---------------------------------------------------------------------------
# l-special modules and finitistic codominant witnesses

@dataclass
class LSpecial:
    l: int | None
    bound: int
    ext_dims: list

    def __bool__(self):
        return self.l is not None

    def to_json(self):
        return {"l": self.l, "bound": self.bound, "ext_dims": self.ext_dims,
                "grade": f"bounded (H={self.bound})"}


def l_special_scan(m: Module, bound=DEFAULT_BOUND) -> LSpecial:
    """Largest ``l < bound`` with ``Ext^l(m,m) != 0`` and ``Ext^i(m,m) = 0`` for
    ``l < i <= bound``; ``l`` is None if all vanish or the last one is nonzero."""
    dims = ext_dims(m, m, bound)[1:]
    nz = [i + 1 for i, d in enumerate(dims) if d]
    if not nz or nz[-1] == bound:
        return LSpecial(None, bound, dims)
    return LSpecial(nz[-1], bound, dims)


def finitistic_codominant_witness(r: Module, depth: int, bound=DEFAULT_BOUND):
    """``[(Omega^{-i} r, codomdim)]`` for ``i = 1..depth``; needs codomdim(r) = 0."""
    cd = codominant_dimension(r, bound)
    if not (cd.is_exact and cd.value == 0):
        raise ValueError(f"the seed module must have codominant dimension 0, got {cd}")
    out = []
    cur = r
    for i in range(1, depth + 1):
        cur = cosyzygy(cur, 1)
        if cur.name is None and r.name:
            cur.name = f"Omega^-{i}({r.name})"
        out.append((cur, codominant_dimension(cur, bound)))
    return out
