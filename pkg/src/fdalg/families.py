"""Constructors for the algebra families studied here.

The Liu-Schulz algebra is built by rewriting words in ``x, y, z`` into the
normal order ``x < y < z``.  Quantum complete intersections are built from the
closed-form commutation factor instead, so the two routes check each other.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .algebra import Algebra, tensor_product
from .linalg import QQ, Field
from .homological import ext_dims
from .module import Module, hom_space, quotient, regular_module, submodule_generated

__all__ = [
    "LiuSchulzParams", "QCIParams", "liu_schulz", "module_Mc",
    "quantum_exterior_2", "quantum_complete_intersection", "truncated_polynomial",
    "upper_triangular_matrices", "gorenstein_example", "power_index",
    "tail_vanishes", "tail_vanishes_bounded", "multiplicative_order",
    "GridTable", "hom_ext_grid",
]


@dataclass
class LiuSchulzParams:
    field: Field = QQ
    r: object = 2
    order_bound: int = 14

    def __post_init__(self):
        self.r = self.field(self.r)
        if not self.r:
            raise ValueError("r must be nonzero")

    @property
    def r_squared_is_one(self):
        return self.r * self.r % self.field.p == 1 if self.field.p else self.r ** 2 == 1

    @property
    def r_cubed_is_one(self):
        f = self.field
        return pow(self.r, 3, f.p) == 1 if f.p else self.r ** 3 == 1

    @property
    def root_of_unity_order(self):
        """Multiplicative order of r if it is at most ``order_bound``, else None."""
        k = multiplicative_order(self.field, self.r, self.order_bound)
        return k

    def warnings(self):
        out = []
        if self.r_squared_is_one:
            out.append("r^2 = 1 violates the simplicity assumption")
        if self.r_cubed_is_one:
            out.append("r^3 = 1 violates the simplicity assumption")
        k = self.root_of_unity_order
        if k is not None and not (self.r_squared_is_one or self.r_cubed_is_one):
            out.append(f"r is a root of unity of order {k}")
        return out


@dataclass
class QCIParams:
    """``K<x_1..x_n>/(x_i^{a_i}, x_i x_j + q[(i,j)] x_j x_i)`` for ``i > j`` (0-based)."""
    field: Field = QQ
    exponents: list = dc_field(default_factory=lambda: [2, 2])
    q: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        n = len(self.exponents)
        if n < 1:
            raise ValueError("need at least one generator")
        if any(a < 2 for a in self.exponents):
            raise ValueError("all exponents must be at least 2")
        q = {}
        for i in range(n):
            for j in range(i):
                v = self.field(self.q.get((i, j), 1))
                if not v:
                    raise ValueError(f"q[{i},{j}] must be nonzero")
                q[(i, j)] = v
        self.q = q


def multiplicative_order(f: Field, r, bound):
    x = r
    for k in range(1, bound + 1):
        if x == f.one:
            return k
        x = x * r % f.p if f.p else x * r
    return None


# ---------------------------------------------------------------------------
# Liu-Schulz by word rewriting

_LS_WORDS = ["", "x", "y", "z", "xy", "xz", "yz", "xyz"]


def _normal_form(word, swaps, f):
    """Rewrite ``word`` into sorted order; returns (coefficient, word) or None if zero."""
    coeff = f.one
    w = list(word)
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            a, b = w[i], w[i + 1]
            if a == b:
                return None
            if a > b:
                coeff = coeff * swaps[(a, b)]
                if f.p:
                    coeff %= f.p
                w[i], w[i + 1] = b, a
                changed = True
    return coeff, "".join(w)


def liu_schulz(params: LiuSchulzParams | None = None, r=None) -> Algebra:
    """``K<x,y,z>/(x^2, y^2, z^2, yx + r xy, xz + r zx, zy + r yz)``."""
    if params is None:
        params = LiuSchulzParams(r=2 if r is None else r)
    f, r = params.field, params.r
    rinv = f.inv(r)
    swaps = {("y", "x"): f.neg(r), ("z", "y"): f.neg(r), ("z", "x"): f.neg(rinv)}
    idx = {w: i for i, w in enumerate(_LS_WORDS)}
    d = len(_LS_WORDS)
    table = [[[f.zero] * d for _ in range(d)] for _ in range(d)]
    for i, u in enumerate(_LS_WORDS):
        for j, v in enumerate(_LS_WORDS):
            nf = _normal_form(u + v, swaps, f)
            if nf is not None:
                table[i][j][idx[nf[1]]] = nf[0]
    unit = [f.one] + [f.zero] * (d - 1)
    labels = ["1"] + _LS_WORDS[1:]
    a = Algebra(f, table, unit, labels, f"A_{f.format(r)}")
    a._known_idempotents = [unit]
    a._local_radical = [a.basis_vector(i) for i in range(1, d)]
    a.params = params
    return a


def module_Mc(a: Algebra, c) -> Module:
    """``M_c = A / (x + c y) A``."""
    f = a.field
    c = f(c)
    if not c:
        raise ValueError("c must be nonzero")
    v = a.add(a.basis_vector(a.labels.index("x")), a.scale(c, a.basis_vector(a.labels.index("y"))))
    reg = regular_module(a)
    _, inc = submodule_generated(reg, [v])
    m, _ = quotient(reg, inc.matrix.columns(), name=f"M_{f.format(c)}")
    m.parameter = c
    return m


# ---------------------------------------------------------------------------
# quantum complete intersections from the closed-form commutation factor

def quantum_complete_intersection(params: QCIParams, labels=None) -> Algebra:
    """PBW basis ``x_1^{e_1} ... x_n^{e_n}`` with ``e_i < a_i``.

    Moving ``x_i^{f_i}`` left past ``x_j^{e_j}`` (``j > i``) costs
    ``(-q[j,i])^{e_j f_i}``.
    """
    f = params.field
    exps = params.exponents
    n = len(exps)
    monos = list(itertools.product(*[range(a) for a in exps]))
    idx = {m: k for k, m in enumerate(monos)}
    d = len(monos)
    negq = {k: f.neg(v) for k, v in params.q.items()}
    table = [[[f.zero] * d for _ in range(d)] for _ in range(d)]
    for s, e in enumerate(monos):
        for t, g in enumerate(monos):
            tot = tuple(x + y for x, y in zip(e, g))
            if any(x >= a for x, a in zip(tot, exps)):
                continue
            c = f.one
            for j in range(n):
                for i in range(j):
                    k = e[j] * g[i]
                    if k:
                        c = c * (pow(negq[(j, i)], k, f.p) if f.p else negq[(j, i)] ** k)
                        if f.p:
                            c %= f.p
            table[s][t][idx[tot]] = c
    names = labels or ([chr(ord("x") + i) for i in range(n)] if n <= 3 else [f"x{i + 1}" for i in range(n)])
    lab = []
    for m in monos:
        parts = []
        for nm, k in zip(names, m):
            if k == 1:
                parts.append(nm)
            elif k > 1:
                parts.append(f"{nm}^{k}")
        lab.append("".join(parts) or "1")
    unit = [f.one] + [f.zero] * (d - 1)
    a = Algebra(f, table, unit, lab, "QCI")
    a._known_idempotents = [unit]
    a._local_radical = [a.basis_vector(i) for i in range(1, d)]
    return a


def quantum_exterior_2(field: Field = QQ, a=2) -> Algebra:
    """``K<x,y>/(x^2, y^2, xy + a yx)``."""
    a = field(a)
    if not a:
        raise ValueError("a must be nonzero")
    # relation x_2 x_1 + q x_1 x_2 with x_1 = x, x_2 = y reads yx + q xy
    alg = quantum_complete_intersection(QCIParams(field, [2, 2], {(1, 0): field.inv(a)}))
    alg.name = f"Lambda_{field.format(a)}"
    return alg


def truncated_polynomial(field: Field = QQ, n=2) -> Algebra:
    """``K[x]/(x^n)``."""
    alg = quantum_complete_intersection(QCIParams(field, [n]))
    alg.name = f"K[x]/(x^{n})"
    return alg


def upper_triangular_matrices(field: Field = QQ, n=2) -> Algebra:
    """Upper triangular ``n x n`` matrices with basis ``E_ij``, ``i <= j``."""
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    idx = {p: k for k, p in enumerate(pairs)}
    d = len(pairs)
    table = [[[field.zero] * d for _ in range(d)] for _ in range(d)]
    for s, (i, j) in enumerate(pairs):
        for t, (k, l) in enumerate(pairs):
            if j == k:
                table[s][t][idx[(i, l)]] = field.one
    unit = [field.one if i == j else field.zero for (i, j) in pairs]
    a = Algebra(field, table, unit, [f"E{i + 1}{j + 1}" for i, j in pairs], f"T_{n}(K)")
    a._known_idempotents = [[field.one if p == (i, i) else field.zero for p in pairs] for i in range(n)]
    return a


def gorenstein_example(field: Field = QQ) -> Algebra:
    """``K[x]/(x^2)`` tensored with upper triangular 2x2 matrices.

    Gorenstein of dimension one and not selfinjective.
    """
    a = tensor_product(truncated_polynomial(field, 2), upper_triangular_matrices(field, 2))
    d = a.dim
    # idempotents 1 (x) E11 and 1 (x) E22
    ut = 3
    es = []
    for k in (0, 2):
        v = [field.zero] * d
        v[0 * ut + k] = field.one
        es.append(v)
    a._known_idempotents = es
    a.name = "T_2(K[x]/(x^2))"
    return a


# ---------------------------------------------------------------------------
# the closed-form Ext-tail criterion

def power_index(f: Field, r, t, max_l=None):
    """Least ``l >= 0`` with ``r^l == t``, or None; exact over Q and F_p."""
    r, t = f(r), f(t)
    if not t:
        return None
    if f.p:
        x = f.one
        for l in range(f.p):
            if x == t:
                return l
            x = x * r % f.p
            if max_l is not None and l >= max_l:
                return None
        return None
    if r in (1, -1):
        for l in (0, 1):
            if r ** l == t:
                return l
        return None

    def height(q):
        return max(abs(q.numerator), abs(q.denominator))

    x = f.one
    l = 0
    while height(x) <= height(t):
        if x == t:
            return l
        if max_l is not None and l >= max_l:
            return None
        x = x * r
        l += 1
    return None


def tail_vanishes(f: Field, r, c, d, start=1):
    """Does ``Ext^i(M_c, M_d)`` vanish for every ``i >= start``?

    ``Ext^i(M_c, M_d) = Ext^1(M_{r^{i-1} c}, M_d)``, and ``Ext^1(M_c, M_d) != 0``
    iff ``d`` is ``c r^k`` with ``0 <= k <= 3``; so the tail from ``start``
    vanishes iff ``d / c`` is not ``r^l`` for any ``l >= start - 1``.
    """
    ratio = f(d) * f.inv(f(c))
    if f.p:
        ratio %= f.p
        # r^l for l >= start-1 runs through the whole cyclic orbit
        return power_index(f, r, ratio) is None
    l = power_index(f, r, ratio)
    if l is None:
        return True
    if f(r) in (1, -1):
        # periodic powers reach every member of the orbit arbitrarily late
        return False
    return l < start - 1


def tail_vanishes_bounded(f: Field, r, c, d, start, bound):
    """Prediction for ``Ext^i(M_c, M_d) = 0`` for ``start <= i <= bound``."""
    r, c, d = f(r), f(c), f(d)
    x = c
    for _ in range(start - 1):
        x = x * r % f.p if f.p else x * r
    for i in range(start, bound + 1):
        # Ext^i(M_c, M_d) = Ext^1(M_x, M_d) with x = r^{i-1} c
        y = x
        for _ in range(4):
            if y == d:
                return False
            y = y * r % f.p if f.p else y * r
        x = x * r % f.p if f.p else x * r
    return True


# ---------------------------------------------------------------------------
# the Hom / Ext grid over M_c with closed-form predictions


@dataclass
class GridTable:
    field: Field
    r: object
    cs: list
    bound: int
    hom: list = dc_field(default_factory=list)
    ext1: list = dc_field(default_factory=list)
    tail: list = dc_field(default_factory=list)

    @property
    def all_agree(self):
        return all(cell["agree"] for part in (self.hom, self.ext1, self.tail) for cell in part)

    def disagreements(self):
        return [(name, cell) for name, part in (("hom", self.hom), ("ext1", self.ext1), ("tail", self.tail))
                for cell in part if not cell["agree"]]

    def to_json(self):
        f = self.field
        return {"field": f.spec, "r": f.format(self.r), "cs": [f.format(c) for c in self.cs],
                "bound": self.bound, "hom": self.hom, "ext1": self.ext1, "tail": self.tail,
                "all_agree": self.all_agree}

    def to_text(self):
        f = self.field
        labels = [f.format(c) for c in self.cs]
        w = max(6, max(len(x) for x in labels) + 2)
        out = [f"r = {f.format(self.r)} over {f.spec}, H = {self.bound}"]
        for title, part, key in (("dim Hom(M_c, M_e)", self.hom, "dim"),
                                 ("dim Ext^1(M_c, M_d)", self.ext1, "dim"),
                                 ("Ext^i(M_c, M_d) = 0 for 1 <= i <= H", self.tail, "vanishes_up_to_H")):
            out.append("")
            out.append(title + "  (rows c, columns second argument; * marks disagreement)")
            out.append("".ljust(w) + "".join(x.rjust(w) for x in labels))
            k = 0
            for lab in labels:
                row = lab.ljust(w)
                for _ in labels:
                    cell = part[k]
                    v = cell[key]
                    v = ("yes" if v else "no") if isinstance(v, bool) else str(v)
                    row += (v + ("" if cell["agree"] else "*")).rjust(w)
                    k += 1
                out.append(row)
        out.append("")
        out.append("all cells agree with the closed forms" if self.all_agree
                   else f"{len(self.disagreements())} cells disagree")
        return "\n".join(out)


def _times_power(f, c, r, k):
    x = f(c)
    for _ in range(k):
        x = x * r % f.p if f.p else x * r
    return x


def hom_ext_grid(r, cs, max_ext=12, field: Field = QQ) -> GridTable:
    """Hom dims, Ext^1 dims and Ext-tail verdicts on the ``M_c`` grid.

    Predictions: ``dim Hom(M_c, M_e) = 2 + [c = e] + [c r^2 = e]``;
    ``dim Ext^1(M_c, M_d) = [c = d] + [cr = d] + [cr^2 = d] + [cr^3 = d]``;
    the tail ``Ext^i, i >= 1`` vanishes up to ``max_ext`` as predicted by
    :func:`tail_vanishes_bounded`.  Cells where the unbounded criterion also
    says "vanishes for all i" are graded criterion-certified.
    """
    f = field
    r = f(r)
    cs = [f(c) for c in cs]
    if not r or any(not c for c in cs):
        raise ValueError("r and every c must be nonzero")
    if len(set(cs)) != len(cs):
        raise ValueError("the c values must be distinct")
    a = liu_schulz(LiuSchulzParams(f, r))
    mods = {c: module_Mc(a, c) for c in cs}
    t = GridTable(f, r, cs, max_ext)
    for c in cs:
        orbit = [_times_power(f, c, r, k) for k in range(4)]
        for d in cs:
            pair = {"c": f.format(c), "d": f.format(d)}
            h = hom_space(mods[c], mods[d]).dim
            hp = 2 + (c == d) + (orbit[2] == d)
            t.hom.append(dict(pair, dim=h, predicted=hp, agree=h == hp))
            dims = ext_dims(mods[c], mods[d], max_ext)[1:]
            ep = (2 + (c == d) + (orbit[2] == d)) + (2 + (orbit[1] == d) + (orbit[3] == d)) - 4
            t.ext1.append(dict(pair, dim=dims[0], predicted=ep, vanishing_predicted=d not in orbit,
                               agree=dims[0] == ep and (dims[0] == 0) == (d not in orbit)))
            bounded = not any(dims)
            pred = tail_vanishes_bounded(f, r, c, d, 1, max_ext)
            exact = tail_vanishes(f, r, c, d, 1)
            grade = "criterion-certified" if bounded and exact else f"bounded (H={max_ext})"
            t.tail.append(dict(pair, ext_dims=dims, vanishes_up_to_H=bounded, predicted=pred,
                               criterion_all_i=exact, grade=grade,
                               agree=bounded == pred and (bounded or not exact)))
    return t
