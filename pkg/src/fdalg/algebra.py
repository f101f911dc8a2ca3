"""Finite-dimensional associative algebras given by structure constants."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import sympy
from gmpy2 import mpq

from .linalg import Echelon, Field, Matrix, kernel_basis, rank, solve

__all__ = [
    "Algebra", "AlgebraElement", "NonSplitError", "UnsupportedCharacteristic",
    "AlgebraCheck", "FormSearch", "check_algebra", "radical",
    "primitive_idempotents", "opposite", "symmetrizing_form",
    "trivial_extension", "tensor_product", "is_selfinjective", "is_local",
]


class NonSplitError(ValueError):
    """The semisimple quotient is not a product of copies of the ground field."""


class UnsupportedCharacteristic(ValueError):
    pass


class Algebra:
    """Associative unital algebra with basis ``b_0 .. b_{d-1}``.

    ``table[i][j]`` is the coordinate vector of ``b_i * b_j``.
    """

    def __init__(self, field: Field, table, unit, labels=None, name=None):
        self.field = field
        self.table = table
        self.dim = len(table)
        if self.dim < 1:
            raise ValueError("an algebra has dimension at least 1")
        self.unit = list(unit)
        self.labels = list(labels) if labels is not None else [f"b{i}" for i in range(self.dim)]
        self.name = name or "algebra"
        self._known_idempotents = None
        self._local_radical = None
        self._opposite = None
        self._nz = [[[(k, c) for k, c in enumerate(v) if c] for v in row] for row in table]

    @classmethod
    def from_table(cls, field, table, unit, labels=None, name=None):
        table = [[[field(x) for x in v] for v in row] for row in table]
        return cls(field, table, [field(x) for x in unit], labels, name)

    def __repr__(self):
        return f"<Algebra {self.name} dim={self.dim} over {self.field!r}>"

    def same_as(self, other) -> bool:
        if self is other:
            return True
        return (isinstance(other, Algebra) and self.field is other.field
                and self.unit == other.unit and self.table == other.table)

    # elements ---------------------------------------------------------------
    def zero_vector(self):
        return [self.field.zero] * self.dim

    def basis_vector(self, i):
        v = self.zero_vector()
        v[i] = self.field.one
        return v

    def element(self, coords) -> "AlgebraElement":
        """Element from a coordinate list or a ``{label: coefficient}`` dict."""
        if isinstance(coords, dict):
            v = self.zero_vector()
            for lab, c in coords.items():
                v[self.labels.index(lab)] = self.field(c)
            return AlgebraElement(self, v)
        return AlgebraElement(self, [self.field(x) for x in coords])

    def gen(self, label) -> "AlgebraElement":
        return AlgebraElement(self, self.basis_vector(self.labels.index(label)))

    @property
    def one(self):
        return AlgebraElement(self, list(self.unit))

    def mult(self, u, v):
        """Product of two coordinate vectors."""
        p = self.field.p
        out = self.zero_vector()
        nz = self._nz
        vnz = [(j, b) for j, b in enumerate(v) if b]
        for i, a in enumerate(u):
            if not a:
                continue
            row = nz[i]
            for j, b in vnz:
                ab = a * b
                for k, c in row[j]:
                    out[k] += ab * c
        if p:
            out = [x % p for x in out]
        return out

    def add(self, u, v):
        p = self.field.p
        if p:
            return [(a + b) % p for a, b in zip(u, v)]
        return [a + b for a, b in zip(u, v)]

    def scale(self, c, u):
        p = self.field.p
        if p:
            return [c * a % p for a in u]
        return [c * a for a in u]

    def right_mult_matrix(self, u) -> Matrix:
        """Matrix of ``v -> v u`` on coordinate columns."""
        d = self.dim
        cols = [self.mult(self.basis_vector(j), u) for j in range(d)]
        return Matrix.from_columns(self.field, cols, d)

    def left_mult_matrix(self, u) -> Matrix:
        d = self.dim
        cols = [self.mult(u, self.basis_vector(j)) for j in range(d)]
        return Matrix.from_columns(self.field, cols, d)

    @cached_property
    def regular_actions(self):
        """Right regular action matrices, one per basis element."""
        d, z = self.dim, self.field.zero
        mats = []
        for i in range(d):
            rows = [[z] * d for _ in range(d)]
            for j in range(d):
                for k, c in self._nz[j][i]:
                    rows[k][j] = c
            mats.append(Matrix(self.field, rows, d))
        return mats

    @cached_property
    def left_actions(self):
        d, z = self.dim, self.field.zero
        mats = []
        for i in range(d):
            rows = [[z] * d for _ in range(d)]
            for j in range(d):
                for k, c in self._nz[i][j]:
                    rows[k][j] = c
            mats.append(Matrix(self.field, rows, d))
        return mats

    # radical ----------------------------------------------------------------
    @cached_property
    def radical(self) -> Echelon:
        """Echelon basis of the Jacobson radical (kernel of the trace form).

        A constructor may supply ``_local_radical``: a codimension-one subspace
        claimed to be a nilpotent ideal.  It is verified and then used in any
        characteristic, since a nilpotent ideal with quotient K is the radical.
        """
        f, d = self.field, self.dim
        if self._local_radical is not None:
            return self._verified_local_radical()
        if f.p and f.p <= d:
            raise UnsupportedCharacteristic(
                f"trace-form radical needs char 0 or char > {d}, got {f.p}")
        t = [sum((self.table[k][j][j] for j in range(d)), f.zero) for k in range(d)]
        gram = []
        for i in range(d):
            row = []
            for j in range(d):
                s = sum((c * t[k] for k, c in self._nz[i][j]), f.zero)
                row.append(s % f.p if f.p else s)
            gram.append(row)
        ker = kernel_basis(Matrix(f, gram, d))
        rad = Echelon(f, d, ker.columns())
        self._check_nilpotent(rad)
        return rad

    def _verified_local_radical(self):
        f, d = self.field, self.dim
        rad = Echelon(f, d, self._local_radical)
        if len(rad) != d - 1 or rad.contains(self.unit):
            raise ValueError("local radical hint must have codimension one")
        for u in rad.rows:
            for k in range(d):
                b = self.basis_vector(k)
                if not (rad.contains(self.mult(u, b)) and rad.contains(self.mult(b, u))):
                    raise ValueError("local radical hint is not an ideal")
        self._check_nilpotent(rad)
        return rad

    def _check_nilpotent(self, rad):
        power = rad
        for _ in range(self.dim + 1):
            if not len(power):
                return
            nxt = Echelon(self.field, self.dim)
            for u in power.rows:
                for v in rad.rows:
                    nxt.add(self.mult(u, v))
            if len(nxt) == len(power):
                raise ArithmeticError("trace-form kernel is not nilpotent")
            power = nxt

    @cached_property
    def radical_powers(self):
        """Echelon bases of ``J^0 = A, J, J^2, ...`` ending with the zero space."""
        f, d = self.field, self.dim
        powers = [Echelon(f, d, [self.basis_vector(i) for i in range(d)]), self.radical]
        while len(powers[-1]):
            nxt = Echelon(f, d)
            for u in powers[-1].rows:
                for v in self.radical.rows:
                    nxt.add(self.mult(u, v))
            powers.append(nxt)
        return powers

    @cached_property
    def radical_generators(self):
        """Vectors spanning a complement of ``J^2`` in ``J``."""
        powers = self.radical_powers
        ech = Echelon(self.field, self.dim, powers[2].rows if len(powers) > 2 else ())
        return [v for v in self.radical.rows if ech.add(v)]

    @cached_property
    def generators(self):
        """A generating set (idempotents and radical generators when split)."""
        try:
            gens = [list(e) for e in self.idempotents] + [list(v) for v in self.radical_generators]
        except (NonSplitError, UnsupportedCharacteristic):
            return [self.basis_vector(i) for i in range(self.dim)]
        return gens

    # idempotents ------------------------------------------------------------
    @cached_property
    def idempotents(self):
        """Complete set of orthogonal primitive idempotents (coordinate vectors)."""
        if self._known_idempotents is not None:
            return [list(e) for e in self._known_idempotents]
        return _lift_idempotents(self, _split_quotient(self))

    @cached_property
    def idempotent_classes(self):
        """``classes[i]`` = index of the representative equivalent to ``e_i``."""
        es = self.idempotents
        rad = self.radical
        d = self.dim
        n = len(es)
        cls = list(range(n))
        basis = [self.basis_vector(k) for k in range(d)]
        for i in range(n):
            left = [self.mult(es[i], b) for b in basis]
            for j in range(i):
                if cls[j] != j:
                    continue
                # e_i ~ e_j iff e_i A e_j is not inside J
                if any(not rad.contains(self.mult(u, es[j])) for u in left):
                    cls[i] = j
                    break
        return cls

    @cached_property
    def class_representatives(self):
        cls = self.idempotent_classes
        return [i for i in range(len(cls)) if cls[i] == i]

    # opposite -------------------------------------------------------------------
    def opposite(self) -> "Algebra":
        if self._opposite is None:
            d = self.dim
            table = [[self.table[j][i] for j in range(d)] for i in range(d)]
            op = Algebra(self.field, table, self.unit, self.labels, self.name + "^op")
            op._opposite = self
            op._local_radical = self._local_radical
            if self._known_idempotents is not None:
                op._known_idempotents = self._known_idempotents
            elif "idempotents" in self.__dict__:
                op._known_idempotents = self.idempotents
            self._opposite = op
        return self._opposite

    def to_json(self):
        f = self.field
        return {
            "field": f.spec,
            "dim": self.dim,
            "unit": [f.format(x) for x in self.unit],
            "structure": [[[f.format(x) for x in v] for v in row] for row in self.table],
            "labels": list(self.labels),
        }

    @classmethod
    def from_json(cls, data, name=None):
        f = Field.from_spec(data["field"])
        d = int(data["dim"])
        table = data["structure"]
        if len(table) != d or any(len(row) != d or any(len(v) != d for v in row) for row in table):
            raise ValueError("structure must be a dim x dim x dim array")
        if len(data["unit"]) != d:
            raise ValueError("unit must have dim entries")
        return cls.from_table(f, table, data["unit"], data.get("labels"), name)


class AlgebraElement:
    __slots__ = ("algebra", "coords")

    def __init__(self, algebra, coords):
        self.algebra = algebra
        self.coords = list(coords)

    def _wrap(self, v):
        return AlgebraElement(self.algebra, v)

    def _coerce(self, other):
        if isinstance(other, AlgebraElement):
            return other.coords
        a = self.algebra
        return a.scale(a.field(other), a.unit)

    def __add__(self, other):
        return self._wrap(self.algebra.add(self.coords, self._coerce(other)))

    __radd__ = __add__

    def __neg__(self):
        a = self.algebra
        return self._wrap(a.scale(a.field(-1), self.coords))

    def __sub__(self, other):
        return self + (-self._wrap(self._coerce(other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self._wrap(self.algebra.mult(self.coords, other.coords))
        return self._wrap(self.algebra.scale(self.algebra.field(other), self.coords))

    def __rmul__(self, c):
        return self._wrap(self.algebra.scale(self.algebra.field(c), self.coords))

    def __pow__(self, n):
        r = self.algebra.one
        for _ in range(n):
            r = r * self
        return r

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return self.coords == other.coords
        return self.coords == self._coerce(other)

    def __hash__(self):
        return hash(tuple(self.coords))

    def __bool__(self):
        return any(self.coords)

    def __repr__(self):
        a = self.algebra
        terms = [f"{a.field.format(c)}*{a.labels[i]}" for i, c in enumerate(self.coords) if c]
        return " + ".join(terms) or "0"

    def is_idempotent(self):
        return self * self == self


# ---------------------------------------------------------------------------

@dataclass
class AlgebraCheck:
    ok: bool
    triples_checked: int
    failure: tuple | None = None
    message: str = ""

    def __bool__(self):
        return self.ok


def check_algebra(a: Algebra) -> AlgebraCheck:
    """Exhaustive associativity and unit-law check."""
    d = a.dim
    basis = [a.basis_vector(i) for i in range(d)]
    for i in range(d):
        if a.mult(a.unit, basis[i]) != basis[i] or a.mult(basis[i], a.unit) != basis[i]:
            return AlgebraCheck(False, 0, ("unit", i), f"unit law fails at {a.labels[i]}")
    count = 0
    for i in range(d):
        for j in range(d):
            bij = a.table[i][j]
            for k in range(d):
                count += 1
                lhs = a.mult(bij, basis[k])
                rhs = a.mult(basis[i], a.table[j][k])
                if lhs != rhs:
                    return AlgebraCheck(False, count, (i, j, k),
                                        f"({a.labels[i]}*{a.labels[j]})*{a.labels[k]} differs")
    return AlgebraCheck(True, count)


def radical(a: Algebra) -> Matrix:
    """Basis of the Jacobson radical as matrix columns."""
    return a.radical.matrix()


def is_local(a: Algebra) -> bool:
    return a.dim - len(a.radical) == 1


def primitive_idempotents(a: Algebra):
    return [AlgebraElement(a, e) for e in a.idempotents]


def opposite(a: Algebra) -> Algebra:
    return a.opposite()


def _min_poly(a, e, t, reduce):
    """Minimal polynomial (low-to-high coefficients, monic) of ``t`` in ``eAe`` mod J."""
    f = a.field
    powers = [reduce(e)]
    cur = e
    ech = Echelon(f, a.dim, [powers[0]])
    while True:
        cur = a.mult(cur, t)
        r = reduce(cur)
        if not ech.add(r):
            m = Matrix.from_columns(f, powers, a.dim)
            sol = solve(m, Matrix.from_columns(f, [r], a.dim))
            coeffs = [f.neg(x[0]) for x in sol.rows] + [f.one]
            return coeffs
        powers.append(r)


def _roots(field, coeffs):
    x = sympy.Symbol("x")
    if field.p:
        poly = sympy.Poly([int(c) for c in reversed(coeffs)], x, modulus=field.p)
        roots = {int(r) % field.p: m for r, m in poly.ground_roots().items()}
    else:
        sc = [sympy.Rational(int(c.numerator), int(c.denominator)) for c in reversed(coeffs)]
        poly = sympy.Poly(sc, x, domain=sympy.QQ)
        roots = {field(mpq(int(r.p), int(r.q))): m for r, m in poly.ground_roots().items()}
    return roots


def _split_quotient(a: Algebra):
    """Orthogonal idempotents of ``A/J`` (as representatives in ``A``)."""
    f = a.field
    rad = a.radical
    s = a.dim - len(rad)
    if s == 1:
        return [list(a.unit)]
    reduce = rad.reduce
    pivset = set(rad.pivots)
    qbasis = [a.basis_vector(i) for i in range(a.dim) if i not in pivset]
    for u, v in itertools.combinations(qbasis, 2):
        if any(reduce([x - y if not f.p else (x - y) % f.p
                       for x, y in zip(a.mult(u, v), a.mult(v, u))])):
            raise NonSplitError("semisimple quotient is not commutative")
    candidates = list(qbasis)
    for k in range(1, 4):
        candidates.append(_lincomb(a, qbasis, [(i + 1) ** k for i in range(len(qbasis))]))
    idems = [list(a.unit)]

    def corner_dim(e):
        return len(Echelon(f, a.dim, [reduce(a.mult(e, b)) for b in qbasis]))

    for cand in candidates:
        if len(idems) == s:
            break
        nxt = []
        for e in idems:
            if corner_dim(e) == 1:
                nxt.append(e)
                continue
            t = a.mult(e, cand)
            coeffs = _min_poly(a, e, t, reduce)
            if len(coeffs) == 2:
                nxt.append(e)
                continue
            roots = _roots(f, coeffs)
            if sum(roots.values()) < len(coeffs) - 1 or any(m > 1 for m in roots.values()):
                raise NonSplitError("minimal polynomial does not split into distinct linear factors")
            for lam in roots:
                g = list(e)
                for mu in roots:
                    if mu == lam:
                        continue
                    inv = f.inv((lam - mu) % f.p if f.p else lam - mu)
                    factor = a.add(t, a.scale(f.neg(mu), e))
                    g = a.scale(inv, a.mult(g, factor))
                nxt.append(g)
        idems = nxt
    if len(idems) != s:
        raise NonSplitError("could not split the semisimple quotient into copies of K")
    return idems


def _lincomb(a, vecs, coeffs):
    out = a.zero_vector()
    for c, v in zip(coeffs, vecs):
        out = a.add(out, a.scale(a.field(c), v))
    return out


def _lift_idempotents(a: Algebra, reps):
    f = a.field
    neg = a.field(-1)
    out = []
    rest = list(a.unit)
    for r in reps[:-1]:
        x = a.mult(a.mult(rest, r), rest)
        for _ in range(4 * a.dim + 8):
            x2 = a.mult(x, x)
            if x2 == x:
                break
            x3 = a.mult(x2, x)
            x = a.add(a.scale(f(3), x2), a.scale(f(-2), x3))
        else:
            raise ArithmeticError("idempotent lifting did not converge")
        out.append(x)
        rest = a.add(rest, a.scale(neg, x))
    out.append(rest)
    return out


# ---------------------------------------------------------------------------

@dataclass
class FormSearch:
    """Outcome of the search for a nondegenerate symmetric associative form.

    ``status`` is ``"found"``, ``"absent"`` (every trace-like functional is
    degenerate) or ``"inconclusive"`` (the sweep failed and the exact test
    was out of reach).
    """
    status: str
    functional: list | None = None
    gram_rank: int = 0
    candidates_tried: int = 0
    solution_dim: int = 0

    def __bool__(self):
        return self.status == "found"


def gram_matrix(a: Algebra, functional) -> Matrix:
    f = a.field
    d = a.dim
    rows = []
    for i in range(d):
        row = []
        for j in range(d):
            s = sum((c * functional[k] for k, c in a._nz[i][j]), f.zero)
            row.append(s % f.p if f.p else s)
        rows.append(row)
    return Matrix(f, rows, d)


def _sweep(basis, height=8, max_support=3, budget=4000):
    """Deterministic candidate combinations of ``basis`` vectors (coefficient lists)."""
    n = len(basis)
    seen = 0
    for i in range(n):
        c = [0] * n
        c[i] = 1
        yield c
    # a few full-support combinations
    for pattern in (lambda k: k + 1, lambda k: (k + 1) ** 2, lambda k: (-1) ** k * (k + 2)):
        yield [pattern(k) for k in range(n)]
    for h in range(1, height + 1):
        vals = [v for v in range(-h, h + 1) if v]
        for size in range(1, min(max_support, n) + 1):
            for idx in itertools.combinations(range(n), size):
                for coefs in itertools.product(vals, repeat=size):
                    if max(abs(x) for x in coefs) != h or (size == 1 and h == 1):
                        continue
                    seen += 1
                    if seen > budget:
                        return
                    c = [0] * n
                    for i, x in zip(idx, coefs):
                        c[i] = x
                    yield c


def symmetrizing_form(a: Algebra, budget: int = 4000, symbolic_limit: int = 6) -> FormSearch:
    """Search for ``lam`` with ``lam(xy) = lam(yx)`` and nondegenerate Gram matrix.

    A deterministic sweep looks for a witness; if it fails on a small
    instance, the symbolic Gram determinant decides absence exactly.
    """
    f = a.field
    d = a.dim
    rows = []
    for i in range(d):
        for j in range(i + 1, d):
            u, v = a.table[i][j], a.table[j][i]
            r = [(x - y) % f.p if f.p else x - y for x, y in zip(u, v)]
            if any(r):
                rows.append(r)
    if rows:
        sol = kernel_basis(Matrix(f, rows, d)).columns()
    else:
        sol = [a.basis_vector(k) for k in range(d)]
    if not sol:
        return FormSearch("absent")
    tried = 0
    for coefs in _sweep(sol, budget=budget):
        tried += 1
        lam = _lincomb(a, sol, coefs)
        g = gram_matrix(a, lam)
        if rank(g) == d:
            return FormSearch("found", lam, d, tried, len(sol))
    if len(sol) <= symbolic_limit and d <= 16 and _gram_determinant_vanishes(a, sol):
        return FormSearch("absent", None, 0, tried, len(sol))
    return FormSearch("inconclusive", None, 0, tried, len(sol))


def _gram_determinant_vanishes(a: Algebra, sol) -> bool:
    """Is the Gram determinant identically zero on the span of ``sol``?"""
    f = a.field
    ts = sympy.symbols(f"t0:{len(sol)}")
    lam = [sum(sympy.Integer(int(v[k])) * t if f.p else sympy.Rational(int(v[k].numerator), int(v[k].denominator)) * t
               for v, t in zip(sol, ts)) for k in range(a.dim)]
    g = sympy.Matrix(a.dim, a.dim, lambda i, j: sum(
        (sympy.Integer(int(c)) if f.p else sympy.Rational(int(c.numerator), int(c.denominator))) * lam[k]
        for k, c in a._nz[i][j]))
    det = sympy.Poly(g.det(method="berkowitz"), *ts, modulus=f.p) if f.p else sympy.Poly(g.det(method="berkowitz"), *ts)
    return det.is_zero


def trivial_extension(a: Algebra) -> Algebra:
    """``T(A) = A + D(A)`` with ``(a,f)(b,g) = (ab, ag + fb)``."""
    f, d = a.field, a.dim
    n = 2 * d
    z = f.zero
    table = [[[z] * n for _ in range(n)] for _ in range(n)]
    for i in range(d):
        for j in range(d):
            for k, c in a._nz[i][j]:
                table[i][j][k] = c
    # D(A) bimodule actions in the dual basis phi_k
    for i in range(d):
        for l in range(d):
            for k in range(d):
                # (b_i . phi_l)(b_k) = phi_l(b_k b_i)
                table[i][d + l][d + k] = a.table[k][i][l]
                # (phi_l . b_i)(b_k) = phi_l(b_i b_k)
                table[d + l][i][d + k] = a.table[i][k][l]
    unit = list(a.unit) + [z] * d
    labels = list(a.labels) + [f"D({lab})" for lab in a.labels]
    return Algebra(f, table, unit, labels, f"T({a.name})")


def tensor_product(a: Algebra, b: Algebra) -> Algebra:
    if a.field is not b.field:
        raise ValueError("field mismatch")
    f = a.field
    da, db = a.dim, b.dim
    n = da * db
    z = f.zero
    table = [[[z] * n for _ in range(n)] for _ in range(n)]
    for i, j in itertools.product(range(da), range(db)):
        for k, l in itertools.product(range(da), range(db)):
            out = table[i * db + j][k * db + l]
            for m, c in a._nz[i][k]:
                for q, e in b._nz[j][l]:
                    v = out[m * db + q] + c * e
                    out[m * db + q] = v % f.p if f.p else v
    unit = [f.zero] * n
    for m, c in enumerate(a.unit):
        for q, e in enumerate(b.unit):
            unit[m * db + q] = (c * e) % f.p if f.p else c * e
    labels = [f"{x}(x){y}" for x in a.labels for y in b.labels]
    return Algebra(f, table, unit, labels, f"{a.name}(x){b.name}")


def is_selfinjective(a: Algebra) -> bool:
    from .module import is_injective, regular_module
    return is_injective(regular_module(a))
