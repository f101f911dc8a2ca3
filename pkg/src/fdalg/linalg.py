"""Exact scalars and dense matrices over the rationals and prime fields.

Rationals are ``gmpy2.mpq`` values (always in lowest terms); elements of
``F_p`` are plain ints in ``range(p)``.  A :class:`Matrix` carries its
field, and arithmetic between matrices over different fields raises.
"""
from __future__ import annotations

import gmpy2

__all__ = [
    "Field", "QQ", "GF", "FieldMismatch", "Matrix",
    "rref", "kernel_basis", "solve", "invert", "rank", "span",
]

mpq = gmpy2.mpq


class FieldMismatch(ValueError):
    pass


class Field:
    """The rationals (``p == 0``) or the prime field of order ``p``."""

    _cache: dict = {}

    def __new__(cls, p=0):
        p = int(p)
        if p in cls._cache:
            return cls._cache[p]
        if p < 0 or (p and not gmpy2.is_prime(p)):
            raise ValueError(f"characteristic must be 0 or a prime, got {p}")
        self = super().__new__(cls)
        self.p = p
        self.zero = 0 if p else mpq(0)
        self.one = 1 if p else mpq(1)
        cls._cache[p] = self
        return self

    def __reduce__(self):
        return (Field, (self.p,))

    @property
    def char(self):
        return self.p

    @property
    def spec(self):
        return f"Fp:{self.p}" if self.p else "Q"

    def __repr__(self):
        return "QQ" if not self.p else f"GF({self.p})"

    def __call__(self, x):
        """Convert ints, strings, Fractions or mpq values into this field."""
        if isinstance(x, str):
            return self.parse(x)
        if self.p:
            if isinstance(x, int):
                return x % self.p
            q = mpq(x)
            return int(q.numerator) * pow(int(q.denominator), -1, self.p) % self.p
        return mpq(x)

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(x, -1, self.p)
        return 1 / x

    def neg(self, x):
        return (-x) % self.p if self.p else -x

    def format(self, x) -> str:
        if self.p:
            return f"{x} mod {self.p}"
        x = mpq(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def parse(self, s: str):
        s = s.strip()
        if self.p:
            if "mod" in s:
                k, _, p = s.partition("mod")
                if int(p) != self.p:
                    raise FieldMismatch(f"scalar {s!r} is not in {self!r}")
                return int(k) % self.p
            return self(mpq(s))
        if "mod" in s:
            raise FieldMismatch(f"scalar {s!r} is not rational")
        return mpq(s)

    @classmethod
    def from_spec(cls, spec: str) -> "Field":
        spec = spec.strip()
        if spec in ("Q", "QQ"):
            return QQ
        if spec.startswith("Fp:"):
            return cls(int(spec[3:]))
        raise ValueError(f"unknown field spec {spec!r}")


QQ = Field(0)


def GF(p: int) -> Field:
    if not p:
        raise ValueError("GF needs a prime")
    return Field(p)


# ---------------------------------------------------------------------------
# row-reduction kernels working on plain lists of lists

def _rref_inplace(rows, ncols, p, stop=None):
    """Gauss-Jordan on ``rows`` (modified in place); returns pivot columns.

    ``stop`` limits pivot search to the first ``stop`` columns (used for
    augmented systems).
    """
    pivots = []
    nrows = len(rows)
    r = 0
    last = ncols if stop is None else stop
    for c in range(last):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        a = prow[c]
        if p:
            if a != 1:
                ai = pow(a, -1, p)
                prow[:] = [x * ai % p for x in prow]
        elif a != 1:
            ai = 1 / a
            prow[:] = [x * ai for x in prow]
        nz = [k for k in range(c, ncols) if prow[k]]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if not f:
                continue
            if p:
                for k in nz:
                    row[k] = (row[k] - f * prow[k]) % p
            else:
                for k in nz:
                    row[k] -= f * prow[k]
        pivots.append(c)
        r += 1
    return pivots


class Matrix:
    """Dense matrix over a :class:`Field`, stored row-major.

    Treated as immutable: operations return new matrices.
    """

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, rows, ncols: int | None = None):
        self.field = field
        self.rows = rows
        self.nrows = len(rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for a matrix without rows")
            ncols = len(rows[0])
        self.ncols = ncols

    # construction ---------------------------------------------------------
    @classmethod
    def from_rows(cls, field, data, ncols=None):
        rows = [[field(x) for x in row] for row in data]
        return cls(field, rows, ncols)

    @classmethod
    def from_columns(cls, field, cols, nrows):
        cols = list(cols)
        rows = [[col[i] for col in cols] for i in range(nrows)]
        return cls(field, rows, len(cols))

    @classmethod
    def zeros(cls, field, nrows, ncols):
        z = field.zero
        return cls(field, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field, n):
        m = cls.zeros(field, n, n)
        for i in range(n):
            m.rows[i][i] = field.one
        return m

    # basic protocol -------------------------------------------------------
    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __repr__(self):
        f = self.field
        body = "; ".join(" ".join(f.format(x) if not f.p else str(x) for x in r) for r in self.rows)
        return f"Matrix<{self.nrows}x{self.ncols} {f!r}>[{body}]"

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field is other.field and self.shape == other.shape
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.shape, tuple(tuple(r) for r in self.rows)))

    def copy_rows(self):
        return [list(r) for r in self.rows]

    def column(self, j):
        return [r[j] for r in self.rows]

    def columns(self):
        return [list(c) for c in zip(*self.rows)] if self.nrows else [[] for _ in range(self.ncols)]

    def is_zero(self):
        return not any(any(r) for r in self.rows)

    def _check(self, other):
        if self.field is not other.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    # arithmetic -----------------------------------------------------------
    @property
    def T(self):
        if not self.nrows:
            return Matrix(self.field, [[] for _ in range(self.ncols)], 0)
        return Matrix(self.field, [list(c) for c in zip(*self.rows)], self.nrows)

    def __add__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        p = self.field.p
        if p:
            rows = [[(a + b) % p for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        else:
            rows = [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        return Matrix(self.field, rows, self.ncols)

    def __neg__(self):
        p = self.field.p
        rows = [[(-a) % p for a in r] for r in self.rows] if p else [[-a for a in r] for r in self.rows]
        return Matrix(self.field, rows, self.ncols)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        p = self.field.p
        c = self.field(c)
        rows = [[a * c % p for a in r] for r in self.rows] if p else [[a * c for a in r] for r in self.rows]
        return Matrix(self.field, rows, self.ncols)

    def __matmul__(self, other):
        self._check(other)
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        p = self.field.p
        m = other.ncols
        z = self.field.zero
        brows = other.rows
        out = []
        for arow in self.rows:
            acc = [z] * m
            for j, a in enumerate(arow):
                if a:
                    brow = brows[j]
                    acc = [x + a * y for x, y in zip(acc, brow)]
            if p:
                acc = [x % p for x in acc]
            out.append(acc)
        return Matrix(self.field, out, m)

    def apply(self, v):
        """Matrix times a column vector given as a list."""
        p = self.field.p
        if p:
            return [sum(a * b for a, b in zip(r, v)) % p for r in self.rows]
        z = self.field.zero
        return [sum((a * b for a, b in zip(r, v) if a), z) for r in self.rows]

    def hstack(self, other):
        self._check(other)
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        return Matrix(self.field, [r + s for r, s in zip(self.rows, other.rows)], self.ncols + other.ncols)

    def vstack(self, other):
        self._check(other)
        if self.ncols != other.ncols:
            raise ValueError("column count mismatch")
        return Matrix(self.field, self.copy_rows() + other.copy_rows(), self.ncols)

    def submatrix(self, rows=None, cols=None):
        rows = range(self.nrows) if rows is None else rows
        if cols is None:
            return Matrix(self.field, [list(self.rows[i]) for i in rows], self.ncols)
        cols = list(cols)
        return Matrix(self.field, [[self.rows[i][j] for j in cols] for i in rows], len(cols))

    def trace(self):
        p = self.field.p
        t = sum((self.rows[i][i] for i in range(min(self.shape))), self.field.zero)
        return t % p if p else t

    # elimination ----------------------------------------------------------
    def rref(self):
        return rref(self)

    def rank(self):
        return rank(self)

    def kernel(self):
        return kernel_basis(self)

    def to_json(self):
        f = self.field
        return [[f.format(x) for x in r] for r in self.rows]


def rref(m: Matrix):
    """Reduced row-echelon form, rank and pivot columns."""
    rows = m.copy_rows()
    pivots = _rref_inplace(rows, m.ncols, m.field.p)
    return Matrix(m.field, rows, m.ncols), len(pivots), pivots


def rank(m: Matrix) -> int:
    if m.nrows == 0 or m.ncols == 0:
        return 0
    # eliminate the shorter side
    src = m if m.nrows <= m.ncols else m.T
    rows = src.copy_rows()
    return len(_rref_inplace(rows, src.ncols, m.field.p))


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form a basis of ``{v : m v = 0}``."""
    f = m.field
    rows = m.copy_rows()
    pivots = _rref_inplace(rows, m.ncols, f.p)
    pivset = set(pivots)
    free = [j for j in range(m.ncols) if j not in pivset]
    cols = []
    for j in free:
        v = [f.zero] * m.ncols
        v[j] = f.one
        for r, pc in enumerate(pivots):
            x = rows[r][j]
            if x:
                v[pc] = f.neg(x)
        cols.append(v)
    return Matrix.from_columns(f, cols, m.ncols) if cols else Matrix(f, [[] for _ in range(m.ncols)], 0)


def solve(m: Matrix, b: Matrix):
    """Some ``x`` with ``m @ x == b``, or ``None`` when inconsistent."""
    m._check(b)
    if m.nrows != b.nrows:
        raise ValueError(f"row counts differ: {m.nrows} vs {b.nrows}")
    f = m.field
    n = m.ncols
    rows = [r + s for r, s in zip(m.rows, b.rows)]
    pivots = _rref_inplace(rows, n + b.ncols, f.p, stop=n)
    r = len(pivots)
    for row in rows[r:]:
        if any(row[n:]):
            return None
    x = [[f.zero] * b.ncols for _ in range(n)]
    for i, pc in enumerate(pivots):
        x[pc] = rows[i][n:]
    return Matrix(f, x, b.ncols)


def invert(m: Matrix):
    """The inverse of a square matrix, or ``None`` if it is singular."""
    if m.nrows != m.ncols:
        raise ValueError("invert needs a square matrix")
    n = m.nrows
    if n == 0:
        return Matrix(m.field, [], 0)
    # m x = I is consistent only when m has full rank
    return solve(m, Matrix.identity(m.field, n))


def span(field: Field, vectors, dim: int):
    """Echelon basis of the span of ``vectors`` (each a list of length ``dim``).

    Returns ``(basis_rows, pivots)`` where every basis row has a 1 at its
    pivot and 0 at every other pivot, so coordinates of a vector in the
    span are its entries at the pivot positions.
    """
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return [], []
    pivots = _rref_inplace(rows, dim, field.p)
    return rows[: len(pivots)], pivots


class Echelon:
    """Incrementally maintained echelon basis of a subspace of ``K^dim``."""

    __slots__ = ("field", "dim", "rows", "pivots")

    def __init__(self, field, dim, vectors=()):
        self.field = field
        self.dim = dim
        self.rows = []
        self.pivots = []
        for v in vectors:
            self.add(v)

    def __len__(self):
        return len(self.rows)

    def reduce(self, v):
        """Residue of ``v`` after clearing all pivot positions."""
        p = self.field.p
        v = list(v)
        for row, pc in zip(self.rows, self.pivots):
            a = v[pc]
            if a:
                if p:
                    v = [(x - a * y) % p for x, y in zip(v, row)]
                else:
                    v = [x - a * y if y else x for x, y in zip(v, row)]
        return v

    def contains(self, v):
        return not any(self.reduce(v))

    def add(self, v):
        """Add ``v``; returns True iff it enlarged the span."""
        r = self.reduce(v)
        pc = next((j for j, x in enumerate(r) if x), None)
        if pc is None:
            return False
        p = self.field.p
        a = r[pc]
        if p:
            ai = pow(a, -1, p)
            r = [x * ai % p for x in r]
        elif a != 1:
            r = [x / a for x in r]
        # keep the basis reduced at the new pivot
        new_rows = []
        for row in self.rows:
            b = row[pc]
            if b:
                row = [(x - b * y) % p for x, y in zip(row, r)] if p else [x - b * y for x, y in zip(row, r)]
            new_rows.append(row)
        self.rows = new_rows
        self.rows.append(r)
        self.pivots.append(pc)
        return True

    def coordinates(self, v):
        """Coordinates of ``v`` (assumed in the span) w.r.t. the basis rows."""
        return [v[pc] for pc in self.pivots]

    def matrix(self):
        """Basis vectors as the columns of a ``dim x len`` matrix."""
        if not self.rows:
            return Matrix(self.field, [[] for _ in range(self.dim)], 0)
        return Matrix.from_columns(self.field, self.rows, self.dim)
