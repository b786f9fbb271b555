"""Exact dense linear algebra over prime fields and the rationals.

Everything here works on plain Python numbers: ints reduced into
``[0, p)`` for ``GF(p)`` and :class:`fractions.Fraction` for ``QQ``.
Matrices are small (a few dozen rows at most), so clarity wins over
vectorisation; the one concession to speed is a bitset elimination
path for ``GF(2)``, where most of the enumeration work happens.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import InputError, ResourceError

__all__ = [
    "PrimeField",
    "RationalField",
    "GF",
    "QQ",
    "field_from_json",
    "Matrix",
    "rref",
    "kernel_basis",
    "solve",
    "span_rref",
    "Coordinates",
    "gaussian_binomial",
    "count_subspaces",
    "enumerate_subspaces",
]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _parse_fraction(text: str) -> Fraction:
    text = text.strip()
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"cannot parse coefficient {text!r}") from exc


class PrimeField:
    """The prime field GF(p); elements are ints in ``range(p)``."""

    kind = "prime"
    is_finite = True

    def __init__(self, p: int):
        if not isinstance(p, int) or not _is_prime(p):
            raise InputError(f"field characteristic {p!r} is not prime")
        self.p = p
        self.order = p
        self.zero = 0
        self.one = 1

    def __call__(self, x) -> int:
        if isinstance(x, str):
            x = _parse_fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise InputError(f"{x} has no image in GF({self.p})")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def elements(self) -> range:
        return range(self.p)

    def random(self, rng):
        return rng.randrange(self.p)

    def to_json(self) -> dict:
        return {"kind": "prime", "p": self.p}

    def fmt(self, a):
        return int(a)


class RationalField:
    """The rationals; elements are ``Fraction`` instances."""

    kind = "rational"
    is_finite = False
    order = None
    p = 0

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __call__(self, x) -> Fraction:
        if isinstance(x, str):
            return _parse_fraction(x)
        return Fraction(x)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "QQ"

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def elements(self):
        raise ResourceError("QQ is infinite; element enumeration is impossible")

    def random(self, rng):
        # small integers keep entries readable; Schwartz-Zippel only needs a spread
        return Fraction(rng.randint(-9, 9))

    def to_json(self) -> dict:
        return {"kind": "rational"}

    def fmt(self, a):
        a = Fraction(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


def GF(p: int) -> PrimeField:
    return PrimeField(p)


QQ = RationalField()


def field_from_json(doc) -> PrimeField | RationalField:
    if not isinstance(doc, dict) or "kind" not in doc:
        raise InputError("field must be an object with a 'kind' key")
    if doc["kind"] == "prime":
        if "p" not in doc:
            raise InputError("prime field requires 'p'")
        return PrimeField(doc["p"])
    if doc["kind"] == "rational":
        return QQ
    raise InputError(f"unknown field kind {doc['kind']!r}")


# ---------------------------------------------------------------------------
# row reduction on raw lists


def _rref_gf2(rows: list[list[int]], ncols: int):
    packed = []
    for row in rows:
        bits = 0
        for c, x in enumerate(row):
            if x & 1:
                bits |= 1 << c
        if bits:
            packed.append(bits)
    pivots = []
    r = 0
    for c in range(ncols):
        mask = 1 << c
        for i in range(r, len(packed)):
            if packed[i] & mask:
                packed[r], packed[i] = packed[i], packed[r]
                break
        else:
            continue
        piv = packed[r]
        for i in range(len(packed)):
            if i != r and packed[i] & mask:
                packed[i] ^= piv
        pivots.append(c)
        r += 1
        if r == len(packed):
            break
    out = [[(packed[i] >> c) & 1 for c in range(ncols)] for i in range(r)]
    return out, pivots


def _rref_modp(rows: list[list[int]], ncols: int, p: int):
    m = [list(row) for row in rows if any(row)]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        for i in range(r, len(m)):
            if m[i][c]:
                m[r], m[i] = m[i], m[r]
                break
        else:
            continue
        inv = pow(m[r][c], -1, p)
        if inv != 1:
            m[r] = [x * inv % p for x in m[r]]
        piv = m[r]
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f:
                    m[i] = [(x - f * y) % p for x, y in zip(m[i], piv)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def _rref_qq(rows: list[list[Fraction]], ncols: int):
    m = [list(row) for row in rows if any(row)]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        for i in range(r, len(m)):
            if m[i][c] != 0:
                m[r], m[i] = m[i], m[r]
                break
        else:
            continue
        lead = m[r][c]
        if lead != 1:
            m[r] = [x / lead for x in m[r]]
        piv = m[r]
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f != 0:
                    m[i] = [x - f * y for x, y in zip(m[i], piv)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rref_rows(field, rows: Sequence[Sequence], ncols: int):
    """Reduced row echelon form of raw rows; returns (nonzero rows, pivots)."""
    if field.kind == "prime":
        if field.p == 2:
            return _rref_gf2(rows, ncols)
        return _rref_modp(rows, ncols, field.p)
    return _rref_qq([[Fraction(x) for x in row] for row in rows], ncols)


def kernel_rows(field, rows: Sequence[Sequence], ncols: int) -> list[list]:
    reduced, pivots = rref_rows(field, rows, ncols)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [field.zero] * ncols
        v[f] = field.one
        for r, pc in enumerate(pivots):
            x = reduced[r][f]
            if x:
                v[pc] = field.neg(x)
        basis.append(v)
    return basis


def span_rref(field, vectors: Iterable[Sequence], ncols: int) -> tuple[tuple, ...]:
    """Canonical (reduced echelon) basis of the span, as a hashable tuple."""
    reduced, _ = rref_rows(field, list(vectors), ncols)
    return tuple(tuple(row) for row in reduced)


def rank_rows(field, rows: Sequence[Sequence], ncols: int) -> int:
    return len(rref_rows(field, rows, ncols)[1])


def matmul_rows(field, a: Sequence[Sequence], b: Sequence[Sequence], inner: int, ncols: int):
    if not a or not ncols:
        return [[field.zero] * ncols for _ in a]
    if not inner:
        return [[field.zero] * ncols for _ in a]
    cols = list(zip(*b))
    if field.kind == "prime":
        p = field.p
        return [[sum(x * y for x, y in zip(row, col)) % p for col in cols] for row in a]
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols] for row in a]


def matvec(field, a: Sequence[Sequence], v: Sequence) -> list:
    if field.kind == "prime":
        p = field.p
        return [sum(x * y for x, y in zip(row, v)) % p for row in a]
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


class Matrix:
    """Immutable dense matrix over a :class:`PrimeField` or :class:`RationalField`."""

    __slots__ = ("field", "nrows", "ncols", "rows", "_hash")

    def __init__(self, field, rows: Iterable[Iterable], ncols: int | None = None):
        rows = tuple(tuple(field(x) for x in row) for row in rows)
        if ncols is None:
            if not rows:
                raise InputError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        for row in rows:
            if len(row) != ncols:
                raise InputError("ragged matrix rows")
        self.field = field
        self.nrows = len(rows)
        self.ncols = ncols
        self.rows = rows
        self._hash = None

    @classmethod
    def _raw(cls, field, rows, ncols):
        # trusted constructor: rows already canonical
        m = object.__new__(cls)
        m.field = field
        m.rows = tuple(tuple(r) for r in rows)
        m.nrows = len(m.rows)
        m.ncols = ncols
        m._hash = None
        return m

    @classmethod
    def zeros(cls, field, nrows: int, ncols: int) -> "Matrix":
        return cls._raw(field, [[field.zero] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field, n: int) -> "Matrix":
        return cls._raw(
            field, [[field.one if i == j else field.zero for j in range(n)] for i in range(n)], n
        )

    @classmethod
    def from_columns(cls, field, columns: Sequence[Sequence], nrows: int) -> "Matrix":
        if not columns:
            return cls.zeros(field, nrows, 0)
        return cls._raw(field, [list(r) for r in zip(*columns)], len(columns))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __repr__(self):
        return f"Matrix({self.field!r}, {[list(map(self.field.fmt, r)) for r in self.rows]})"

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.shape == other.shape
            and self.field == other.field
            and self.rows == other.rows
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape, self.rows))
        return self._hash

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def columns(self) -> list[tuple]:
        if self.nrows == 0:
            return [() for _ in range(self.ncols)]
        return list(zip(*self.rows))

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.rows)

    def T(self) -> "Matrix":
        return Matrix._raw(self.field, self.columns(), self.nrows)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise InputError(f"shape mismatch {self.shape} @ {other.shape}")
        rows = matmul_rows(self.field, self.rows, other.rows, self.ncols, other.ncols)
        return Matrix._raw(self.field, rows, other.ncols)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise InputError("shape mismatch in addition")
        f = self.field
        return Matrix._raw(
            f, [[f.add(x, y) for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise InputError("shape mismatch in subtraction")
        f = self.field
        return Matrix._raw(
            f, [[f.sub(x, y) for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols
        )

    def __neg__(self) -> "Matrix":
        f = self.field
        return Matrix._raw(f, [[f.neg(x) for x in r] for r in self.rows], self.ncols)

    def scale(self, c) -> "Matrix":
        f = self.field
        c = f(c)
        return Matrix._raw(f, [[f.mul(c, x) for x in r] for r in self.rows], self.ncols)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.ncols:
            raise InputError("vector length mismatch")
        return tuple(matvec(self.field, self.rows, v))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def flat(self) -> tuple:
        return tuple(x for r in self.rows for x in r)

    def rank(self) -> int:
        return rank_rows(self.field, self.rows, self.ncols)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows:
            raise InputError("row count mismatch in hstack")
        return Matrix._raw(
            self.field, [r + s for r, s in zip(self.rows, other.rows)], self.ncols + other.ncols
        )

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.ncols:
            raise InputError("column count mismatch in vstack")
        return Matrix._raw(self.field, self.rows + other.rows, self.ncols)

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        return Matrix._raw(self.field, [r[c0:c1] for r in self.rows[r0:r1]], c1 - c0)

    def power(self, k: int) -> "Matrix":
        if self.nrows != self.ncols:
            raise InputError("power of a non-square matrix")
        result = Matrix.identity(self.field, self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def inverse(self) -> "Matrix":
        n = self.nrows
        if n != self.ncols:
            raise InputError("inverse of a non-square matrix")
        ident = Matrix.identity(self.field, n)
        reduced, pivots = rref_rows(
            self.field, [r + s for r, s in zip(self.rows, ident.rows)], 2 * n
        )
        if pivots[:n] != list(range(n)) or len(reduced) < n:
            raise ZeroDivisionError("matrix is singular")
        return Matrix._raw(self.field, [r[n:] for r in reduced[:n]], n)


def rref(m: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row echelon form; zero rows are kept at the bottom so the shape is preserved."""
    reduced, pivots = rref_rows(m.field, m.rows, m.ncols)
    f = m.field
    full = [list(r) for r in reduced] + [[f.zero] * m.ncols for _ in range(m.nrows - len(reduced))]
    return Matrix._raw(f, full, m.ncols), len(pivots), pivots


def kernel_basis(m: Matrix) -> list[tuple]:
    """Basis of the right null space ``{v : m v = 0}``."""
    return [tuple(v) for v in kernel_rows(m.field, m.rows, m.ncols)]


def solve(m: Matrix, b: Sequence) -> tuple | None:
    """A solution of ``m x = b`` (free variables set to zero), or ``None`` if inconsistent."""
    if len(b) != m.nrows:
        raise InputError(f"right-hand side has length {len(b)}, expected {m.nrows}")
    f = m.field
    aug = [list(r) + [f(x)] for r, x in zip(m.rows, b)]
    reduced, pivots = rref_rows(f, aug, m.ncols + 1)
    if pivots and pivots[-1] == m.ncols:
        return None
    x = [f.zero] * m.ncols
    for r, pc in enumerate(pivots):
        x[pc] = reduced[r][m.ncols]
    return tuple(x)


class Coordinates:
    """Repeated coordinate extraction with respect to a fixed independent family.

    ``coords(v)`` returns ``c`` with ``sum(c[i] * basis[i]) == v``.
    """

    def __init__(self, field, basis: Sequence[Sequence], length: int):
        self.field = field
        self.basis = [tuple(b) for b in basis]
        self.length = length
        k = len(self.basis)
        if k == 0:
            self._rows = []
            self._inv = None
            return
        # independent rows of the column matrix = pivot columns of its transpose
        _, pivots = rref_rows(field, self.basis, length)
        if len(pivots) != k:
            raise InputError("coordinate basis is linearly dependent")
        self._rows = pivots
        square = Matrix._raw(field, [[b[r] for b in self.basis] for r in pivots], k)
        self._inv = square.inverse()

    def coords(self, v: Sequence, check: bool = True) -> tuple:
        if not self.basis:
            if check and any(v):
                raise InputError("vector is not in the span")
            return ()
        c = self._inv.apply([v[r] for r in self._rows])
        if check:
            f = self.field
            back = [f.zero] * self.length
            for ci, b in zip(c, self.basis):
                if ci:
                    back = [f.add(x, f.mul(ci, y)) for x, y in zip(back, b)]
            if tuple(back) != tuple(f(x) for x in v):
                raise InputError("vector is not in the span")
        return c


# ---------------------------------------------------------------------------
# subspace enumeration


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def count_subspaces(dim: int, q: int) -> int:
    return sum(gaussian_binomial(dim, k, q) for k in range(dim + 1))


def enumerate_subspaces(dim: int, field, cap: int = 1 << 16) -> Iterator[Matrix]:
    """Yield every subspace of ``field^dim`` once, as its reduced echelon basis.

    Order: by dimension, then pivot set lexicographically, then free entries
    lexicographically.
    """
    if not field.is_finite:
        raise ResourceError("subspace enumeration needs a finite field")
    total = count_subspaces(dim, field.order)
    if total > cap:
        raise ResourceError(
            f"{total} subspaces of F_{field.order}^{dim} exceed cap {cap}", required=total
        )
    elems = list(field.elements())
    for k in range(dim + 1):
        for pivots in itertools.combinations(range(dim), k):
            pivset = set(pivots)
            free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, dim) if c not in pivset]
            for values in itertools.product(elems, repeat=len(free)):
                rows = [[field.zero] * dim for _ in range(k)]
                for r, pc in enumerate(pivots):
                    rows[r][pc] = field.one
                for (r, c), x in zip(free, values):
                    rows[r][c] = x
                yield Matrix._raw(field, rows, dim)
