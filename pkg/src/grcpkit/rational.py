"""Dense matrices over the rationals with exact elimination routines."""

from __future__ import annotations

import numbers
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .exceptions import FloatRejected, ParseError

Rational = Fraction
Row = tuple[Fraction, ...]


def to_fraction(value) -> Fraction:
    """Convert an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are refused: they cannot honour the exactness contract.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if any(ch in text for ch in ".eE") or text.lower() in {"nan", "inf", "-inf"}:
            raise FloatRejected(f"decimal/float literal {value!r} rejected; use 'p/q'")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"cannot parse rational {value!r}") from exc
    if isinstance(value, numbers.Rational):
        # numpy integer scalars and friends
        return Fraction(int(value.numerator), int(value.denominator))
    raise FloatRejected(f"non-exact entry {value!r} of type {type(value).__name__}")


class RationalMatrix:
    """Immutable ``rows x cols`` matrix of :class:`~fractions.Fraction`."""

    __slots__ = ("_rows", "shape")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(to_fraction(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ValueError("ragged rows")
        else:
            width = ncols or 0
        self._rows: tuple[Row, ...] = data
        self.shape = (len(data), width)

    @classmethod
    def _wrap(cls, rows: tuple[Row, ...], ncols: int) -> RationalMatrix:
        m = cls.__new__(cls)
        m._rows = rows
        m.shape = (len(rows), ncols)
        return m

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> RationalMatrix:
        ncols = nrows if ncols is None else ncols
        zero = Fraction(0)
        return cls._wrap(tuple((zero,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, n: int) -> RationalMatrix:
        one, zero = Fraction(1), Fraction(0)
        return cls._wrap(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)), n)

    @classmethod
    def diagonal(cls, values: Sequence) -> RationalMatrix:
        vals = [to_fraction(v) for v in values]
        n = len(vals)
        zero = Fraction(0)
        return cls._wrap(tuple(tuple(vals[i] if i == j else zero for j in range(n)) for i in range(n)), n)

    @property
    def rows(self) -> tuple[Row, ...]:
        return self._rows

    @property
    def nrows(self) -> int:
        return self.shape[0]

    @property
    def ncols(self) -> int:
        return self.shape[1]

    def is_square(self) -> bool:
        return self.shape[0] == self.shape[1]

    def __getitem__(self, key):
        if isinstance(key, tuple):
            i, j = key
            return self._rows[i][j]
        return self._rows[key]

    def __iter__(self):
        return iter(self._rows)

    def __len__(self) -> int:
        return self.shape[0]

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalMatrix):
            return self.shape == other.shape and self._rows == other._rows
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.shape, self._rows))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self._rows)
        return f"RationalMatrix([{body}])"

    def _check_same_shape(self, other: RationalMatrix) -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: RationalMatrix) -> RationalMatrix:
        self._check_same_shape(other)
        return self._wrap(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)), self.ncols
        )

    def __sub__(self, other: RationalMatrix) -> RationalMatrix:
        self._check_same_shape(other)
        return self._wrap(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)), self.ncols
        )

    def __neg__(self) -> RationalMatrix:
        return self._wrap(tuple(tuple(-a for a in r) for r in self._rows), self.ncols)

    def scale(self, c) -> RationalMatrix:
        c = to_fraction(c)
        return self._wrap(tuple(tuple(c * a for a in r) for r in self._rows), self.ncols)

    def __matmul__(self, other: RationalMatrix) -> RationalMatrix:
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.T._rows
        zero = Fraction(0)
        out = []
        for r in self._rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append(tuple(sum((a * c[k] for k, a in nz), zero) for c in cols))
        return self._wrap(tuple(out), other.ncols)

    def matvec(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        if len(v) != self.ncols:
            raise ValueError("dimension mismatch")
        zero = Fraction(0)
        return tuple(sum((a * x for a, x in zip(r, v) if a), zero) for r in self._rows)

    def vecmat(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        return self.T.matvec(v)

    @property
    def T(self) -> RationalMatrix:
        if self.ncols == 0:
            return self._wrap((), self.nrows)
        if self.nrows == 0:
            return self._wrap(tuple(() for _ in range(self.ncols)), 0)
        return self._wrap(tuple(zip(*self._rows)), self.nrows)

    def trace(self) -> Fraction:
        if not self.is_square():
            raise ValueError("trace of a non-square matrix")
        return sum((self._rows[i][i] for i in range(self.nrows)), Fraction(0))

    def is_symmetric(self) -> bool:
        return self.is_square() and self == self.T

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for r in self._rows for x in r)

    def is_diagonal(self) -> bool:
        return all(x == 0 for i, r in enumerate(self._rows) for j, x in enumerate(r) if i != j)

    def row_sums(self) -> tuple[Fraction, ...]:
        return tuple(sum(r, Fraction(0)) for r in self._rows)

    def to_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self._rows]

    def to_strings(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self._rows]

    def det(self) -> Fraction:
        return determinant(self)

    def rref(self) -> tuple[RationalMatrix, tuple[int, ...]]:
        rows, pivots = rref(self._rows, self.ncols)
        return self._wrap(tuple(tuple(r) for r in rows), self.ncols), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> list[tuple[Fraction, ...]]:
        return nullspace(self)

    def left_nullspace(self) -> list[tuple[Fraction, ...]]:
        return nullspace(self.T)


def _bareiss_int(m: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination; ``m`` is consumed."""
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            f = ri[k]
            for j in range(k + 1, n):
                # exact division is the Bareiss guarantee
                ri[j] = (pivot * ri[j] - f * rk[j]) // prev
            ri[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def determinant(a: RationalMatrix) -> Fraction:
    """Exact determinant via Bareiss elimination on a denominator-cleared copy.

    The empty matrix has determinant 1.
    """
    if not a.is_square():
        raise ValueError("determinant of a non-square matrix")
    scale = Fraction(1)
    int_rows = []
    for row in a.rows:
        mult = lcm(*(x.denominator for x in row)) if row else 1
        scale *= mult
        int_rows.append([int(x * mult) for x in row])
    return Fraction(_bareiss_int(int_rows)) / scale


def rref(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[list[list[Fraction]], tuple[int, ...]]:
    """Reduced row echelon form with the leftmost-pivot rule.

    Zero rows are dropped from the result; returns ``(rows, pivot_columns)``.
    """
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            m[r] = [x / piv for x in m[r]]
        pr = m[r]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], pr)]
        pivots.append(c)
        r += 1
    return m[:r], tuple(pivots)


def nullspace(a: RationalMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of ``{x : a x = 0}``, itself in reduced row echelon form.

    The result is the unique RREF basis of the subspace, so it does not
    depend on the elimination path.
    """
    ncols = a.ncols
    reduced, pivots = rref(a.rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    one, zero = Fraction(1), Fraction(0)
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(v)
    if not basis:
        return []
    canon, _ = rref(basis, ncols)
    return [tuple(v) for v in canon]


def solve_rank_one_kernel(a: RationalMatrix) -> tuple[Fraction, ...]:
    """Return the single nullspace basis vector of ``a`` or raise ValueError."""
    basis = nullspace(a)
    if len(basis) != 1:
        raise ValueError(f"expected a one-dimensional nullspace, got dimension {len(basis)}")
    return basis[0]


def format_rational(x: Fraction) -> str:
    return str(x)
