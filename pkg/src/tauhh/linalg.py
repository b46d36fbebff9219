"""Exact dense linear algebra over the rationals and over prime fields.

Scalars are ``fractions.Fraction`` over Q and small nonnegative ints over
F_p.  All structural computations (reduced echelon forms, kernels) run in
exact arithmetic.  Rank-only queries on large matrices are routed through the
int64 kernels in :mod:`tauhh._kernels` and fall back to exact arithmetic
whenever the kernels report possible overflow, so results never depend on
which lane ran.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import _kernels

_MODP_KERNEL_MAX_P = 1 << 20


class Field:
    """Common interface for the two coefficient fields."""

    characteristic: int

    def of(self, x):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one


class RationalField(Field):
    characteristic = 0

    def __init__(self):
        self._zero = Fraction(0)
        self._one = Fraction(1)

    def of(self, x):
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def __repr__(self):
        return "QQ"


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self._zero = 0
        self._one = 1 % p

    def of(self, x):
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(
                    f"denominator {x.denominator} vanishes mod {self.p}"
                )
            return (x.numerator % self.p) * pow(den, -1, self.p) % self.p
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()
_PRIME_FIELDS: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    """The prime field with p elements (instances are cached)."""
    f = _PRIME_FIELDS.get(p)
    if f is None:
        f = _PRIME_FIELDS[p] = PrimeField(p)
    return f


def field_name(field: Field) -> str:
    return "Q" if field.characteristic == 0 else f"F{field.characteristic}"


def field_from_name(name: str) -> Field:
    """Parse a field label: "q"/"Q" or "fp:<prime>" / "F<prime>"."""
    s = name.strip().lower()
    if s == "q":
        return QQ
    for prefix in ("fp:", "f"):
        if s.startswith(prefix) and s[len(prefix) :].isdigit():
            return GF(int(s[len(prefix) :]))
    raise ValueError(f"unrecognized field {name!r} (expected q or fp:<prime>)")


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix tagged with its field.

    Entries are stored row-major as a tuple of row tuples; every entry is a
    scalar of the tagged field.
    """

    field: Field
    entries: tuple

    @staticmethod
    def from_rows(field: Field, rows: Iterable[Iterable]) -> "Matrix":
        norm = tuple(tuple(field.of(x) for x in row) for row in rows)
        widths = {len(r) for r in norm}
        if len(widths) > 1:
            raise ValueError("rows have differing lengths")
        return Matrix(field, norm)

    @staticmethod
    def zero(field: Field, rows: int, cols: int) -> "Matrix":
        z = field.zero
        return Matrix(field, tuple(tuple(z for _ in range(cols)) for _ in range(rows)))

    @staticmethod
    def identity(field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return Matrix(
            field, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n))
        )

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, tuple(zip(*self.entries)) if self.entries else ())

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.nrows}x{self.ncols})"


@dataclass(frozen=True)
class EchelonForm:
    """Reduced row echelon form with its pivot columns.

    Pivot entries are 1 and are the only nonzero entries in their columns;
    pivot columns increase strictly down the rows.
    """

    matrix: Matrix
    pivots: tuple
    rank: int


def _rref_rows(field: Field, rows: list[list]) -> tuple[list[list], list[int]]:
    """In-place reduced row echelon form; returns (rows, pivot columns).

    Deterministic: pivots are chosen leftmost column first, topmost nonzero
    row within the column.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][col] != field.zero:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.inv(rows[r][col])
        if inv != field.one:
            rows[r] = [field.mul(inv, x) for x in rows[r]]
        for i in range(nrows):
            if i != r:
                f = rows[i][col]
                if f != field.zero:
                    rows[i] = [
                        field.sub(x, field.mul(f, y)) for x, y in zip(rows[i], rows[r])
                    ]
        pivots.append(col)
        r += 1
    return rows, pivots


def echelonize(m: Matrix) -> EchelonForm:
    """Reduced row echelon form of m (exact, deterministic)."""
    rows = [list(r) for r in m.entries]
    rows, pivots = _rref_rows(m.field, rows)
    out = Matrix(m.field, tuple(tuple(r) for r in rows))
    return EchelonForm(out, tuple(pivots), len(pivots))


def kernel_basis(m: Matrix) -> list[tuple]:
    """Basis of the right kernel {v : m v = 0}, ordered by free column.

    Each basis vector has entry 1 at its free column, the back-substituted
    values at the pivot columns, and 0 at the other free columns.
    """
    field = m.field
    ncols = m.ncols
    ech = echelonize(m)
    pivots = list(ech.pivots)
    pivot_row = {c: i for i, c in enumerate(pivots)}
    free = [c for c in range(ncols) if c not in pivot_row]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for pc, ri in pivot_row.items():
            v[pc] = field.neg(ech.matrix.entries[ri][fc])
        basis.append(tuple(v))
    return basis


def rank(m: Matrix) -> int:
    """Rank of m, via the fast lane when applicable, exact otherwise."""
    return rank_of_rows(m.field, [list(r) for r in m.entries])


def cokernel_dim(m: Matrix) -> int:
    """Dimension of the cokernel of m as a map with m.nrows target dims."""
    return m.nrows - rank(m)


def solution_space_dim(m: Matrix) -> int:
    """Dimension of the right kernel of m."""
    return m.ncols - rank(m)


# ---------------------------------------------------------------------------
# row-level helpers (no Matrix wrapper; used by the heavier modules)


def _rank_exact(field: Field, rows: list[list]) -> int:
    """Forward elimination over the field; counts pivots."""
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][col] != field.zero:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        pval = prow[col]
        for i in range(r + 1, nrows):
            f = rows[i][col]
            if f != field.zero:
                c = field.mul(f, field.inv(pval))
                rows[i] = [field.sub(x, field.mul(c, y)) for x, y in zip(rows[i], prow)]
        r += 1
    return r


def _int64_rows_from_rational(rows: Sequence[Sequence[Fraction]]):
    """Clear denominators per row and bound entries; None if too large."""
    out = np.zeros((len(rows), len(rows[0]) if rows else 0), dtype=np.int64)
    limit = 1 << 40
    for i, row in enumerate(rows):
        den = 1
        for x in row:
            d = x.denominator
            if d != 1:
                den = den * d // math.gcd(den, d)
        for j, x in enumerate(row):
            v = x.numerator * (den // x.denominator)
            if abs(v) > limit:
                return None
            out[i, j] = v
    return out


def rank_of_rows(field: Field, rows: list[list]) -> int:
    """Rank of a list-of-lists matrix; fast int64 lane with exact fallback."""
    if not rows or not rows[0]:
        return 0
    if field.characteristic == 0:
        arr = _int64_rows_from_rational(rows)
        if arr is not None:
            r = _kernels.rank_int64(arr)
            if r >= 0:
                return r
        return _rank_exact(field, [list(r) for r in rows])
    if field.characteristic <= _MODP_KERNEL_MAX_P:
        arr = np.array([[int(x) for x in row] for row in rows], dtype=np.int64)
        return _kernels.rank_modp(arr, field.characteristic)
    return _rank_exact(field, [list(r) for r in rows])


def rank_from_entries(
    field: Field, nrows: int, ncols: int, items: Iterable[tuple[int, int, object]]
) -> int:
    """Rank of a sparse-specified matrix (row, col, scalar) without building
    Python rows when the int64 lane applies."""
    if nrows == 0 or ncols == 0:
        return 0
    if field.characteristic == 0:
        by_row: dict[int, list[tuple[int, Fraction]]] = {}
        for r, c, v in items:
            by_row.setdefault(r, []).append((c, v))
        arr = np.zeros((nrows, ncols), dtype=np.int64)
        limit = 1 << 40
        ok = True
        for r, ents in by_row.items():
            den = 1
            for _, v in ents:
                d = v.denominator
                if d != 1:
                    den = den * d // math.gcd(den, d)
            for c, v in ents:
                iv = v.numerator * (den // v.denominator)
                if abs(iv) > limit:
                    ok = False
                    break
                arr[r, c] += iv
            if not ok:
                break
        if ok:
            got = _kernels.rank_int64(arr)
            if got >= 0:
                return got
        rows = [[field.zero] * ncols for _ in range(nrows)]
        for r, ents in by_row.items():
            for c, v in ents:
                rows[r][c] = field.add(rows[r][c], v)
        return _rank_exact(field, rows)
    p = field.characteristic
    if p <= _MODP_KERNEL_MAX_P:
        arr = np.zeros((nrows, ncols), dtype=np.int64)
        for r, c, v in items:
            arr[r, c] = (arr[r, c] + int(v)) % p
        return _kernels.rank_modp(arr, p)
    rows = [[field.zero] * ncols for _ in range(nrows)]
    for r, c, v in items:
        rows[r][c] = field.add(rows[r][c], v)
    return _rank_exact(field, rows)


class RowReducer:
    """Incremental reduced row echelon form over a fixed column count.

    Vectors are fed in one at a time; the reducer keeps its rows fully
    reduced (pivot entries 1, pivot columns otherwise clear), so at any
    point the rows are a canonical basis of the span of everything added.
    """

    def __init__(self, field: Field, ncols: int):
        self.field = field
        self.ncols = ncols
        self.rows: list[list] = []
        self.pivots: list[int] = []
        self._pivot_col_to_row: dict[int, int] = {}

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Sequence) -> list:
        """Reduce a vector by the current rows; returns the residue."""
        field = self.field
        v = list(vec)
        for col, ri in self._pivot_col_to_row.items():
            f = v[col]
            if f != field.zero:
                row = self.rows[ri]
                v = [field.sub(x, field.mul(f, y)) for x, y in zip(v, row)]
        return v

    def add(self, vec: Sequence):
        """Add a vector to the span.  Returns the new pivot column or None."""
        field = self.field
        v = self.reduce(vec)
        piv = None
        for col in range(self.ncols):
            if v[col] != field.zero:
                piv = col
                break
        if piv is None:
            return None
        inv = field.inv(v[piv])
        if inv != field.one:
            v = [field.mul(inv, x) for x in v]
        # clear the new pivot column in the existing rows
        for i, row in enumerate(self.rows):
            f = row[piv]
            if f != field.zero:
                self.rows[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(row, v)]
        self.rows.append(v)
        self.pivots.append(piv)
        self._pivot_col_to_row[piv] = len(self.rows) - 1
        return piv

    def contains(self, vec: Sequence) -> bool:
        v = self.reduce(vec)
        return all(x == self.field.zero for x in v)

    def coordinates(self, vec: Sequence):
        """Coefficients of vec over the current rows, or None if outside.

        Because rows are reduced, the coefficient of row i is the entry of
        vec at that row's pivot column.
        """
        field = self.field
        coeffs = [vec[c] for c in self.pivots]
        v = list(vec)
        for f, row in zip(coeffs, self.rows):
            if f != field.zero:
                v = [field.sub(x, field.mul(f, y)) for x, y in zip(v, row)]
        if any(x != field.zero for x in v):
            return None
        return coeffs
