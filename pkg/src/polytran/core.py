"""Polytope instances, exact rational matrices and constraint evaluation.

Everything here works on :class:`fractions.Fraction`; there is no floating
point path. Indices are 0-based throughout the library.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import DimensionMismatch, InvalidSpec

Cell = tuple[int, int]

ROW = "row"
COL = "col"


class Line(NamedTuple):
    """A row or a column of a matrix."""

    axis: str
    index: int

    def __str__(self):
        return f"{self.axis} {self.index}"


def to_fraction(value) -> Fraction:
    """Convert an int, Fraction or rational string ("0.5", "1/3") exactly."""
    if isinstance(value, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational number: {value!r}") from exc
    if isinstance(value, float):
        raise TypeError(
            f"float {value!r} rejected; pass a string such as '0.5' to keep values exact")
    raise TypeError(f"cannot interpret {value!r} as a rational number")


def _int_vector(name: str, values: Iterable, length: int) -> tuple[int, ...]:
    out = []
    for v in values:
        if isinstance(v, bool) or not isinstance(v, int):
            raise InvalidSpec(f"{name} must contain integers, got {v!r}")
        if v < 0:
            raise InvalidSpec(f"{name} must be non-negative, got {v}")
        out.append(v)
    if len(out) != length:
        raise InvalidSpec(f"{name} has length {len(out)}, expected {length}")
    return tuple(out)


@dataclass(frozen=True)
class BoundsSpec:
    """Integral row/column sum bounds defining U (or U^k when ``k`` is set).

    ``row_min``/``row_max`` bound each row sum, ``col_min``/``col_max`` each
    column sum; ``k`` optionally fixes the total sum of the matrix.
    """

    n: int
    m: int
    row_min: tuple[int, ...]
    row_max: tuple[int, ...]
    col_min: tuple[int, ...]
    col_max: tuple[int, ...]
    k: Optional[int] = None

    def __post_init__(self):
        for name in ("n", "m"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int) or v < 1:
                raise InvalidSpec(f"{name} must be a positive integer, got {v!r}")
        object.__setattr__(self, "row_min", _int_vector("r", self.row_min, self.n))
        object.__setattr__(self, "row_max", _int_vector("R", self.row_max, self.n))
        object.__setattr__(self, "col_min", _int_vector("c", self.col_min, self.m))
        object.__setattr__(self, "col_max", _int_vector("C", self.col_max, self.m))
        for i, (lo, hi) in enumerate(zip(self.row_min, self.row_max)):
            if lo > hi:
                raise InvalidSpec(f"row {i}: r={lo} exceeds R={hi}")
        for j, (lo, hi) in enumerate(zip(self.col_min, self.col_max)):
            if lo > hi:
                raise InvalidSpec(f"column {j}: c={lo} exceeds C={hi}")
        if self.k is not None:
            if isinstance(self.k, bool) or not isinstance(self.k, int):
                raise InvalidSpec(f"k must be an integer or None, got {self.k!r}")
            total_r, total_c = sum(self.row_max), sum(self.col_max)
            if not (0 < self.k <= total_r and self.k <= total_c):
                raise InvalidSpec(
                    f"k={self.k} makes the polytope trivially empty: need "
                    f"0 < k <= sum(R)={total_r} and k <= sum(C)={total_c}")

    @classmethod
    def from_bounds(cls, r, R, c, C, k=None) -> "BoundsSpec":
        r, R, c, C = list(r), list(R), list(c), list(C)
        return cls(len(r), len(c), tuple(r), tuple(R), tuple(c), tuple(C), k)

    @classmethod
    def doubly_stochastic(cls, n: int, with_k: bool = True) -> "BoundsSpec":
        ones = (1,) * n
        return cls(n, n, ones, ones, ones, ones, n if with_k else None)

    @classmethod
    def substochastic(cls, n: int, m: int, k: Optional[int] = None) -> "BoundsSpec":
        return cls(n, m, (0,) * n, (1,) * n, (0,) * m, (1,) * m, k)

    def with_k(self, k: Optional[int]) -> "BoundsSpec":
        return BoundsSpec(self.n, self.m, self.row_min, self.row_max,
                          self.col_min, self.col_max, k)

    def line_bounds(self, line: Line) -> tuple[int, int]:
        if line.axis == ROW:
            return self.row_min[line.index], self.row_max[line.index]
        return self.col_min[line.index], self.col_max[line.index]


@dataclass(frozen=True)
class TransportMatrix:
    """Dense n x m matrix of exact rationals; equality is entrywise."""

    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(to_fraction(x) for x in row) for row in self.entries)
        if not rows or not rows[0]:
            raise DimensionMismatch("matrix must have at least one row and one column")
        width = len(rows[0])
        for i, row in enumerate(rows):
            if len(row) != width:
                raise DimensionMismatch(
                    f"ragged matrix: row {i} has {len(row)} entries, row 0 has {width}")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "TransportMatrix":
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def zeros(cls, n: int, m: int) -> "TransportMatrix":
        return cls(((Fraction(0),) * m,) * n)

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def m(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.n, self.m

    def __getitem__(self, cell: Cell) -> Fraction:
        i, j = cell
        return self.entries[i][j]

    def cells(self):
        for i in range(self.n):
            for j in range(self.m):
                yield i, j

    def line(self, line: Line) -> tuple[Fraction, ...]:
        if line.axis == ROW:
            return self.entries[line.index]
        return tuple(row[line.index] for row in self.entries)

    def to_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(x) for x in r) + "]"
                               for r in self.entries) + "]"


def as_matrix(value) -> TransportMatrix:
    if isinstance(value, TransportMatrix):
        return value
    return TransportMatrix.from_rows(value)


def linear_combination(terms: Iterable[tuple[Fraction, TransportMatrix]]) -> TransportMatrix:
    """Return sum(w * M) over ``terms``; all matrices must share a shape."""
    acc = None
    shape = None
    for w, mat in terms:
        if shape is None:
            shape = mat.shape
            acc = [[Fraction(0)] * mat.m for _ in range(mat.n)]
        elif mat.shape != shape:
            raise DimensionMismatch(f"cannot combine {mat.shape} with {shape}")
        for i, row in enumerate(mat.entries):
            acc_row = acc[i]
            for j, x in enumerate(row):
                if x:
                    acc_row[j] += w * x
    if acc is None:
        raise ValueError("empty combination")
    return TransportMatrix.from_rows(acc)


def row_sums(A: TransportMatrix) -> tuple[Fraction, ...]:
    return tuple(sum(row, Fraction(0)) for row in A.entries)


def col_sums(A: TransportMatrix) -> tuple[Fraction, ...]:
    return tuple(sum(col, Fraction(0)) for col in zip(*A.entries))


def line_sum(A: TransportMatrix, line: Line) -> Fraction:
    return sum(A.line(line), Fraction(0))


def sigma(A: TransportMatrix) -> Fraction:
    return sum(row_sums(A), Fraction(0))


def is_fractional(x: Fraction) -> bool:
    return 0 < x < 1


def is_integral(A: TransportMatrix) -> bool:
    return all(x == 0 or x == 1 for row in A.entries for x in row)


def fractional_support(A: TransportMatrix) -> frozenset[Cell]:
    """Cells holding a value strictly between 0 and 1."""
    return frozenset((i, j) for i, row in enumerate(A.entries)
                     for j, x in enumerate(row) if is_fractional(x))


def fractional_lines(A: TransportMatrix) -> tuple[frozenset[int], frozenset[int]]:
    """Rows and columns owning at least one fractional cell."""
    support = fractional_support(A)
    return frozenset(i for i, _ in support), frozenset(j for _, j in support)


def non_integral_lines(A: TransportMatrix) -> list[Line]:
    out = [Line(ROW, i) for i, s in enumerate(row_sums(A)) if s.denominator != 1]
    out += [Line(COL, j) for j, s in enumerate(col_sums(A)) if s.denominator != 1]
    return out


def potential(A: TransportMatrix) -> int:
    """Fractional cells plus lines whose sum is not an integer.

    Every split performed by the decomposer strictly lowers this value.
    """
    return len(fractional_support(A)) + len(non_integral_lines(A))


@dataclass(frozen=True)
class MembershipReport:
    is_member: bool
    entry_violations: tuple = ()
    row_violations: tuple = ()
    col_violations: tuple = ()
    sigma_violation: Optional[tuple[Fraction, int]] = None
    diagnostics: tuple[str, ...] = field(default=(), compare=False)

    def __bool__(self):
        return self.is_member


def _check_shape(A: TransportMatrix, spec: BoundsSpec):
    if A.shape != (spec.n, spec.m):
        raise DimensionMismatch(
            f"matrix has shape {A.n}x{A.m} but spec expects {spec.n}x{spec.m}")


def check_membership(A: TransportMatrix, spec: BoundsSpec) -> MembershipReport:
    """Report every violated constraint of U(spec) (or U^k(spec)).

    Violations carry a ``bound_violated`` tag: ``"min"`` or ``"max"``.
    """
    _check_shape(A, spec)
    notes = []
    entries = []
    for i, j in A.cells():
        x = A[i, j]
        if x < 0 or x > 1:
            entries.append((i, j, x))
            notes.append(f"entry ({i},{j}) = {x} outside [0,1]")
    rows = []
    for i, s in enumerate(row_sums(A)):
        if s < spec.row_min[i]:
            rows.append((i, s, "min"))
            notes.append(f"row {i} sum {s} < {spec.row_min[i]}")
        elif s > spec.row_max[i]:
            rows.append((i, s, "max"))
            notes.append(f"row {i} sum {s} > {spec.row_max[i]}")
    cols = []
    for j, s in enumerate(col_sums(A)):
        if s < spec.col_min[j]:
            cols.append((j, s, "min"))
            notes.append(f"column {j} sum {s} < {spec.col_min[j]}")
        elif s > spec.col_max[j]:
            cols.append((j, s, "max"))
            notes.append(f"column {j} sum {s} > {spec.col_max[j]}")
    sig = None
    if spec.k is not None:
        total = sigma(A)
        if total != spec.k:
            sig = (total, spec.k)
            notes.append(f"total sum {total} != k = {spec.k}")
    ok = not (entries or rows or cols or sig)
    return MembershipReport(ok, tuple(entries), tuple(rows), tuple(cols), sig, tuple(notes))


def is_member(A: TransportMatrix, spec: BoundsSpec) -> bool:
    return check_membership(A, spec).is_member


def in_vertex_set(A: TransportMatrix, spec: BoundsSpec) -> bool:
    """Membership in P(spec) / P^k(spec): an integral member."""
    return is_integral(A) and check_membership(A, spec).is_member
