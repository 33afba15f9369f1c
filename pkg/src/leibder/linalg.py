from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

Vector = Tuple[Fraction, ...]
Scalar = Union[Fraction, int, str]

RATIONAL_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


class ShapeError(ValueError):
    """Raised when matrix or vector shapes do not line up."""


def to_rational(value: Scalar) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"not an exact scalar: {value!r}")


def parse_rational(text: str) -> Fraction:
    """Parse ``p`` or ``p/q`` in decimal digits."""
    match = RATIONAL_RE.match(text)
    if not match:
        raise ValueError(f"not a rational: {text!r}")
    den = int(match.group(2)) if match.group(2) else 1
    if den == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(int(match.group(1)), den)


def format_rational(value: Fraction) -> str:
    """Always ``p/q``, so every string reconstructs the exact value."""
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class RatMatrix:
    rows: int
    cols: int
    entries: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ShapeError(f"negative shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise ShapeError(
                f"{len(self.entries)} entries do not fill a {self.rows}x{self.cols} matrix"
            )
        object.__setattr__(self, "entries", tuple(to_rational(x) for x in self.entries))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]], cols: int | None = None) -> RatMatrix:
        if not rows:
            return cls(0, cols or 0, ())
        width = len(rows[0])
        if cols is not None and cols != width:
            raise ShapeError(f"expected {cols} columns, got {width}")
        flat: List[Scalar] = []
        for r, row in enumerate(rows):
            if len(row) != width:
                raise ShapeError(f"row {r} has {len(row)} entries, expected {width}")
            flat.extend(row)
        return cls(len(rows), width, tuple(flat))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Scalar]]) -> RatMatrix:
        return cls.from_rows(columns).transpose()

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RatMatrix:
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> RatMatrix:
        return cls(n, n, tuple(Fraction(int(r == c)) for r in range(n) for c in range(n)))

    def at(self, r: int, c: int) -> Fraction:
        return self.entries[r * self.cols + c]

    def row(self, r: int) -> Vector:
        return self.entries[r * self.cols : (r + 1) * self.cols]

    def column(self, c: int) -> Vector:
        return tuple(self.entries[r * self.cols + c] for r in range(self.rows))

    def to_rows(self) -> List[List[Fraction]]:
        return [list(self.row(r)) for r in range(self.rows)]

    def transpose(self) -> RatMatrix:
        rows, cols = self.rows, self.cols
        flat = tuple(self.entries[r * cols + c] for c in range(cols) for r in range(rows))
        return RatMatrix(cols, rows, flat)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    def scale(self, k: Scalar) -> RatMatrix:
        k = to_rational(k)
        return RatMatrix(self.rows, self.cols, tuple(k * x for x in self.entries))

    def _check_same_shape(self, other: RatMatrix) -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError(
                f"shape {self.rows}x{self.cols} does not match {other.rows}x{other.cols}"
            )

    def __add__(self, other: RatMatrix) -> RatMatrix:
        self._check_same_shape(other)
        pairs = zip(self.entries, other.entries)
        return RatMatrix(self.rows, self.cols, tuple(a + b for a, b in pairs))

    def __sub__(self, other: RatMatrix) -> RatMatrix:
        self._check_same_shape(other)
        pairs = zip(self.entries, other.entries)
        return RatMatrix(self.rows, self.cols, tuple(a - b for a, b in pairs))

    def __neg__(self) -> RatMatrix:
        return self.scale(-1)

    def __matmul__(self, other: RatMatrix) -> RatMatrix:
        return matmul(self, other)


@dataclass(frozen=True)
class RrefResult:
    rref: RatMatrix
    rank: int
    pivot_cols: Tuple[int, ...]


def matmul(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    if a.cols != b.rows:
        raise ShapeError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    out: List[Fraction] = []
    for r in range(a.rows):
        row = a.row(r)
        for c in range(b.cols):
            terms = (row[k] * b.entries[k * b.cols + c] for k in range(a.cols) if row[k])
            out.append(sum(terms, Fraction(0)))
    return RatMatrix(a.rows, b.cols, tuple(out))


def matvec(a: RatMatrix, v: Sequence[Fraction]) -> Vector:
    if a.cols != len(v):
        raise ShapeError(f"cannot apply {a.rows}x{a.cols} matrix to a vector of length {len(v)}")
    return tuple(
        sum((x * y for x, y in zip(a.row(r), v) if x and y), Fraction(0)) for r in range(a.rows)
    )


def rref(m: RatMatrix) -> RrefResult:
    """Reduced row echelon form by plain rational Gauss-Jordan elimination.

    The pivot of each column is the first row at or below the current pivot row
    with a nonzero entry, so the result is bit-identical across runs.
    """
    work = m.to_rows()
    n_rows, n_cols = m.rows, m.cols
    pivot_cols: List[int] = []
    piv_r = 0
    for piv_c in range(n_cols):
        if piv_r == n_rows:
            break
        for i_row in range(piv_r, n_rows):
            if work[i_row][piv_c] != 0:
                break
        else:
            continue
        if i_row != piv_r:
            work[piv_r], work[i_row] = work[i_row], work[piv_r]
        fp = work[piv_r][piv_c]
        if fp != 1:
            work[piv_r] = [x / fp for x in work[piv_r]]
        pivot_row = work[piv_r]
        for r in range(n_rows):
            if r == piv_r:
                continue
            fr = work[r][piv_c]
            if fr == 0:
                continue
            work[r] = [x - fr * y if y else x for x, y in zip(work[r], pivot_row)]
        pivot_cols.append(piv_c)
        piv_r += 1
    flat = tuple(x for row in work for x in row)
    return RrefResult(RatMatrix(n_rows, n_cols, flat), len(pivot_cols), tuple(pivot_cols))


def reverse_columns(m: RatMatrix) -> RatMatrix:
    return RatMatrix.from_rows([list(reversed(m.row(r))) for r in range(m.rows)], cols=m.cols)


def rank(m: RatMatrix, *, reversed_columns: bool = False) -> int:
    """Rank, optionally eliminating with the column order reversed (independent pivot path)."""
    return rref(reverse_columns(m) if reversed_columns else m).rank


def nullity(m: RatMatrix, *, reversed_columns: bool = False) -> int:
    return m.cols - rank(m, reversed_columns=reversed_columns)


def nullspace(m: RatMatrix) -> List[Vector]:
    """Canonical free-column basis of {v : m v = 0}.

    Each vector holds 1 in its own free column and 0 in every other free column;
    free columns are the non-pivot columns in increasing order.
    """
    result = rref(m)
    pivots = set(result.pivot_cols)
    basis: List[Vector] = []
    for free in range(m.cols):
        if free in pivots:
            continue
        v = [Fraction(0)] * m.cols
        v[free] = Fraction(1)
        for r, p in enumerate(result.pivot_cols):
            v[p] = -result.rref.at(r, free)
        basis.append(tuple(v))
    return basis


def stack(vectors: Iterable[Sequence[Fraction]], length: int) -> RatMatrix:
    rows = [list(v) for v in vectors]
    for v in rows:
        if len(v) != length:
            raise ShapeError(f"vector of length {len(v)} in a span of length {length}")
    return RatMatrix(len(rows), length, tuple(x for v in rows for x in v))


def span_basis(vectors: Iterable[Sequence[Fraction]], length: int) -> List[Vector]:
    """Exact basis of the span: the nonzero rows of the rref of the stacked vectors."""
    result = rref(stack(vectors, length))
    return [result.rref.row(r) for r in range(result.rank)]


def in_span(
    vectors: Sequence[Sequence[Fraction]],
    candidate: Sequence[Fraction],
    *,
    reversed_columns: bool = False,
) -> bool:
    """Membership by comparing ranks with and without the candidate appended."""
    length = len(candidate)
    base = stack(vectors, length)
    augmented = stack(list(vectors) + [candidate], length)
    return rank(base, reversed_columns=reversed_columns) == rank(
        augmented, reversed_columns=reversed_columns
    )
