from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from .linalg import (
    RatMatrix,
    Scalar,
    ShapeError,
    Vector,
    matvec,
    nullspace,
    span_basis,
    to_rational,
)

logger = logging.getLogger(__name__)

# (i, j, [(coefficient, k), ...]) with 1-based indices: [e_i, e_j] = sum coefficient * e_k
Product = Tuple[int, int, Tuple[Tuple[Fraction, int], ...]]


@dataclass(frozen=True)
class Algebra:
    """Finite-dimensional algebra given by structure constants.

    ``gamma`` is the dense tensor gamma[i][j][k] flattened as ``(i * dim + j) * dim + k``
    with 0-based indices, i.e. the coordinate of e_k in [e_i, e_j].
    """

    name: str
    dim: int
    gamma: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ShapeError(f"algebra dimension must be at least 1, got {self.dim}")
        if len(self.gamma) != self.dim**3:
            raise ShapeError(
                f"structure tensor has {len(self.gamma)} entries, expected {self.dim ** 3}"
            )
        object.__setattr__(self, "gamma", tuple(to_rational(x) for x in self.gamma))

    @classmethod
    def from_products(
        cls,
        name: str,
        dim: int,
        products: Iterable[Tuple[int, int, Iterable[Tuple[Scalar, int]]]],
    ) -> Algebra:
        gamma = [Fraction(0)] * dim**3
        for i, j, terms in products:
            for coef, k in terms:
                for idx in (i, j, k):
                    if not 1 <= idx <= dim:
                        raise ShapeError(f"basis index e{idx} outside 1..{dim}")
                gamma[((i - 1) * dim + (j - 1)) * dim + (k - 1)] += to_rational(coef)
        return cls(name, dim, tuple(gamma))

    @classmethod
    def zero(cls, dim: int, name: str = "zero") -> Algebra:
        return cls(name, dim, (Fraction(0),) * dim**3)

    def structure_constant(self, i: int, j: int, k: int) -> Fraction:
        return self.gamma[(i * self.dim + j) * self.dim + k]

    def basis_vector(self, i: int) -> Vector:
        return tuple(Fraction(int(i == k)) for k in range(self.dim))

    def product(self, i: int, j: int) -> Vector:
        """Coordinates of [e_i, e_j] (0-based)."""
        start = (i * self.dim + j) * self.dim
        return self.gamma[start : start + self.dim]

    def products(self) -> List[Product]:
        """Nonzero products in (i, j) order, 1-based."""
        result: List[Product] = []
        for i in range(self.dim):
            for j in range(self.dim):
                terms = tuple(
                    (c, k + 1) for k, c in enumerate(self.product(i, j)) if c != 0
                )
                if terms:
                    result.append((i + 1, j + 1, terms))
        return result


@dataclass(frozen=True)
class Violation:
    i: int
    j: int
    k: int
    residual: Vector


@dataclass(frozen=True)
class IdentityReport:
    algebra: str
    holds: bool
    violations: Tuple[Violation, ...]
    # Leibniz identity holds and the bracket is skew
    lie: bool = False


@dataclass(frozen=True)
class SeriesReport:
    algebra: str
    dims: Tuple[int, ...]
    nilpotent: bool
    nil_index: Optional[int]


@dataclass(frozen=True)
class AnnihilatorReport:
    algebra: str
    left: Tuple[Vector, ...]
    right: Tuple[Vector, ...]
    lie: bool


def _check_length(a: Algebra, v: Sequence[Fraction]) -> None:
    if len(v) != a.dim:
        raise ShapeError(f"vector of length {len(v)} for an algebra of dimension {a.dim}")


def bracket(a: Algebra, x: Sequence[Scalar], y: Sequence[Scalar]) -> Vector:
    _check_length(a, x)
    _check_length(a, y)
    xs = [to_rational(v) for v in x]
    ys = [to_rational(v) for v in y]
    out = [Fraction(0)] * a.dim
    for i, xi in enumerate(xs):
        if xi == 0:
            continue
        for j, yj in enumerate(ys):
            if yj == 0:
                continue
            coef = xi * yj
            for k, g in enumerate(a.product(i, j)):
                if g:
                    out[k] += coef * g
    return tuple(out)


def _sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def check_leibniz(a: Algebra) -> IdentityReport:
    """Right Leibniz identity [x,[y,z]] = [[x,y],z] - [[x,z],y] on all basis triples."""
    e = [a.basis_vector(i) for i in range(a.dim)]
    violations: List[Violation] = []
    for i in range(a.dim):
        for j in range(a.dim):
            for k in range(a.dim):
                lhs = bracket(a, e[i], bracket(a, e[j], e[k]))
                rhs = _sub(
                    bracket(a, bracket(a, e[i], e[j]), e[k]),
                    bracket(a, bracket(a, e[i], e[k]), e[j]),
                )
                residual = _sub(lhs, rhs)
                if any(residual):
                    violations.append(Violation(i + 1, j + 1, k + 1, residual))
    if violations:
        logger.debug("%s: %d Leibniz identity violations", a.name, len(violations))
    holds = not violations
    return IdentityReport(a.name, holds, tuple(violations), lie=holds and is_lie(a))


def lower_central_series(a: Algebra) -> SeriesReport:
    """Descending series L^1 = L, L^(k+1) = [L^k, L]."""
    current = [a.basis_vector(i) for i in range(a.dim)]
    dims = [a.dim]
    while True:
        spanning = [
            bracket(a, u, a.basis_vector(j)) for u in current for j in range(a.dim)
        ]
        nxt = span_basis(spanning, a.dim)
        dims.append(len(nxt))
        if not nxt:
            return SeriesReport(a.name, tuple(dims), True, len(dims))
        if len(nxt) == len(current):
            return SeriesReport(a.name, tuple(dims), False, None)
        current = nxt


def is_lie(a: Algebra) -> bool:
    """Skew-symmetric bracket; together with the Leibniz identity this is a Lie algebra."""
    n = a.dim
    for i in range(n):
        if any(a.product(i, i)):
            return False
        for j in range(i + 1, n):
            if any(x + y for x, y in zip(a.product(i, j), a.product(j, i))):
                return False
    return True


def _annihilator(a: Algebra, *, left: bool) -> Tuple[Vector, ...]:
    n = a.dim
    rows = []
    for other in range(n):
        for k in range(n):
            if left:
                # [x, e_other] = 0
                rows.append([a.structure_constant(j, other, k) for j in range(n)])
            else:
                # [e_other, x] = 0
                rows.append([a.structure_constant(other, j, k) for j in range(n)])
    return tuple(nullspace(RatMatrix.from_rows(rows, cols=n)))


def left_annihilator(a: Algebra) -> Tuple[Vector, ...]:
    """Basis of {x : [x, L] = 0}."""
    return _annihilator(a, left=True)


def right_annihilator(a: Algebra) -> Tuple[Vector, ...]:
    """Basis of {x : [L, x] = 0}."""
    return _annihilator(a, left=False)


def annihilators(a: Algebra) -> AnnihilatorReport:
    return AnnihilatorReport(a.name, left_annihilator(a), right_annihilator(a), is_lie(a))


def is_morphism(source: Algebra, target: Algebra, f: RatMatrix) -> bool:
    """f[x, y] = [f x, f y] on basis pairs; column k of f is the image of e_k."""
    if (f.rows, f.cols) != (target.dim, source.dim):
        raise ShapeError(
            f"map is {f.rows}x{f.cols}, expected {target.dim}x{source.dim}"
        )
    images = [f.column(i) for i in range(source.dim)]
    for i in range(source.dim):
        for j in range(source.dim):
            lhs = matvec(f, source.product(i, j))
            if lhs != bracket(target, images[i], images[j]):
                return False
    return True
