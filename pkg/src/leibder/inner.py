from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Tuple

from .algebra import Algebra, bracket
from .linalg import RatMatrix, Scalar, ShapeError, Vector, in_span, span_basis, to_rational
from .solver import SpaceKind, compute_space

logger = logging.getLogger(__name__)


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class MultOperator:
    side: Side
    x: Vector
    matrix: RatMatrix


def mult_operator(a: Algebra, side: Side, x: Sequence[Scalar]) -> MultOperator:
    """Right: column j is [e_j, x]. Left: column j is [x, e_j]."""
    if len(x) != a.dim:
        raise ShapeError(f"vector of length {len(x)} for an algebra of dimension {a.dim}")
    vec = tuple(to_rational(v) for v in x)
    side = Side(side)
    columns = []
    for j in range(a.dim):
        e_j = a.basis_vector(j)
        columns.append(bracket(a, e_j, vec) if side is Side.RIGHT else bracket(a, vec, e_j))
    return MultOperator(side, vec, RatMatrix.from_columns(columns))


@dataclass(frozen=True)
class InnerDerivationReport:
    algebra: str
    basis: Tuple[RatMatrix, ...]
    contained: bool
    outside: Tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def inner_derivation_space(a: Algebra) -> InnerDerivationReport:
    """Span of the right multiplications, checked against Der(a) by membership."""
    operators = [mult_operator(a, Side.RIGHT, a.basis_vector(i)).matrix for i in range(a.dim)]
    size = a.dim * a.dim
    basis = tuple(
        RatMatrix(a.dim, a.dim, v) for v in span_basis((m.entries for m in operators), size)
    )
    der = compute_space(a, SpaceKind.DER)
    outside = tuple(
        i + 1 for i, m in enumerate(operators) if not in_span(der.vectors, m.entries)
    )
    if outside:
        logger.warning("%s: right multiplications by %s are not derivations", a.name, outside)
    return InnerDerivationReport(a.name, basis, not outside, outside)


class Convention(str, Enum):
    """Sign and side pairing for the candidate (d, D) built from x."""

    C1 = "c1"
    C2 = "c2"
    C3 = "c3"
    C4 = "c4"

    @property
    def description(self) -> str:
        return {
            "c1": "(-R_x, L_x)",
            "c2": "(R_x, L_x)",
            "c3": "(-L_x, R_x)",
            "c4": "(L_x, R_x)",
        }[self.value]

    def pair(self, a: Algebra, x: Sequence[Scalar]) -> Tuple[RatMatrix, RatMatrix]:
        right = mult_operator(a, Side.RIGHT, x).matrix
        left = mult_operator(a, Side.LEFT, x).matrix
        if self is Convention.C1:
            return (-right, left)
        if self is Convention.C2:
            return (right, left)
        if self is Convention.C3:
            return (-left, right)
        return (left, right)


@dataclass(frozen=True)
class InnerPairVerdict:
    index: int
    d: RatMatrix
    D: RatMatrix
    d_in_der: bool
    D_in_antider: bool
    member: bool


@dataclass(frozen=True)
class InnerBiderReport:
    algebra: str
    convention: Convention
    pairs: Tuple[InnerPairVerdict, ...]

    @property
    def all_members(self) -> bool:
        return all(p.member for p in self.pairs)


def inner_bider_pairs(
    a: Algebra, convention: Convention = Convention.C1, *, reversed_columns: bool = False
) -> InnerBiderReport:
    """Candidate pair for each basis vector, with measured membership in BiDer(a)."""
    convention = Convention(convention)
    der = compute_space(a, SpaceKind.DER)
    antider = compute_space(a, SpaceKind.ANTIDER)
    bider = compute_space(a, SpaceKind.BIDER)
    verdicts = []
    for i in range(a.dim):
        d, D = convention.pair(a, a.basis_vector(i))
        verdicts.append(
            InnerPairVerdict(
                index=i + 1,
                d=d,
                D=D,
                d_in_der=in_span(der.vectors, d.entries, reversed_columns=reversed_columns),
                D_in_antider=in_span(
                    antider.vectors, D.entries, reversed_columns=reversed_columns
                ),
                member=in_span(
                    bider.vectors, d.entries + D.entries, reversed_columns=reversed_columns
                ),
            )
        )
    logger.debug(
        "%s %s: %d of %d candidates in BiDer",
        a.name,
        convention.value,
        sum(v.member for v in verdicts),
        len(verdicts),
    )
    return InnerBiderReport(a.name, convention, tuple(verdicts))


def convention_table(a: Algebra) -> Tuple[InnerBiderReport, ...]:
    return tuple(inner_bider_pairs(a, c) for c in Convention)
