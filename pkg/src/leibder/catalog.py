from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .algebra import Algebra
from .linalg import Scalar, to_rational

CATALOG_PREFIX = "catalog:"
CATALOG_REF_RE = re.compile(r"^catalog:(L\d{1,2})(?:\(\s*(-?\d+(?:\s*/\s*\d+)?)\s*\))?$")
DIM = 4


class CatalogError(ValueError):
    """Raised for unknown catalog ids or malformed catalog references."""


class ParameterError(CatalogError):
    """Raised when alpha is missing for a family or given to a fixed algebra."""


class DomainError(CatalogError):
    """Raised when alpha lies outside the family's admissible set."""


class ParamConstraint(str, Enum):
    NONE = "none"
    ZERO_OR_ONE = "alpha in {0,1}"
    RATIONAL = "alpha in Q"
    NOT_ONE = "alpha in Q minus {1}"


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    param_constraint: ParamConstraint

    @property
    def parameterized(self) -> bool:
        return self.param_constraint is not ParamConstraint.NONE

    def admits(self, alpha: Fraction) -> bool:
        if self.param_constraint is ParamConstraint.ZERO_OR_ONE:
            return alpha in (0, 1)
        if self.param_constraint is ParamConstraint.NOT_ONE:
            return alpha != 1
        return self.param_constraint is ParamConstraint.RATIONAL


Terms = Tuple[Tuple[Fraction, int], ...]
Builder = Callable[[Optional[Fraction]], List[Tuple[int, int, Terms]]]


def _e(k: int, coef: Scalar = 1) -> Tuple[Fraction, int]:
    return (to_rational(coef), k)


# Products [e_i, e_j] of the 21 representatives; unlisted products vanish.
_BUILDERS: Dict[str, Builder] = {
    "L1": lambda a: [(1, 1, (_e(2),)), (2, 1, (_e(3),)), (3, 1, (_e(4),))],
    "L2": lambda a: [
        (1, 1, (_e(3),)), (1, 2, (_e(4),)), (2, 1, (_e(3),)), (3, 1, (_e(4),)),
    ],
    "L3": lambda a: [(1, 1, (_e(3),)), (2, 1, (_e(3),)), (3, 1, (_e(4),))],
    "L4": lambda a: [
        (1, 1, (_e(3),)), (1, 2, (_e(4, a),)), (2, 1, (_e(3),)), (2, 2, (_e(4),)),
        (3, 1, (_e(4),)),
    ],
    "L5": lambda a: [(1, 1, (_e(3),)), (1, 2, (_e(4),)), (3, 1, (_e(4),))],
    "L6": lambda a: [(1, 1, (_e(3),)), (2, 2, (_e(4),)), (3, 1, (_e(4),))],
    "L7": lambda a: [
        (1, 1, (_e(4),)), (1, 2, (_e(3, -1),)), (1, 3, (_e(4, -1),)), (2, 1, (_e(3),)),
        (3, 1, (_e(4),)),
    ],
    "L8": lambda a: [
        (1, 1, (_e(4),)), (1, 2, (_e(3, -1), _e(4))), (1, 3, (_e(4, -1),)),
        (2, 1, (_e(3),)), (3, 1, (_e(4),)),
    ],
    "L9": lambda a: [
        (1, 1, (_e(4),)), (1, 2, (_e(3, -1), _e(4, 2))), (1, 3, (_e(4, -1),)),
        (2, 1, (_e(3),)), (2, 2, (_e(4),)), (3, 1, (_e(4),)),
    ],
    "L10": lambda a: [
        (1, 1, (_e(4),)), (1, 2, (_e(3, -1),)), (1, 3, (_e(4, -1),)), (2, 1, (_e(3),)),
        (2, 2, (_e(4),)), (3, 1, (_e(4),)),
    ],
    "L11": lambda a: [
        (1, 1, (_e(4),)), (1, 2, (_e(3),)), (2, 1, (_e(3, -1),)),
        (2, 2, (_e(3, -2), _e(4))),
    ],
    "L12": lambda a: [(1, 2, (_e(3),)), (2, 1, (_e(4),)), (2, 2, (_e(3, -1),))],
    "L13": lambda a: [
        (1, 1, (_e(3),)), (1, 2, (_e(4),)), (2, 1, (_e(3, -a),)), (2, 2, (_e(4, -1),)),
    ],
    "L14": lambda a: [
        (1, 1, (_e(4),)), (1, 2, (_e(4, a),)), (2, 1, (_e(4, -a),)), (2, 2, (_e(4),)),
        (3, 3, (_e(4),)),
    ],
    "L15": lambda a: [
        (1, 2, (_e(4),)), (1, 3, (_e(4),)), (2, 1, (_e(4, -1),)), (2, 2, (_e(4),)),
        (3, 1, (_e(4),)),
    ],
    "L16": lambda a: [
        (1, 1, (_e(4),)), (1, 2, (_e(4),)), (2, 1, (_e(4, -1),)), (3, 3, (_e(4),)),
    ],
    "L17": lambda a: [(1, 2, (_e(3),)), (2, 1, (_e(4),))],
    "L18": lambda a: [(1, 2, (_e(3),)), (2, 1, (_e(3, -1),)), (2, 2, (_e(4),))],
    "L19": lambda a: [(2, 1, (_e(4),)), (2, 2, (_e(3),))],
    "L20": lambda a: [
        (1, 2, (_e(4),)), (2, 1, (_e(4, (1 + a) / (1 - a)),)), (2, 2, (_e(3),)),
    ],
    "L21": lambda a: [(1, 2, (_e(4),)), (2, 1, (_e(4, -1),)), (3, 3, (_e(4),))],
}

_CONSTRAINTS: Dict[str, ParamConstraint] = {
    "L4": ParamConstraint.ZERO_OR_ONE,
    "L13": ParamConstraint.RATIONAL,
    "L14": ParamConstraint.RATIONAL,
    "L20": ParamConstraint.NOT_ONE,
}

ENTRIES: Tuple[CatalogEntry, ...] = tuple(
    CatalogEntry(entry_id, _CONSTRAINTS.get(entry_id, ParamConstraint.NONE))
    for entry_id in _BUILDERS
)
_BY_ID = {entry.id: entry for entry in ENTRIES}


def list_entries() -> List[CatalogEntry]:
    return list(ENTRIES)


def entry(entry_id: str) -> CatalogEntry:
    try:
        return _BY_ID[entry_id]
    except KeyError:
        raise CatalogError(f"unknown catalog id {entry_id!r} (expected L1..L21)") from None


def check_alpha(entry_id: str, alpha: Optional[Scalar]) -> Optional[Fraction]:
    """Validate alpha for an entry and return it as an exact rational."""
    item = entry(entry_id)
    if not item.parameterized:
        if alpha is not None:
            raise ParameterError(f"{entry_id} takes no parameter")
        return None
    if alpha is None:
        raise ParameterError(f"{entry_id} needs a parameter ({item.param_constraint.value})")
    value = to_rational(alpha)
    if not item.admits(value):
        raise DomainError(f"{entry_id}: alpha = {value} violates {item.param_constraint.value}")
    return value


def algebra_name(entry_id: str, alpha: Optional[Fraction]) -> str:
    return entry_id if alpha is None else f"{entry_id}({alpha})"


def get(entry_id: str, alpha: Optional[Scalar] = None) -> Algebra:
    value = check_alpha(entry_id, alpha)
    return Algebra.from_products(algebra_name(entry_id, value), DIM, _BUILDERS[entry_id](value))


def is_catalog_ref(src: str) -> bool:
    return src.startswith(CATALOG_PREFIX)


def parse_ref(src: str) -> Tuple[str, Optional[Fraction]]:
    """Split ``catalog:L20(2/3)`` into ``("L20", Fraction(2, 3))``."""
    match = CATALOG_REF_RE.match(src.strip())
    if not match:
        raise CatalogError(
            f"malformed catalog reference {src!r} (expected catalog:L7 or catalog:L20(2/3))"
        )
    alpha = to_rational(match.group(2).replace(" ", "")) if match.group(2) else None
    return match.group(1), alpha


def resolve_ref(src: str) -> Algebra:
    entry_id, alpha = parse_ref(src)
    return get(entry_id, alpha)


def default_samples(
    entry_id: str, generic: Sequence[Fraction], restricted: Sequence[Fraction]
) -> Tuple[Fraction, ...]:
    """Samples for a family: the restricted set for {0,1} families, generic values otherwise."""
    item = entry(entry_id)
    if item.param_constraint is ParamConstraint.ZERO_OR_ONE:
        return tuple(restricted)
    return tuple(a for a in generic if item.admits(a))
