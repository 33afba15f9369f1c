"""Published dimensions for the 21 four-dimensional nilpotent Leibniz algebras.

Rows where exact elimination disagrees with the printed value carry a note. A note is
only added after the forward and reversed elimination orders agree on the computed
value and the disagreement has been traced by hand.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

from .solver import SpaceKind

ENTRY_IDS: Tuple[str, ...] = tuple(f"L{i}" for i in range(1, 22))


@dataclass(frozen=True)
class PublishedTable:
    which: int
    kind: SpaceKind
    caption: str
    dims: Dict[str, int]
    range: Tuple[int, int]
    notes: Dict[str, str]
    range_note: str = ""


def _dims(values: Tuple[int, ...]) -> Dict[str, int]:
    return dict(zip(ENTRY_IDS, values))


TABLES: Dict[int, PublishedTable] = {
    1: PublishedTable(
        which=1,
        kind=SpaceKind.DER,
        caption="Derivations of four-dimensional nilpotent complex Leibniz algebras.",
        dims=_dims((4, 4, 5, 3, 5, 4, 5, 5, 5, 4, 5, 5, 5, 4, 5, 5, 6, 7, 7, 7, 7)),
        range=(3, 7),
        notes={
            "L1": "printed entry (4,2) reads d41; the derivation equations force d31 there",
            "L7": "both b3 and b4 stay free in the printed matrix, so its own parameters count 6",
            "L14": "d43 is unconstrained and the diagonal is k*E, giving 5",
        },
    ),
    2: PublishedTable(
        which=2,
        kind=SpaceKind.ANTIDER,
        caption="AntiDerivations of four-dimensional nilpotent complex Leibniz algebras.",
        dims=_dims((3, 5, 6, 5, 5, 5, 7, 6, 6, 6, 7, 6, 6, 9, 9, 9, 8, 8, 6, 6, 10)),
        range=(3, 10),
        notes={
            "L7": "the printed matrix displays 6 parameters against a stated dimension of 7",
            "L11": "the constraint D12 = D21 is missing from the printed solution",
            "L21": "the constraint D23 = D31 is missing from the printed solution",
        },
        range_note="computed maximum is 9; the stated 10 comes from the L21 row",
    ),
    3: PublishedTable(
        which=3,
        kind=SpaceKind.BIDER,
        caption="Biderivations of four-dimensional nilpotent complex Leibniz algebras.",
        dims=_dims((3, 5, 5, 5, 7, 5, 5, 6, 6, 6, 8, 8, 8, 4, 7, 7, 10, 11, 12, 10, 9)),
        range=(3, 12),
        notes={
            "L3": "the printed matrix pair itself carries 6 free parameters",
            "L7": "the coupling leaves 7 free parameters once the L7 Der row is corrected",
            "L14": "d43, D43 and the shared diagonal parameter stay free, giving 7",
        },
    ),
}


def table(which: int) -> PublishedTable:
    try:
        return TABLES[which]
    except KeyError:
        raise ValueError(f"unknown table {which} (expected 1, 2 or 3)") from None
