from __future__ import annotations

import asyncio
import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from . import catalog
from .algebra import AnnihilatorReport, IdentityReport, SeriesReport
from .inner import InnerBiderReport, InnerDerivationReport
from .linalg import RatMatrix, format_rational
from .published import ENTRY_IDS, PublishedTable, table
from .solver import (
    ClosureReport,
    GeneralElement,
    SolutionSpace,
    SpaceKind,
    VerificationReport,
    build_system,
    component_names,
    components,
    compute_space,
    oracle_dimension,
)

logger = logging.getLogger(__name__)

FORMATS = ("text", "json", "latex")


# --- table comparison -----------------------------------------------------------


@dataclass(frozen=True)
class ComparisonRow:
    entry_id: str
    alpha_used: Tuple[Fraction, ...]
    computed_dim: int
    oracle_dim: int
    published_dim: int
    match: bool
    note: str
    per_sample: Tuple[Tuple[Fraction, int], ...]

    @property
    def documented(self) -> bool:
        """A mismatch counts only when both elimination orders agree and a note explains it."""
        return self.match or (bool(self.note) and self.oracle_dim == self.computed_dim)

    @property
    def status(self) -> str:
        if self.match:
            return "match"
        return "documented" if self.documented else "MISMATCH"


@dataclass(frozen=True)
class RangeReport:
    kind: SpaceKind
    computed: Tuple[int, int]
    stated: Tuple[int, int]
    note: str

    @property
    def match(self) -> bool:
        return self.computed == self.stated


@dataclass(frozen=True)
class ComparisonReport:
    table: int
    kind: SpaceKind
    caption: str
    rows: Tuple[ComparisonRow, ...]
    range: RangeReport

    @property
    def undocumented(self) -> Tuple[ComparisonRow, ...]:
        return tuple(r for r in self.rows if not r.documented)

    @property
    def exit_code(self) -> int:
        if self.undocumented or not (self.range.match or self.range.note):
            return 2
        return 0


def range_report(published: PublishedTable, rows: Sequence[ComparisonRow]) -> RangeReport:
    dims = [r.computed_dim for r in rows]
    computed = (min(dims), max(dims))
    note = "" if computed == published.range else published.range_note
    return RangeReport(published.kind, computed, published.range, note)


def compare_entry(
    published: PublishedTable,
    entry_id: str,
    alpha_samples: Sequence[Fraction],
    l4_samples: Sequence[Fraction],
) -> ComparisonRow:
    kind = published.kind
    item = catalog.entry(entry_id)
    if item.parameterized:
        alphas: Tuple[Optional[Fraction], ...] = catalog.default_samples(
            entry_id, alpha_samples, l4_samples
        )
        if not alphas:
            raise ValueError(f"no admissible parameter samples for {entry_id}")
    else:
        alphas = (None,)

    dims: List[int] = []
    oracles: List[int] = []
    for alpha in alphas:
        a = catalog.get(entry_id, alpha)
        dims.append(compute_space(a, kind).dim)
        oracles.append(oracle_dimension(build_system(a, kind)))
    computed, oracle = min(dims), min(oracles)
    expected = published.dims[entry_id]
    used = tuple(a for a in alphas if a is not None)
    row = ComparisonRow(
        entry_id=entry_id,
        alpha_used=used,
        computed_dim=computed,
        oracle_dim=oracle,
        published_dim=expected,
        match=computed == expected,
        note=published.notes.get(entry_id, ""),
        per_sample=tuple(zip(used, dims)),
    )
    logger.info("%s %s: computed %d, published %d", entry_id, kind.label, computed, expected)
    if not row.documented:
        logger.warning(
            "%s %s: undocumented mismatch (computed %d, oracle %d, published %d)",
            entry_id,
            kind.label,
            computed,
            oracle,
            expected,
        )
    return row


async def _compare_all(
    published: PublishedTable,
    alpha_samples: Sequence[Fraction],
    l4_samples: Sequence[Fraction],
    workers: int,
) -> List[ComparisonRow]:
    sem = asyncio.Semaphore(max(1, workers))

    async def worker(entry_id: str) -> ComparisonRow:
        async with sem:
            return await asyncio.to_thread(
                compare_entry, published, entry_id, alpha_samples, l4_samples
            )

    return list(await asyncio.gather(*(worker(i) for i in ENTRY_IDS)))


def cmd_table(
    which: int,
    *,
    alpha_samples: Sequence[Fraction] = (Fraction(2), Fraction(3), Fraction(5)),
    l4_samples: Sequence[Fraction] = (Fraction(0), Fraction(1)),
    workers: int = 4,
) -> ComparisonReport:
    """Recompute all 21 dimensions of one table and compare them with the published values."""
    published = table(which)
    rows = asyncio.run(_compare_all(published, alpha_samples, l4_samples, workers))
    return ComparisonReport(
        table=which,
        kind=published.kind,
        caption=published.caption,
        rows=tuple(rows),
        range=range_report(published, rows),
    )


# --- bundles handed to render by the CLI ----------------------------------------------


@dataclass(frozen=True)
class SolveReport:
    space: SolutionSpace
    element: GeneralElement
    oracle_dim: int
    verification: VerificationReport
    closure: Optional[ClosureReport]


@dataclass(frozen=True)
class StructureReport:
    series: SeriesReport
    annihilators: AnnihilatorReport


@dataclass(frozen=True)
class InnerReport:
    derivations: InnerDerivationReport
    pairs: InnerBiderReport


@dataclass(frozen=True)
class ShowReport:
    algebra: str
    bracket_form: str
    annihilators: AnnihilatorReport


# --- text helpers ------------------------------------------------------------------


def _grid(cells: Sequence[Sequence[str]], indent: str = "  ") -> List[str]:
    if not cells:
        return [f"{indent}[ ]"]
    widths = [max(len(row[c]) for row in cells) for c in range(len(cells[0]))]
    return [
        indent + "[ " + "  ".join(cell.rjust(w) for cell, w in zip(row, widths)) + " ]"
        for row in cells
    ]


def _matrix_cells(m: RatMatrix) -> List[List[str]]:
    return [[str(x) for x in m.row(r)] for r in range(m.rows)]


def _json_matrix(m: RatMatrix) -> List[List[str]]:
    return [[format_rational(x) for x in m.row(r)] for r in range(m.rows)]


def _json_vector(v: Sequence[Fraction]) -> List[str]:
    return [format_rational(x) for x in v]


def _space_heading(kind: SpaceKind, algebra: str, dim: int) -> str:
    return f"{kind.label}({algebra}): dim {dim}"


# --- per-type emitters --------------------------------------------------------------


def _space_text(sp: SolutionSpace) -> str:
    lines = [_space_heading(sp.kind, sp.algebra, sp.dim)]
    names = component_names(sp.kind)
    for label, element in zip(sp.free_labels, sp.basis):
        lines.append(f"basis element ({label}):")
        for name, m in zip(names, components(element)):
            lines.append(f" {name} =")
            lines.extend(_grid(_matrix_cells(m)))
    return "\n".join(lines) + "\n"


def _space_json(sp: SolutionSpace) -> Dict[str, Any]:
    names = component_names(sp.kind)
    basis = []
    for element in sp.basis:
        comps = components(element)
        if len(comps) == 1:
            basis.append(_json_matrix(comps[0]))
        else:
            basis.append({n: _json_matrix(m) for n, m in zip(names, comps)})
    return {
        "algebra": sp.algebra,
        "space": sp.kind.value,
        "dim": sp.dim,
        "free": list(sp.free_labels),
        "basis": basis,
    }


def _element_text(el: GeneralElement) -> str:
    lines = [_space_heading(el.kind, el.algebra, len(el.parameters))]
    lines.append("parameters: " + (", ".join(el.parameters) if el.parameters else "none"))
    for name, grid in zip(el.component_names, el.grids):
        lines.append(f"{name} =")
        lines.extend(_grid([[form.render() for form in row] for row in grid]))
    return "\n".join(lines) + "\n"


def _element_json(el: GeneralElement) -> Dict[str, Any]:
    doc: Dict[str, Any] = {
        "algebra": el.algebra,
        "space": el.kind.value,
        "dim": len(el.parameters),
        "parameters": list(el.parameters),
    }
    for name, grid in zip(el.component_names, el.grids):
        doc[name] = [[form.render() for form in row] for row in grid]
    return doc


def _element_latex(el: GeneralElement) -> str:
    parts = []
    for name, grid in zip(el.component_names, el.grids):
        body = " \\\\\n".join(" & ".join(f.render_latex() for f in row) for row in grid)
        parts.append(f"{name} = \\begin{{pmatrix}}\n{body}\n\\end{{pmatrix}}")
    return "\\[\n" + ",\\quad\n".join(parts) + "\n\\]\n"


def _solve_text(rep: SolveReport) -> str:
    lines = [_element_text(rep.element).rstrip("\n")]
    lines.append(f"oracle dim (reversed columns): {rep.oracle_dim}")
    lines.append("definition check: " + ("ok" if rep.verification.ok else "FAILED"))
    for failure in rep.verification.failures:
        i, j = failure.pair
        lines.append(f"  basis {failure.element}: {failure.condition} fails on (e{i}, e{j})")
    if rep.closure is not None:
        verdict = "closed" if rep.closure.closed else f"not closed at basis {rep.closure.witness}"
        lines.append(f"bracket closure: {verdict}")
    return "\n".join(lines) + "\n"


def _solve_json(rep: SolveReport) -> Dict[str, Any]:
    doc = _element_json(rep.element)
    doc["oracle_dim"] = rep.oracle_dim
    doc["free"] = list(rep.space.free_labels)
    doc["basis"] = _space_json(rep.space)["basis"]
    doc["verified"] = rep.verification.ok
    doc["closed"] = None if rep.closure is None else rep.closure.closed
    return doc


def _identity_text(rep: IdentityReport) -> str:
    lines = [f"{rep.algebra}: Leibniz identity " + ("holds" if rep.holds else "FAILS")]
    for v in rep.violations:
        residual = ", ".join(str(x) for x in v.residual)
        lines.append(f"  (e{v.i}, e{v.j}, e{v.k}): residual ({residual})")
    lines.append(f"lie: {_yes(rep.lie)}")
    return "\n".join(lines) + "\n"


def _identity_json(rep: IdentityReport) -> Dict[str, Any]:
    return {
        "algebra": rep.algebra,
        "leibniz": rep.holds,
        "lie": rep.lie,
        "violations": [
            {"triple": [v.i, v.j, v.k], "residual": _json_vector(v.residual)}
            for v in rep.violations
        ],
    }


def _basis_text(vectors: Sequence[Sequence[Fraction]]) -> str:
    if not vectors:
        return "0"
    return ", ".join("(" + ", ".join(str(x) for x in v) + ")" for v in vectors)


def _annihilators_text(rep: AnnihilatorReport) -> List[str]:
    return [
        f"left annihilator: dim {len(rep.left)} span {_basis_text(rep.left)}",
        f"right annihilator: dim {len(rep.right)} span {_basis_text(rep.right)}",
        f"lie: {_yes(rep.lie)}",
    ]


def _annihilators_json(rep: AnnihilatorReport) -> Dict[str, Any]:
    return {
        "left_annihilator": [_json_vector(v) for v in rep.left],
        "right_annihilator": [_json_vector(v) for v in rep.right],
        "lie": rep.lie,
    }


def _series_text(rep: SeriesReport) -> List[str]:
    dims = ", ".join(str(d) for d in rep.dims)
    lines = [f"{rep.algebra}: descending series dims [{dims}]"]
    if rep.nilpotent:
        lines.append(f"nilpotent, index {rep.nil_index}")
    else:
        lines.append("not nilpotent")
    return lines


def _series_json(rep: SeriesReport) -> Dict[str, Any]:
    return {
        "algebra": rep.algebra,
        "series": list(rep.dims),
        "nilpotent": rep.nilpotent,
        "nil_index": rep.nil_index,
    }


def _structure_text(rep: StructureReport) -> str:
    return "\n".join(_series_text(rep.series) + _annihilators_text(rep.annihilators)) + "\n"


def _structure_json(rep: StructureReport) -> Dict[str, Any]:
    doc = _series_json(rep.series)
    doc.update(_annihilators_json(rep.annihilators))
    return doc


def _inner_text(rep: InnerReport) -> str:
    der = rep.derivations
    lines = [
        f"{der.algebra}: right multiplications span dim {der.dim}, "
        + ("inside Der" if der.contained else "outside Der for "
           + ", ".join(f"e{i}" for i in der.outside)),
        f"convention {rep.pairs.convention.value} {rep.pairs.convention.description}:",
    ]
    for v in rep.pairs.pairs:
        lines.append(
            f"  x = e{v.index}: d in Der {_yes(v.d_in_der)}, D in AntiDer "
            f"{_yes(v.D_in_antider)}, pair in BiDer {_yes(v.member)}"
        )
    return "\n".join(lines) + "\n"


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _inner_json(rep: InnerReport) -> Dict[str, Any]:
    der = rep.derivations
    return {
        "algebra": der.algebra,
        "inner_derivations": {
            "dim": der.dim,
            "basis": [_json_matrix(m) for m in der.basis],
            "contained": der.contained,
        },
        "convention": rep.pairs.convention.value,
        "pairs": [
            {
                "x": f"e{v.index}",
                "d": _json_matrix(v.d),
                "D": _json_matrix(v.D),
                "d_in_der": v.d_in_der,
                "D_in_antider": v.D_in_antider,
                "member": v.member,
            }
            for v in rep.pairs.pairs
        ],
    }


def _show_text(rep: ShowReport) -> str:
    return rep.bracket_form + "\n".join(_annihilators_text(rep.annihilators)) + "\n"


def _show_json(rep: ShowReport) -> Dict[str, Any]:
    doc: Dict[str, Any] = {"algebra": rep.algebra, "bracket_table": rep.bracket_form}
    doc.update(_annihilators_json(rep.annihilators))
    return doc


def _alpha_text(row: ComparisonRow) -> str:
    return ",".join(str(a) for a in row.alpha_used) if row.alpha_used else "-"


def _comparison_text(rep: ComparisonReport) -> str:
    lines = [rep.caption, ""]
    lines.append(f"{'id':<5} {'alpha':<7} {'computed':>8} {'oracle':>6} {'published':>9}  status")
    for r in rep.rows:
        lines.append(
            f"{r.entry_id:<5} {_alpha_text(r):<7} {r.computed_dim:>8} {r.oracle_dim:>6} "
            f"{r.published_dim:>9}  {r.status}"
        )
    noted = [r for r in rep.rows if r.note]
    if noted:
        lines.append("")
        lines.append("notes:")
        lines.extend(f"  {r.entry_id}: {r.note}" for r in noted)
    lines.append("")
    rng = rep.range
    lines.append(
        f"range: computed {rng.computed[0]}-{rng.computed[1]}, "
        f"published {rng.stated[0]}-{rng.stated[1]}"
        + ("" if rng.match else f" ({rng.note or 'MISMATCH'})")
    )
    return "\n".join(lines) + "\n"


def _comparison_json(rep: ComparisonReport) -> Dict[str, Any]:
    return {
        "table": rep.table,
        "space": rep.kind.value,
        "caption": rep.caption,
        "rows": [
            {
                "id": r.entry_id,
                "alpha_samples": _json_vector(r.alpha_used),
                "per_sample": [
                    {"alpha": format_rational(a), "dim": d} for a, d in r.per_sample
                ],
                "computed_dim": r.computed_dim,
                "oracle_dim": r.oracle_dim,
                "published_dim": r.published_dim,
                "match": r.match,
                "documented": r.documented,
                "note": r.note,
            }
            for r in rep.rows
        ],
        "range": {
            "computed": list(rep.range.computed),
            "published": list(rep.range.stated),
            "match": rep.range.match,
            "note": rep.range.note,
        },
    }


def _comparison_latex(rep: ComparisonReport) -> str:
    lines = [
        "\\begin{table}[ht]",
        "\\centering",
        "\\begin{tabular}{lcrr}",
        "\\toprule",
        f"$L$ & $\\alpha$ & dim {rep.kind.label}$(L)$ & published \\\\",
        "\\midrule",
    ]
    for r in rep.rows:
        mark = "" if r.match else "$^{*}$"
        alpha = f"${_alpha_text(r)}$" if r.alpha_used else "--"
        lines.append(
            f"$L_{{{r.entry_id[1:]}}}$ & {alpha} & {r.computed_dim}{mark} & {r.published_dim} \\\\"
        )
    lines += [
        "\\bottomrule",
        "\\end{tabular}",
        f"\\caption{{{rep.caption}}}",
        "\\end{table}",
    ]
    return "\n".join(lines) + "\n"


def _verbatim(text: str) -> str:
    return "\\begin{verbatim}\n" + text + "\\end{verbatim}\n"


_EMITTERS = {
    SolutionSpace: (_space_text, _space_json, None),
    GeneralElement: (_element_text, _element_json, _element_latex),
    SolveReport: (_solve_text, _solve_json, lambda rep: _element_latex(rep.element)),
    IdentityReport: (_identity_text, _identity_json, None),
    SeriesReport: (lambda rep: "\n".join(_series_text(rep)) + "\n", _series_json, None),
    StructureReport: (_structure_text, _structure_json, None),
    InnerReport: (_inner_text, _inner_json, None),
    ShowReport: (_show_text, _show_json, None),
    ComparisonReport: (_comparison_text, _comparison_json, _comparison_latex),
}


def render(result: Any, fmt: str = "text") -> str:
    """Deterministic text, JSON or LaTeX document for any report object."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r} (expected text, json or latex)")
    try:
        text_fn, json_fn, latex_fn = _EMITTERS[type(result)]
    except KeyError:
        raise TypeError(f"nothing to render for {type(result).__name__}") from None
    if fmt == "json":
        return json.dumps(json_fn(result), indent=2, ensure_ascii=False) + "\n"
    if fmt == "latex":
        return latex_fn(result) if latex_fn else _verbatim(text_fn(result))
    return text_fn(result)
