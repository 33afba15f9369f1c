from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import List, Mapping, Optional, Sequence, Tuple, Union

from . import catalog
from .algebra import Algebra, bracket
from .linalg import RatMatrix, ShapeError, Vector, in_span, matvec, nullity, nullspace

logger = logging.getLogger(__name__)

Element = Union[RatMatrix, Tuple[RatMatrix, RatMatrix]]


class SpaceKind(str, Enum):
    DER = "der"
    ANTIDER = "antider"
    BIDER = "bider"

    @property
    def label(self) -> str:
        return {"der": "Der", "antider": "AntiDer", "bider": "BiDer"}[self.value]


class SpaceKindError(ValueError):
    """Raised when an operation receives a space of the wrong kind."""


def unknown_label(prefix: str, r: int, c: int, n: int) -> str:
    """Name of the unknown at 1-based position (r, c): d31, or d3_10 once indices reach 10."""
    return f"{prefix}{r}{c}" if n < 10 else f"{prefix}{r}_{c}"


def latex_label(label: str) -> str:
    prefix, rest = label[0], label[1:]
    if "_" in rest:
        r, c = rest.split("_", 1)
        return f"{prefix}_{{{r},{c}}}"
    return f"{prefix}_{{{rest}}}"


def unknown_labels(kind: SpaceKind, n: int) -> Tuple[str, ...]:
    return tuple(
        unknown_label(p, r, c, n)
        for p in component_names(kind)
        for r in range(1, n + 1)
        for c in range(1, n + 1)
    )


@dataclass(frozen=True)
class LinearSystem:
    algebra: str
    kind: SpaceKind
    n: int
    matrix: RatMatrix
    unknown_labels: Tuple[str, ...]


def _der_row(a: Algebra, row: List[Fraction], i: int, j: int, t: int, offset: int) -> None:
    # d[e_i,e_j] - [d e_i, e_j] - [e_i, d e_j], coordinate t
    n = a.dim
    g = a.structure_constant
    for k in range(n):
        c = g(i, j, k)
        if c:
            row[offset + t * n + k] += c
        c = g(k, j, t)
        if c:
            row[offset + k * n + i] -= c
        c = g(i, k, t)
        if c:
            row[offset + k * n + j] -= c


def _antider_row(a: Algebra, row: List[Fraction], i: int, j: int, t: int, offset: int) -> None:
    # D[e_i,e_j] - [e_i, D e_j] + [e_j, D e_i], coordinate t
    n = a.dim
    g = a.structure_constant
    for k in range(n):
        c = g(i, j, k)
        if c:
            row[offset + t * n + k] += c
        c = g(i, k, t)
        if c:
            row[offset + k * n + j] -= c
        c = g(j, k, t)
        if c:
            row[offset + k * n + i] += c


def _coupling_row(a: Algebra, row: List[Fraction], i: int, j: int, t: int) -> None:
    # [d e_i, e_j] - [D e_i, e_j], coordinate t
    n = a.dim
    for k in range(n):
        c = a.structure_constant(k, j, t)
        if c:
            row[k * n + i] += c
            row[n * n + k * n + i] -= c


def _triples(n: int):
    return ((i, j, t) for i in range(n) for j in range(n) for t in range(n))


def build_der_system(a: Algebra) -> LinearSystem:
    n = a.dim
    rows = []
    for i, j, t in _triples(n):
        row = [Fraction(0)] * (n * n)
        _der_row(a, row, i, j, t, 0)
        rows.append(row)
    matrix = RatMatrix.from_rows(rows, cols=n * n)
    return LinearSystem(a.name, SpaceKind.DER, n, matrix, unknown_labels(SpaceKind.DER, n))


def build_antider_system(a: Algebra) -> LinearSystem:
    n = a.dim
    rows = []
    for i, j, t in _triples(n):
        row = [Fraction(0)] * (n * n)
        _antider_row(a, row, i, j, t, 0)
        rows.append(row)
    matrix = RatMatrix.from_rows(rows, cols=n * n)
    return LinearSystem(a.name, SpaceKind.ANTIDER, n, matrix, unknown_labels(SpaceKind.ANTIDER, n))


def build_bider_system(a: Algebra) -> LinearSystem:
    """Derivation block on d, antiderivation block on D, then the coupling block."""
    n = a.dim
    width = 2 * n * n
    rows = []
    for i, j, t in _triples(n):
        row = [Fraction(0)] * width
        _der_row(a, row, i, j, t, 0)
        rows.append(row)
    for i, j, t in _triples(n):
        row = [Fraction(0)] * width
        _antider_row(a, row, i, j, t, n * n)
        rows.append(row)
    for i, j, t in _triples(n):
        row = [Fraction(0)] * width
        _coupling_row(a, row, i, j, t)
        rows.append(row)
    matrix = RatMatrix.from_rows(rows, cols=width)
    return LinearSystem(a.name, SpaceKind.BIDER, n, matrix, unknown_labels(SpaceKind.BIDER, n))


_BUILDERS = {
    SpaceKind.DER: build_der_system,
    SpaceKind.ANTIDER: build_antider_system,
    SpaceKind.BIDER: build_bider_system,
}


def build_system(a: Algebra, kind: SpaceKind) -> LinearSystem:
    return _BUILDERS[SpaceKind(kind)](a)


@dataclass(frozen=True)
class SolutionSpace:
    algebra: str
    kind: SpaceKind
    n: int
    dim: int
    basis: Tuple[Element, ...]
    free_labels: Tuple[str, ...]
    vectors: Tuple[Vector, ...]
    unknown_labels: Tuple[str, ...]


def to_element(vector: Sequence[Fraction], kind: SpaceKind, n: int) -> Element:
    """Reshape a flat unknown vector (row-major d_rc, then D_rc) into matrices."""
    size = n * n
    if kind is SpaceKind.BIDER:
        return (RatMatrix(n, n, tuple(vector[:size])), RatMatrix(n, n, tuple(vector[size:])))
    return RatMatrix(n, n, tuple(vector))


def component_names(kind: SpaceKind) -> Tuple[str, ...]:
    if kind is SpaceKind.BIDER:
        return ("d", "D")
    return ("d",) if kind is SpaceKind.DER else ("D",)


def components(element: Element) -> Tuple[RatMatrix, ...]:
    return element if isinstance(element, tuple) else (element,)


def flatten(element: Element) -> Vector:
    return tuple(x for m in components(element) for x in m.entries)


def solve_space(system: LinearSystem) -> SolutionSpace:
    vectors = tuple(nullspace(system.matrix))
    # the designated free column is the last nonzero entry of a canonical basis vector
    free = [max(idx for idx, x in enumerate(v) if x != 0) for v in vectors]
    logger.debug(
        "%s %s: %d equations x %d unknowns, dim %d",
        system.algebra,
        system.kind.label,
        system.matrix.rows,
        system.matrix.cols,
        len(vectors),
    )
    return SolutionSpace(
        algebra=system.algebra,
        kind=system.kind,
        n=system.n,
        dim=len(vectors),
        basis=tuple(to_element(v, system.kind, system.n) for v in vectors),
        free_labels=tuple(system.unknown_labels[f] for f in free),
        vectors=vectors,
        unknown_labels=system.unknown_labels,
    )


@lru_cache(maxsize=512)
def compute_space(a: Algebra, kind: SpaceKind) -> SolutionSpace:
    return solve_space(build_system(a, kind))


def oracle_dimension(system: LinearSystem) -> int:
    """Nullity with the elimination run over the columns in reverse order."""
    return nullity(system.matrix, reversed_columns=True)


# --- general elements -------------------------------------------------------


@dataclass(frozen=True)
class LinearForm:
    terms: Tuple[Tuple[Fraction, str], ...]

    def evaluate(self, values: Mapping[str, Fraction]) -> Fraction:
        return sum((c * Fraction(values.get(name, 0)) for c, name in self.terms), Fraction(0))

    def render(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for idx, (coef, name) in enumerate(self.terms):
            mag = abs(coef)
            body = name if mag == 1 else f"{mag}*{name}"
            if idx == 0:
                out.append(f"-{body}" if coef < 0 else body)
            else:
                out.append(f" - {body}" if coef < 0 else f" + {body}")
        return "".join(out)

    def render_latex(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for idx, (coef, name) in enumerate(self.terms):
            mag = abs(coef)
            sym = latex_label(name)
            if mag == 1:
                body = sym
            elif mag.denominator == 1:
                body = f"{mag.numerator}{sym}"
            else:
                body = f"\\frac{{{mag.numerator}}}{{{mag.denominator}}}{sym}"
            if idx == 0:
                out.append(f"-{body}" if coef < 0 else body)
            else:
                out.append(f"-{body}" if coef < 0 else f"+{body}")
        return "".join(out)


Grid = Tuple[Tuple[LinearForm, ...], ...]


@dataclass(frozen=True)
class GeneralElement:
    algebra: str
    kind: SpaceKind
    n: int
    parameters: Tuple[str, ...]
    generators: Tuple[Vector, ...]
    grids: Tuple[Grid, ...]

    @property
    def component_names(self) -> Tuple[str, ...]:
        return component_names(self.kind)

    def substitute(self, values: Mapping[str, Fraction]) -> Tuple[RatMatrix, ...]:
        return tuple(
            RatMatrix(
                self.n,
                self.n,
                tuple(form.evaluate(values) for row in grid for form in row),
            )
            for grid in self.grids
        )


def _leading_parameters(sp: SolutionSpace) -> List[Tuple[str, Vector]]:
    leads = [min(idx for idx, x in enumerate(v) if x != 0) for v in sp.vectors]
    counts = Counter(leads)
    params = []
    for v, free_name, lead in zip(sp.vectors, sp.free_labels, leads):
        if counts[lead] == 1:
            pivot = v[lead]
            params.append((sp.unknown_labels[lead], tuple(x / pivot for x in v)))
        else:
            params.append((free_name, v))
    return params


def general_element(sp: SolutionSpace, style: str = "leading") -> GeneralElement:
    """One matrix (or pair) whose entries are linear forms in the free parameters.

    ``style="free"`` names each parameter after its free column and uses the
    canonical basis unchanged. ``style="leading"`` re-anchors each parameter on the
    earliest unknown it controls, scaled so that entry is 1, which is how the
    classification tables display their matrices; a name shared by two parameters
    falls back to the free-column name.
    """
    if style == "free":
        params = list(zip(sp.free_labels, sp.vectors))
    elif style == "leading":
        params = _leading_parameters(sp)
    else:
        raise ValueError(f"unknown parametrization style {style!r}")
    params.sort(key=lambda item: sp.unknown_labels.index(item[0]))

    forms = []
    for u in range(len(sp.unknown_labels)):
        forms.append(LinearForm(tuple((v[u], name) for name, v in params if v[u] != 0)))
    size = sp.n * sp.n
    grids = []
    for start in range(0, len(forms), size):
        block = forms[start : start + size]
        grids.append(tuple(tuple(block[r * sp.n : (r + 1) * sp.n]) for r in range(sp.n)))
    return GeneralElement(
        algebra=sp.algebra,
        kind=sp.kind,
        n=sp.n,
        parameters=tuple(name for name, _ in params),
        generators=tuple(v for _, v in params),
        grids=tuple(grids),
    )


def rebase(sp: SolutionSpace, el: GeneralElement) -> SolutionSpace:
    """The same space with its basis and free labels taken from ``el``.

    Afterwards setting parameter k to 1 and the others to 0 gives ``basis[k]``.
    """
    if el.kind is not sp.kind or el.n != sp.n or len(el.generators) != sp.dim:
        raise SpaceKindError(
            f"general element of {el.kind.label}({el.algebra}) does not parametrize "
            f"{sp.kind.label}({sp.algebra})"
        )
    return replace(
        sp,
        basis=tuple(to_element(v, sp.kind, sp.n) for v in el.generators),
        free_labels=el.parameters,
        vectors=el.generators,
    )


# --- definition-level verification -----------------------------------------


def _image(m: RatMatrix, v: Sequence[Fraction]) -> Vector:
    return matvec(m, v)


def derivation_defect(a: Algebra, d: RatMatrix) -> Optional[Tuple[int, int]]:
    """First basis pair (1-based) where d[x,y] != [dx,y] + [x,dy], or None."""
    e = [a.basis_vector(i) for i in range(a.dim)]
    for i in range(a.dim):
        for j in range(a.dim):
            lhs = _image(d, a.product(i, j))
            first = bracket(a, d.column(i), e[j])
            second = bracket(a, e[i], d.column(j))
            if lhs != tuple(x + y for x, y in zip(first, second)):
                return (i + 1, j + 1)
    return None


def antiderivation_defect(a: Algebra, D: RatMatrix) -> Optional[Tuple[int, int]]:
    """First basis pair where D[x,y] != [x,Dy] - [y,Dx], or None."""
    e = [a.basis_vector(i) for i in range(a.dim)]
    for i in range(a.dim):
        for j in range(a.dim):
            lhs = _image(D, a.product(i, j))
            first = bracket(a, e[i], D.column(j))
            second = bracket(a, e[j], D.column(i))
            if lhs != tuple(x - y for x, y in zip(first, second)):
                return (i + 1, j + 1)
    return None


def coupling_defect(a: Algebra, d: RatMatrix, D: RatMatrix) -> Optional[Tuple[int, int]]:
    """First basis pair where [dx,y] != [Dx,y], or None."""
    e = [a.basis_vector(i) for i in range(a.dim)]
    for i in range(a.dim):
        for j in range(a.dim):
            if bracket(a, d.column(i), e[j]) != bracket(a, D.column(i), e[j]):
                return (i + 1, j + 1)
    return None


@dataclass(frozen=True)
class Failure:
    # 1-based position in sp.basis; pair holds 1-based basis indices
    element: int
    condition: str
    pair: Tuple[int, int]


@dataclass(frozen=True)
class VerificationReport:
    algebra: str
    kind: SpaceKind
    ok: bool
    failures: Tuple[Failure, ...]


def verify_space(sp: SolutionSpace, a: Algebra) -> VerificationReport:
    if sp.n != a.dim:
        raise ShapeError(f"space of {sp.n}x{sp.n} matrices for an algebra of dimension {a.dim}")
    failures: List[Failure] = []
    for idx, element in enumerate(sp.basis):
        checks = []
        if sp.kind is SpaceKind.DER:
            checks.append(("derivation", derivation_defect(a, element)))
        elif sp.kind is SpaceKind.ANTIDER:
            checks.append(("antiderivation", antiderivation_defect(a, element)))
        else:
            d, D = element
            checks.append(("derivation", derivation_defect(a, d)))
            checks.append(("antiderivation", antiderivation_defect(a, D)))
            checks.append(("coupling", coupling_defect(a, d, D)))
        for condition, pair in checks:
            if pair is not None:
                failures.append(Failure(idx + 1, condition, pair))
    if failures:
        logger.warning(
            "%s %s: %d basis elements fail their definition",
            sp.algebra,
            sp.kind.label,
            len(failures),
        )
    return VerificationReport(sp.algebra, sp.kind, not failures, tuple(failures))


# --- closure ------------------------------------------------------------------


@dataclass(frozen=True)
class ClosureReport:
    algebra: str
    kind: SpaceKind
    closed: bool
    # 1-based positions in sp.basis
    witness: Optional[Tuple[int, int]]


def _require(sp: SolutionSpace, kind: SpaceKind, a: Algebra) -> None:
    if sp.kind is not kind:
        raise SpaceKindError(f"expected a {kind.label} space, got {sp.kind.label}")
    if sp.n != a.dim:
        raise ShapeError(f"space of {sp.n}x{sp.n} matrices for an algebra of dimension {a.dim}")


def commutator(x: RatMatrix, y: RatMatrix) -> RatMatrix:
    return x @ y - y @ x


def bider_bracket(
    first: Tuple[RatMatrix, RatMatrix], second: Tuple[RatMatrix, RatMatrix]
) -> Tuple[RatMatrix, RatMatrix]:
    """[(d,D),(d',D')] = (d d' - d' d, D d' - d' D)."""
    d, D = first
    d2, _ = second
    return (d @ d2 - d2 @ d, D @ d2 - d2 @ D)


def check_der_closure(
    sp: SolutionSpace, a: Algebra, *, reversed_columns: bool = False
) -> ClosureReport:
    _require(sp, SpaceKind.DER, a)
    for p in range(sp.dim):
        for q in range(p + 1, sp.dim):
            candidate = commutator(sp.basis[p], sp.basis[q]).entries
            if not in_span(sp.vectors, candidate, reversed_columns=reversed_columns):
                logger.warning(
                    "%s: commutator of basis %d and %d leaves Der", sp.algebra, p + 1, q + 1
                )
                return ClosureReport(sp.algebra, sp.kind, False, (p + 1, q + 1))
    return ClosureReport(sp.algebra, sp.kind, True, None)


def check_bider_closure(
    sp: SolutionSpace, a: Algebra, *, reversed_columns: bool = False
) -> ClosureReport:
    _require(sp, SpaceKind.BIDER, a)
    for p in range(sp.dim):
        for q in range(sp.dim):
            candidate = flatten(bider_bracket(sp.basis[p], sp.basis[q]))
            if not in_span(sp.vectors, candidate, reversed_columns=reversed_columns):
                logger.warning(
                    "%s: bracket of basis %d and %d leaves BiDer", sp.algebra, p + 1, q + 1
                )
                return ClosureReport(sp.algebra, sp.kind, False, (p + 1, q + 1))
    return ClosureReport(sp.algebra, sp.kind, True, None)


def check_closure(sp: SolutionSpace, a: Algebra) -> Optional[ClosureReport]:
    if sp.kind is SpaceKind.DER:
        return check_der_closure(sp, a)
    if sp.kind is SpaceKind.BIDER:
        return check_bider_closure(sp, a)
    return None


# --- projections ----------------------------------------------------------------


@dataclass(frozen=True)
class ProjectionReport:
    algebra: str
    bider_dim: int
    der_dim: int
    antider_dim: int
    bounded: bool
    d_in_der: bool
    D_in_antider: bool


def projection_report(
    bider: SolutionSpace, der: SolutionSpace, antider: SolutionSpace
) -> ProjectionReport:
    for sp, kind in ((bider, SpaceKind.BIDER), (der, SpaceKind.DER), (antider, SpaceKind.ANTIDER)):
        if sp.kind is not kind:
            raise SpaceKindError(f"expected a {kind.label} space, got {sp.kind.label}")
    d_in = all(in_span(der.vectors, d.entries) for d, _ in bider.basis)
    D_in = all(in_span(antider.vectors, D.entries) for _, D in bider.basis)
    return ProjectionReport(
        algebra=bider.algebra,
        bider_dim=bider.dim,
        der_dim=der.dim,
        antider_dim=antider.dim,
        bounded=bider.dim <= der.dim + antider.dim,
        d_in_der=d_in,
        D_in_antider=D_in,
    )


# --- parameter families -----------------------------------------------------------


@dataclass(frozen=True)
class GenericDimension:
    entry_id: str
    kind: SpaceKind
    dim: int
    per_sample: Tuple[Tuple[Fraction, int], ...]


def generic_dimension(
    entry_id: str, kind: SpaceKind, samples: Sequence[Fraction]
) -> GenericDimension:
    """Minimum nullity over the samples; specialization can only enlarge a nullspace."""
    if not catalog.entry(entry_id).parameterized:
        raise catalog.ParameterError(f"{entry_id} is not a parameterized family")
    if not samples:
        raise ValueError("generic dimension needs at least one sample")
    per_sample = tuple(
        (alpha, compute_space(catalog.get(entry_id, alpha), SpaceKind(kind)).dim)
        for alpha in samples
    )
    return GenericDimension(entry_id, SpaceKind(kind), min(d for _, d in per_sample), per_sample)


def special_values(
    entry_id: str,
    kind: SpaceKind,
    candidates: Sequence[Fraction],
    samples: Sequence[Fraction],
) -> Tuple[Tuple[Fraction, int], ...]:
    """Admissible candidates whose dimension exceeds the generic one."""
    generic = generic_dimension(entry_id, kind, samples).dim
    item = catalog.entry(entry_id)
    jumps = []
    for alpha in candidates:
        if not item.admits(Fraction(alpha)):
            continue
        dim = compute_space(catalog.get(entry_id, alpha), SpaceKind(kind)).dim
        if dim > generic:
            jumps.append((Fraction(alpha), dim))
    return tuple(jumps)

