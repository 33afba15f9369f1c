from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from . import catalog
from .algebra import Algebra

DIM_RE = re.compile(r"\s*dim\s+(\d+)\s*$")
HEAD_RE = re.compile(r"\s*\[\s*e(\d+)\s*,\s*e(\d+)\s*\]\s*=")
SIGN_RE = re.compile(r"\s*([+-])")
TERM_RE = re.compile(r"\s*(?:(-)?\s*(\d+)(?:\s*/\s*(\d+))?\s*\*?\s*)?e(\d+)")

Terms = Tuple[Tuple[Fraction, int], ...]


class BracketTableError(ValueError):
    """Raised for malformed bracket tables; carries the 1-based line and column."""

    def __init__(self, line: int, column: int, reason: str, message: str) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.reason = reason


@dataclass(frozen=True)
class BracketTableDoc:
    dim: int
    products: Tuple[Tuple[int, int, Terms], ...]


def _strip_comment(line: str) -> str:
    cut = line.find("#")
    return line if cut < 0 else line[:cut]


def _first_char(text: str, start: int = 0) -> int:
    """1-based column of the first non-blank character at or after ``start``."""
    pos = start
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos + 1


def _parse_rhs(body: str, start: int, lineno: int, dim: int) -> Terms:
    terms: Dict[int, Fraction] = {}
    pos = start
    first = True
    while True:
        sign = 1
        match = SIGN_RE.match(body, pos)
        if match:
            sign = -1 if match.group(1) == "-" else 1
            pos = match.end()
        elif not first:
            break
        term = TERM_RE.match(body, pos)
        if not term:
            raise BracketTableError(
                lineno, _first_char(body, pos), "syntax", "expected a term like 2*e3 or e4"
            )
        minus, num, den, k = term.group(1), term.group(2), term.group(3), int(term.group(4))
        if den is not None and int(den) == 0:
            raise BracketTableError(lineno, term.start(3) + 1, "syntax", "zero denominator")
        coef = Fraction(int(num), int(den) if den else 1) if num else Fraction(1)
        if minus:
            coef = -coef
        if not 1 <= k <= dim:
            raise BracketTableError(
                lineno, term.start(4), "range", f"basis index e{k} outside 1..{dim}"
            )
        terms[k] = terms.get(k, Fraction(0)) + sign * coef
        pos = term.end()
        first = False
    if body[pos:].strip():
        raise BracketTableError(lineno, _first_char(body, pos), "syntax", "unexpected text")
    return tuple((c, k) for k, c in sorted(terms.items()) if c != 0)


def parse_document(text: str) -> BracketTableDoc:
    """Parse the bracket-table grammar.

    The first non-comment line is ``dim <n>``; every further line reads
    ``[e<i>,e<j>] = <term> (+|- <term>)*`` with ``<term> := [<rational>] [*] e<k>``,
    where ``<rational>`` is ``[-]p[/q]``.
    ``#`` starts a comment.
    """
    dim: Optional[int] = None
    seen: Dict[Tuple[int, int], int] = {}
    products: List[Tuple[int, int, Terms]] = []
    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = _strip_comment(raw)
        if not body.strip():
            continue
        if dim is None:
            match = DIM_RE.match(body)
            if not match:
                raise BracketTableError(
                    lineno, _first_char(body), "dim", "expected 'dim <n>' before any product"
                )
            dim = int(match.group(1))
            if dim < 1:
                raise BracketTableError(lineno, match.start(1) + 1, "dim", "dim must be >= 1")
            continue
        head = HEAD_RE.match(body)
        if not head:
            raise BracketTableError(
                lineno, _first_char(body), "syntax", "expected '[e<i>,e<j>] = ...'"
            )
        i, j = int(head.group(1)), int(head.group(2))
        for group, idx in ((1, i), (2, j)):
            if not 1 <= idx <= dim:
                raise BracketTableError(
                    lineno, head.start(group), "range", f"basis index e{idx} outside 1..{dim}"
                )
        if (i, j) in seen:
            raise BracketTableError(
                lineno,
                _first_char(body),
                "duplicate",
                f"[e{i},e{j}] already given on line {seen[(i, j)]}",
            )
        seen[(i, j)] = lineno
        products.append((i, j, _parse_rhs(body, head.end(), lineno, dim)))
    if dim is None:
        raise BracketTableError(max(lineno, 1), 1, "dim", "missing 'dim <n>' line")
    return BracketTableDoc(dim, tuple(products))


def parse_algebra(text: str, name: str = "algebra") -> Algebra:
    doc = parse_document(text)
    return Algebra.from_products(name, doc.dim, doc.products)


def _format_terms(terms: Terms) -> str:
    out = []
    for idx, (coef, k) in enumerate(terms):
        mag = abs(coef)
        body = f"e{k}" if mag == 1 else f"{mag} e{k}"
        if idx == 0:
            out.append(f"-{body}" if coef < 0 else body)
        else:
            out.append(f" - {body}" if coef < 0 else f" + {body}")
    return "".join(out)


def format_algebra(a: Algebra) -> str:
    lines = [f"# {a.name}", f"dim {a.dim}"]
    for i, j, terms in a.products():
        lines.append(f"[e{i},e{j}] = {_format_terms(terms)}")
    return "\n".join(lines) + "\n"


def load_source(src: str) -> Algebra:
    """``catalog:ID[(alpha)]`` or the path of a bracket-table file."""
    if catalog.is_catalog_ref(src):
        return catalog.resolve_ref(src)
    path = Path(src)
    return parse_algebra(path.read_text(encoding="utf-8"), name=path.stem)
