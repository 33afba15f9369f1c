from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .algebra import annihilators, check_leibniz, lower_central_series
from .config import Settings, ensure_parent_dir, parse_samples
from .inner import Convention, inner_bider_pairs, inner_derivation_space
from .parser import format_algebra, load_source
from .report import (
    FORMATS,
    InnerReport,
    ShowReport,
    SolveReport,
    StructureReport,
    cmd_table,
    render,
)
from .solver import (
    SpaceKind,
    build_system,
    check_closure,
    compute_space,
    general_element,
    oracle_dimension,
    rebase,
    verify_space,
)

logger = logging.getLogger(__name__)

SRC_HELP = "bracket-table file or catalog:ID[(alpha)], e.g. catalog:L20(2/3)"


def _joined(samples: Sequence[Fraction]) -> str:
    return ",".join(str(x) for x in samples)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(1, f"error: {message}\n")


def build_parser(settings: Settings) -> argparse.ArgumentParser:
    parser = _Parser(
        prog="leibder",
        description="Derivations, antiderivations and biderivations of algebras "
        "given by structure constants, in exact rational arithmetic.",
    )
    parser.add_argument(
        "--format", choices=FORMATS, default=settings.DEFAULT_FORMAT, help="Report format"
    )
    parser.add_argument("--output", type=Path, help="Write the report to this file")
    parser.add_argument("--log-level", default=settings.LOG_LEVEL, help="Logging level name")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="Verify the right Leibniz identity")
    p.add_argument("src", help=SRC_HELP)

    p = sub.add_parser("solve", help="Solve for Der, AntiDer or BiDer")
    p.add_argument("src", help=SRC_HELP)
    p.add_argument("--space", choices=[k.value for k in SpaceKind], required=True)
    p.add_argument(
        "--style",
        choices=("leading", "free"),
        default="leading",
        help="Parameter naming of the general element",
    )

    p = sub.add_parser("series", help="Descending series, nil-index and annihilators")
    p.add_argument("src", help=SRC_HELP)

    p = sub.add_parser("inner", help="Inner derivations and inner biderivation candidates")
    p.add_argument("src", help=SRC_HELP)
    p.add_argument(
        "--convention", choices=[c.value for c in Convention], default=Convention.C1.value
    )

    p = sub.add_parser("table", help="Recompute a published dimension table")
    p.add_argument("--which", type=int, choices=(1, 2, 3), required=True)
    # env defaults are already cleaned of malformed items
    p.add_argument("--alpha-samples", default=_joined(settings.alpha_samples()))
    p.add_argument("--l4-samples", default=_joined(settings.l4_alpha_samples()))
    p.add_argument("--workers", type=int, default=settings.TABLE_WORKERS)

    p = sub.add_parser("show", help="Print an algebra in bracket-table form")
    p.add_argument("src", help=SRC_HELP)
    return parser


def _run(args: argparse.Namespace) -> tuple[object, int]:
    if args.command == "table":
        samples = parse_samples(args.alpha_samples, strict=True)
        l4 = parse_samples(args.l4_samples, strict=True)
        if not samples or not l4:
            raise ValueError("alpha samples must list at least one rational")
        report = cmd_table(args.which, alpha_samples=samples, l4_samples=l4, workers=args.workers)
        return report, report.exit_code

    a = load_source(args.src)
    if args.command == "check":
        identity = check_leibniz(a)
        return identity, 0 if identity.holds else 1
    if args.command == "series":
        return StructureReport(lower_central_series(a), annihilators(a)), 0
    if args.command == "show":
        return ShowReport(a.name, format_algebra(a), annihilators(a)), 0

    if not check_leibniz(a).holds:
        logger.warning("%s does not satisfy the Leibniz identity", a.name)
    if args.command == "inner":
        pairs = inner_bider_pairs(a, Convention(args.convention))
        return InnerReport(inner_derivation_space(a), pairs), 0

    kind = SpaceKind(args.space)
    canonical = compute_space(a, kind)
    element = general_element(canonical, style=args.style)
    space = rebase(canonical, element)
    report = SolveReport(
        space=space,
        element=element,
        oracle_dim=oracle_dimension(build_system(a, kind)),
        verification=verify_space(space, a),
        closure=check_closure(space, a),
    )
    return report, 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        settings = Settings()
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    args = build_parser(settings).parse_args(argv)
    level = logging.getLevelName(str(args.log_level).upper())
    logging.basicConfig(
        level=level if isinstance(level, int) else settings.log_level(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    try:
        result, code = _run(args)
        document = render(result, args.format)
        if args.output:
            ensure_parent_dir(args.output)
            args.output.write_text(document, encoding="utf-8")
        else:
            sys.stdout.write(document)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return code


if __name__ == "__main__":
    raise SystemExit(main())
