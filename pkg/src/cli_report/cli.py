"""
cli.py

Command-line front end.

    python -m src.cli_report.cli verify --p 3 --n 1 --json
    python -m src.cli_report.cli grid --p 2..5 --n 1..3 --no-embedding --csv summary.csv
    python -m src.cli_report.cli enumerate --p 3 --n 2
    python -m src.cli_report.cli embed --p 2 --n 1 --margin 2
    python -m src.cli_report.cli dinv --p 7 --q 2 --check-oracle
    python -m src.cli_report.cli dinv --p 7 --q 2 --label 3 --json

Exit codes: 0 when nothing failed (skips included), 1 when a check failed,
2 for usage errors. Logs go to stderr so that --json output stays clean.
"""

import argparse
import json
import logging
import sys
from typing import List, Optional

from src.cli_report.verification import (
    CHECK_GROUPS,
    FAIL,
    ReportError,
    VerifyOptions,
    export_summary_csv,
    grid,
    grid_to_json,
    summary_table,
    validate_parameters,
    verify,
)
from src.exact_core.rational import format_rational
from src.floer_arith.lens_spaces import LensSpace, d_invariant_lens, recursion_matches_oracle
from src.floer_arith.spinc import FloerArithmeticError, SpinCLabel
from src.plumbing_lattice.embedding import DEFAULT_NODE_BUDGET, NO_EMBEDDING, SearchBudgetExceeded, donaldson_obstruction
from src.plumbing_lattice.graphs import LatticeError
from src.seifert_slopes.sign_vectors import enumerate_candidates, filter_histogram, upper_bound
from src.seifert_slopes.slopes import SlopeError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

USAGE_ERRORS = (ReportError, FloerArithmeticError, LatticeError, SlopeError)


def parse_range(text: str) -> range:
    """Inclusive range from "A..B" or a single integer "A"; B < A gives an empty range."""
    try:
        if ".." in text:
            low, high = text.split("..", 1)
            return range(int(low), int(high) + 1)
        value = int(text)
        return range(value, value + 1)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an integer or a range A..B, got {text!r}") from exc


def parse_checks(text: str) -> tuple:
    groups = tuple(g.strip() for g in text.split(",") if g.strip())
    unknown = [g for g in groups if g not in CHECK_GROUPS]
    if unknown:
        raise argparse.ArgumentTypeError(f"unknown check group(s) {unknown}; choose from {', '.join(CHECK_GROUPS)}")
    return groups


def _add_search_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--margin", type=int, default=0, help="Search in Z^(rank + margin) (default: 0).")
    parser.add_argument(
        "--budget", type=int, default=DEFAULT_NODE_BUDGET, help=f"Embedding search node budget (default: {DEFAULT_NODE_BUDGET})."
    )
    parser.add_argument("--workers", type=int, default=1, help="Worker processes (default: 1).")


def _add_verify_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--checks", type=parse_checks, default=None, help=f"Comma-separated check groups: {', '.join(CHECK_GROUPS)}."
    )
    parser.add_argument("--no-embedding", action="store_true", help="Skip the diagonal-embedding search.")
    _add_search_options(parser)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Exact verification of the (p, n) family computations.")
    parser.add_argument(
        "--log-level", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"], help="Log level (stderr)."
    )
    commands = parser.add_subparsers(dest="command", required=True)

    verify_parser = commands.add_parser("verify", help="Run every check for one (p, n).")
    verify_parser.add_argument("--p", type=int, required=True)
    verify_parser.add_argument("--n", type=int, required=True)
    verify_parser.add_argument("--json", action="store_true", help="Emit the JSON report.")
    _add_verify_options(verify_parser)

    grid_parser = commands.add_parser("grid", help="Run verify over a (p, n) grid.")
    grid_parser.add_argument("--p", type=parse_range, required=True, help="Range A..B.")
    grid_parser.add_argument("--n", type=parse_range, required=True, help="Range A..B.")
    grid_parser.add_argument("--json", action="store_true", help="Emit the JSON list of reports.")
    grid_parser.add_argument("--csv", default=None, help="Write the summary table to this CSV path.")
    _add_verify_options(grid_parser)

    enumerate_parser = commands.add_parser("enumerate", help="Sign-vector survivors and the upper bound.")
    enumerate_parser.add_argument("--p", type=int, required=True)
    enumerate_parser.add_argument("--n", type=int, required=True)
    enumerate_parser.add_argument("--json", action="store_true")

    embed_parser = commands.add_parser("embed", help="Diagonal-embedding search for build_W(p, n).")
    embed_parser.add_argument("--p", type=int, required=True)
    embed_parser.add_argument("--n", type=int, required=True)
    embed_parser.add_argument("--json", action="store_true")
    _add_search_options(embed_parser)

    dinv_parser = commands.add_parser("dinv", help="d-invariants of a lens space L(p, q).")
    dinv_parser.add_argument("--p", type=int, required=True)
    dinv_parser.add_argument("--q", type=int, required=True)
    dinv_parser.add_argument("--reverse", action="store_true", help="Use -L(p, q).")
    dinv_parser.add_argument("--label", type=int, default=None, help="Only the value at this label in Z/p.")
    dinv_parser.add_argument("--check-oracle", action="store_true", help="Compare with the plumbing oracle.")
    dinv_parser.add_argument("--json", action="store_true")
    return parser


def _options(args: argparse.Namespace) -> VerifyOptions:
    return VerifyOptions(
        checks=args.checks,
        embedding=not args.no_embedding,
        embedding_margin=args.margin,
        embedding_budget=args.budget,
        workers=args.workers,
    )


def _emit(document) -> None:
    print(json.dumps(document, sort_keys=True, indent=2))


def run_verify(args: argparse.Namespace) -> int:
    report = verify(args.p, args.n, _options(args))
    print(report.to_json() if args.json else report.render_text())
    return EXIT_FAILED if report.status == FAIL else EXIT_OK


def run_grid(args: argparse.Namespace) -> int:
    reports = grid(args.p, args.n, _options(args))
    if args.csv:
        export_summary_csv(reports, args.csv)
    if args.json:
        print(grid_to_json(reports))
    else:
        for report in reports:
            print(report.render_text())
        if reports:
            print(summary_table(reports).to_string(index=False))
    return EXIT_FAILED if any(r.status == FAIL for r in reports) else EXIT_OK


def run_enumerate(args: argparse.Namespace) -> int:
    survivors = enumerate_candidates(args.p, args.n)
    document = {
        "p": args.p,
        "n": args.n,
        "survivors": [[q.q1, q.q2, q.q3] for q in survivors],
        "histogram": filter_histogram(args.p, args.n),
        "bound": upper_bound(args.p, args.n),
    }
    if args.json:
        _emit(document)
    else:
        print(f"survivors ({len(survivors)}): " + ", ".join(str(tuple(q)) for q in document["survivors"]))
        print(f"upper bound: {document['bound']}")
    return EXIT_OK


def run_embed(args: argparse.Namespace) -> int:
    validate_parameters(args.p, args.n)
    try:
        verdict = donaldson_obstruction(args.p, args.n, margin=args.margin, budget=args.budget, workers=args.workers)
    except SearchBudgetExceeded:
        logger.warning("Budget of %d nodes exhausted; no verdict", args.budget)
        document = {"p": args.p, "n": args.n, "verdict": None, "status": "skipped", "reason": "budget"}
        if args.json:
            _emit(document)
        else:
            print("skipped: node budget exhausted")
        return EXIT_OK
    document = {
        "p": args.p,
        "n": args.n,
        "rank": verdict.rank,
        "dimension": verdict.dimension,
        "verdict": verdict.verdict,
        "certificate": verdict.certificate.to_dict(),
        "embedding": None if verdict.embedding is None else verdict.embedding.to_dict(),
    }
    if args.json:
        _emit(document)
    else:
        print(f"{verdict.verdict} (rank {verdict.rank} into Z^{verdict.dimension}, {verdict.certificate.node_count} nodes)")
        print(f"digest {verdict.certificate.digest}")
    return EXIT_OK if verdict.verdict == NO_EMBEDDING else EXIT_FAILED


def run_dinv(args: argparse.Namespace) -> int:
    lens = LensSpace(args.p, args.q, -1 if args.reverse else 1)
    labels = lens.labels() if args.label is None else [SpinCLabel(lens.p, args.label)]
    values = {label.c: d_invariant_lens(lens, label) for label in labels}
    mismatched = bool(args.check_oracle and recursion_matches_oracle([lens]))
    if args.json:
        document = {
            "p": lens.p,
            "q": lens.q,
            "orientation": lens.orientation,
            "d": {str(c): format_rational(v) for c, v in values.items()},
            "spin": [label.c for label in lens.spin_labels()],
        }
        if args.check_oracle:
            document["oracle_agrees"] = not mismatched
        _emit(document)
    else:
        for c, value in values.items():
            print(f"c={c}: {format_rational(value)}")
        if args.check_oracle:
            print("oracle: " + ("MISMATCH" if mismatched else "agrees"))
    return EXIT_FAILED if mismatched else EXIT_OK


COMMANDS = {
    "verify": run_verify,
    "grid": run_grid,
    "enumerate": run_enumerate,
    "embed": run_embed,
    "dinv": run_dinv,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=getattr(logging, args.log_level), stream=sys.stderr)
    try:
        return COMMANDS[args.command](args)
    except USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
