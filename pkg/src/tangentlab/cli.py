"""Command-line driver.

    tangentlab verify FILE [--json] [--max-degree D] [--max-tangent-order K]
                           [--jobs N]
    tangentlab compute FILE [--json]

FILE may be `-` for stdin.  Exit codes: 0 all checks passed, 1 at least one
check failed or was not verified, 2 input error.
"""

from __future__ import annotations

import argparse
import sys

from .poly import DimensionError, ParseError
from .tangent import InputError
from .workspace import (RunOptions, WorkspaceError, emit_report,
                        parse_workspace, run_workspace)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tangentlab",
        description="Exact verification and computation over polynomial "
                    "tangent-bundle structure.")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run all directives of a workspace")
    verify.add_argument("file", help="workspace file, or - for stdin")
    verify.add_argument("--json", action="store_true", dest="as_json")
    verify.add_argument("--max-degree", type=int, default=2,
                        help="inverse-search degree bound (default 2)")
    verify.add_argument("--max-tangent-order", type=int, default=4,
                        help="bound on tangent iteration (default 4)")
    verify.add_argument("--jobs", type=int, default=1,
                        help="parallel workers for check directives")

    compute = sub.add_parser("compute",
                             help="run only the compute directives")
    compute.add_argument("file", help="workspace file, or - for stdin")
    compute.add_argument("--json", action="store_true", dest="as_json")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        source = _read_source(args.file)
    except OSError as exc:
        print(f"tangentlab: cannot read {args.file}: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    try:
        workspace = parse_workspace(source)
        if args.command == "verify":
            opts = RunOptions(max_degree=args.max_degree,
                              max_tangent_order=args.max_tangent_order,
                              jobs=max(1, args.jobs))
            report = run_workspace(workspace, opts)
        else:
            report = run_workspace(workspace, RunOptions(),
                                   computes_only=True)
    except (WorkspaceError, ParseError, DimensionError, InputError) as exc:
        print(f"tangentlab: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    fmt = "json" if args.as_json else "text"
    output = emit_report(report, fmt)
    sys.stdout.write(output)
    if not output.endswith("\n"):
        sys.stdout.write("\n")
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
