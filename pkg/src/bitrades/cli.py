"""Command-line interface.

Exit codes: 0 success / all pass / found, 1 check failed or nothing found
(exhaustively) or infeasible parameters, 2 usage error, 3 parse error,
4 degenerate input, 5 search incomplete within budget, 70 the checkers
disagreed (a bug).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import fileformat
from .checkers import EquivalenceViolation, Status, check, check_all
from .codes import extended_perfect_code, shifted_bitrade
from .hamming import ParameterError, Params, SignedPair, project_pair
from .search import SearchConfig, backtrack_search, feasible_params
from .spectral import eigen_index_for

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PARSE, EXIT_DEGENERATE, EXIT_INCOMPLETE = 0, 1, 2, 3, 4, 5
EXIT_BUG = 70


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _emit(text: str, path):
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_bytes(text.encode("utf-8"))


def _parse_shift(text: str):
    a, sep, i = text.partition("@")
    if not sep:
        raise ParameterError(f"shift must look like <a>@<i>, got {text!r}")
    return int(a), int(i)


def cmd_check(args) -> int:
    params, pair = fileformat.read_bitrade(args.file)
    if args.definition == "all":
        report = check_all(pair)
        text = fileformat.format_report(params, pair, report)
        status = report.status
    else:
        verdict = check(pair, args.definition)
        text = fileformat.format_report(params, pair, [verdict])
        status = verdict.status
    sys.stdout.write(text)
    if args.report:
        Path(args.report).write_bytes(text.encode("utf-8"))
    return {Status.PASS: EXIT_OK, Status.FAIL: EXIT_FAIL, Status.DEGENERATE: EXIT_DEGENERATE}[status]


def cmd_construct(args) -> int:
    if args.what == "extended-code":
        code = extended_perfect_code(args.q)
        pair = SignedPair(code.params, code.words, frozenset())
    else:
        if args.shift is None:
            raise ParameterError("construct bitrade needs --shift <a>@<i>")
        a, i = _parse_shift(args.shift)
        pair = shifted_bitrade(args.q, a, i)
    _emit(fileformat.serialize_bitrade(pair.params, pair), args.output)
    return EXIT_OK


def cmd_project(args) -> int:
    params, pair = fileformat.read_bitrade(args.file)
    proj = project_pair(pair, args.coord)
    _emit(fileformat.serialize_bitrade(proj.params, proj), args.output)
    return EXIT_OK


def cmd_search(args) -> int:
    params = Params(args.n, args.q)
    region = None
    if args.hint:
        hint_params, hint = fileformat.read_bitrade(args.hint)
        if hint_params != params:
            raise ParameterError(f"hint file is for H({hint_params.n},{hint_params.q})")
        region = hint.plus | hint.minus
    cfg = SearchConfig(
        params,
        max_support=args.max_support,
        budget_seconds=args.budget_sec,
        mode=args.mode,
        fix_seed_vertex=not args.all_seeds,
        region=region,
        use_theorem=not args.ignore_theorem,
    )
    result = backtrack_search(cfg)
    print(f"n: {params.n}")
    print(f"q: {params.q}")
    print(f"mode: {args.mode}")
    print(f"found: {len(result.pairs)}")
    print(f"complete: {str(result.complete).lower()}")
    print(f"reason: {result.reason}")
    if not result.complete:
        print("status: incomplete")
    if args.output:
        out = Path(args.output)
        out.mkdir(parents=True, exist_ok=True)
        for k, pair in enumerate(result.pairs):
            fileformat.write_bitrade(out / f"bitrade_{k:04d}.bitrade", params, pair)
    if result.pairs:
        return EXIT_OK
    return EXIT_FAIL if result.complete else EXIT_INCOMPLETE


def cmd_params(args) -> int:
    params = Params(args.n, args.q)
    feas = feasible_params(args.n, args.q)
    idx = eigen_index_for(params, args.q - 2)
    ell = "none" if idx is None else str(idx.i)
    print(f"feasible: {str(feas.ok).lower()}, l={ell}")
    print(f"reason: {feas.reason}")
    return EXIT_OK if feas else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bitrades", description="Extended 1-perfect bitrades in H(n,q).")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="run checkers on a bitrade file")
    c.add_argument("file")
    c.add_argument(
        "--definition",
        default="all",
        choices=["matrix", "projection", "weight", "spectral", "cylinder", "perfect", "all"],
    )
    c.add_argument("--report")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("construct", help="emit the hyperoval code or a shifted difference pair")
    c.add_argument("what", choices=["extended-code", "bitrade"])
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--shift", help="<a>@<i>: translate by a at coordinate i")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("project", help="write the i-projection of a pair")
    c.add_argument("file")
    c.add_argument("--coord", type=int, required=True)
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_project)

    c = sub.add_parser("search", help="search for bitrades")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--mode", choices=["brute", "backtrack"], default="backtrack")
    c.add_argument("--max-support", type=int)
    c.add_argument("--budget-sec", type=float)
    c.add_argument("--hint", help="bitrade file whose support bounds the search")
    c.add_argument("--all-seeds", action="store_true", help="do not fix 0...0 in T+")
    c.add_argument("--ignore-theorem", action="store_true", help="search even when n is infeasible")
    c.add_argument("-o", "--output", help="directory for found pairs")
    c.set_defaults(func=cmd_search)

    c = sub.add_parser("params", help="feasibility and eigen index of q-2")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--q", type=int, required=True)
    c.set_defaults(func=cmd_params)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except fileformat.BitradeParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except EquivalenceViolation as e:
        print(f"internal error, checkers disagree: {e}", file=sys.stderr)
        return EXIT_BUG
    except (ParameterError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
