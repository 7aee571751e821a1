"""Command-line entry point: reports, chamber sweeps, Koszul checks, example tables.

Exit codes: 0 ok, 1 usage, 2 non-generic input, 3 verdict mismatch.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from .chainspace import (ChainSpaceParams, NonGenericError, build_iota, chambers, dims,
                         full_report, iota_via_expansion, is_generic, to_rational)
from .homological import homological_dimension, syzygy_order
from .koszul import koszul_image_presentation
from .modules import matrix_to_text
from .report import emit_json, emit_text, parse_json

EXIT_OK, EXIT_USAGE, EXIT_NONGENERIC, EXIT_MISMATCH = 0, 1, 2, 3
DEFAULT_MAX_R = 6
GOLDEN_ENV = "CHAINSYZ_GOLDEN_DIR"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _rational(text: str) -> Fraction:
    try:
        return to_rational(text)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _lengths(text: str) -> tuple:
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise argparse.ArgumentTypeError("empty length vector")
    return tuple(_rational(p) for p in parts)


def _params(args, c=None) -> ChainSpaceParams:
    if len(args.l) > args.max_r:
        raise UsageError(f"r = {len(args.l)} exceeds --max-r {args.max_r}")
    try:
        return ChainSpaceParams(args.m, args.n, args.l, args.c if c is None else c)
    except NonGenericError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _check_pipeline(params: ChainSpaceParams):
    if params.n < 1:
        raise UsageError("n must be >= 1 for the syzygy pipeline")


# -- report ----------------------------------------------------------------

def _dump_golden(rep, out_dir: Path):
    out_dir.mkdir(parents=True, exist_ok=True)
    tag = "l" + "_".join(str(x).replace("/", "-") for x in rep.params.ell)
    tag += f"_c{str(rep.params.c).replace('/', '-')}_m{rep.params.m}_n{rep.params.n}"
    (out_dir / f"{tag}.iota.txt").write_text(matrix_to_text(rep.iota.matrix) + "\n")


def cmd_report(args) -> int:
    params = _params(args)
    _check_pipeline(params)
    rep = full_report(params)
    if args.format == "json":
        print(emit_json(rep))
    else:
        print(emit_text(rep, dump_matrices=args.dump_matrices))
    if args.dump_matrices and os.environ.get(GOLDEN_ENV):
        _dump_golden(rep, Path(os.environ[GOLDEN_ENV]))
    return EXIT_OK


# -- sweep -----------------------------------------------------------------

def _sweep_row(params: ChainSpaceParams) -> dict:
    rep = full_report(params)
    return {"lc": len(rep.long_sets), "verdict": rep.verdict(), "free_rank": rep.free_rank,
            "dim_H": rep.dim_H, "dim_H_fixed": rep.dim_H_fixed, "consistent": rep.consistent}


def sweep_rows(params: ChainSpaceParams, jobs: int = 1) -> list:
    """One row per chamber of c >= 0, in chamber order."""
    cells = chambers(params.ell)
    todo = [params.with_c(rep) for _, _, rep in cells]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_sweep_row, todo))
    else:
        rows = [_sweep_row(p) for p in todo]
    for (lo, hi, c), row in zip(cells, rows):
        row.update(lo=lo, hi=hi, c=c)
    return rows


def _interval(lo, hi) -> str:
    return f"({lo},{'inf' if hi is None else hi})"


def cmd_sweep(args) -> int:
    params = _params(args, c=0)
    _check_pipeline(params)
    rows = sweep_rows(params, args.jobs)
    if args.format == "json":
        out = [{"interval": [str(r["lo"]), None if r["hi"] is None else str(r["hi"])],
                "c": str(r["c"]), "L_c": r["lc"], "dim_H": r["dim_H"],
                "dim_H_fixed": r["dim_H_fixed"], "verdict": r["verdict"],
                "free_rank": r["free_rank"]} for r in rows]
        print(json.dumps(out, indent=2))
        return EXIT_OK
    print(f"{'chamber':<14}{'c':>8}{'|L_c|':>7}{'dim_H':>7}{'dim_HG':>8}  verdict   free_rank")
    for r in rows:
        fr = "" if r["free_rank"] is None else str(r["free_rank"])
        print(f"{_interval(r['lo'], r['hi']):<14}{str(r['c']):>8}{r['lc']:>7}{r['dim_H']:>7}"
              f"{r['dim_H_fixed']:>8}  {r['verdict']:<9} {fr}")
    return EXIT_OK


# -- koszul-check ------------------------------------------------------------

def koszul_rows(r: int) -> list:
    rows = []
    for j in range(1, r + 1):
        p = koszul_image_presentation(r, j)
        order = syzygy_order(p)
        hdim = homological_dimension(p)
        expected = "FREE" if j == r else str(j)
        rows.append((j, str(order), expected, hdim, r - j))
    return rows


def cmd_koszul_check(args) -> int:
    if args.r < 1:
        raise UsageError("--r must be positive")
    if args.r > args.max_r:
        raise UsageError(f"r = {args.r} exceeds --max-r {args.max_r}")
    failed = False
    print(f"{'j':>3}  order  expected  hdim  expected  status")
    for j, order, exp_order, hdim, exp_hdim in koszul_rows(args.r):
        ok = order == exp_order and hdim == exp_hdim
        failed |= not ok
        print(f"{j:>3}  {order:<5}  {exp_order:<8}  {hdim:>4}  {exp_hdim:>8}  {'ok' if ok else 'FAIL'}")
    return EXIT_MISMATCH if failed else EXIT_OK


# -- table -------------------------------------------------------------------

EXAMPLE_ALIASES = {
    "uniform-polygon": "3.15",
    "uniform-chain": "3.19-1",
    "two-short": "3.19-2",
    "rank-four": "3.19-3",
}


def example_grid(example: str, k: int) -> list:
    """[(params, expected verdict)] over the example's chambers."""
    example = EXAMPLE_ALIASES.get(example, example)
    half = Fraction(1, 2)
    if example == "3.15":
        ell = (1,) * (2 * k + 1)
        return [(ChainSpaceParams(2, 1, ell, c), str(k)) for c in (0, half)]
    if example == "3.19-1":
        ell = (1,) * (2 * k + 1)
        grid = [(ChainSpaceParams(2, 1, ell, 0), str(k))]
        for lo, hi, c in chambers(ell):
            exp = str(k) if lo == 0 else ("ZERO" if hi is None else "FREE")
            grid.append((ChainSpaceParams(2, 1, ell, c), exp))
        return grid
    if example == "3.19-2":
        if k < 1:
            raise UsageError("this example needs k >= 1")
        ell = (2, 2) + (3,) * (2 * k - 1)
        grid = [(ChainSpaceParams(2, 1, ell, 0), str(k))]
        for lo, hi, c in chambers(ell):
            if c < 1:
                exp = str(k)
            elif c < 3:
                exp = str(k - 1)
            else:
                exp = "ZERO" if hi is None else "FREE"
            grid.append((ChainSpaceParams(2, 1, ell, c), exp))
        return grid
    if example == "3.19-3":
        ell = (2, 2, 2, 3)
        grid = [(ChainSpaceParams(2, 1, ell, 0), "0")]
        for lo, hi, c in chambers(ell):
            exp = "0" if c < 1 else ("ZERO" if hi is None else "FREE")
            grid.append((ChainSpaceParams(2, 1, ell, c), exp))
        return grid
    raise UsageError(f"unknown example {example!r}")


def table_rows(grid: list) -> list:
    rows = []
    prev_rank = None
    for params, expected in grid:
        rep = full_report(params)
        got = rep.verdict()
        ok = got == expected
        if expected in ("FREE", "ZERO") and rep.free_rank is not None:
            if prev_rank is not None and rep.free_rank > prev_rank:
                ok = False
            prev_rank = rep.free_rank
        rows.append((params, expected, got, rep.free_rank, ok))
    return rows


def cmd_table(args) -> int:
    k = args.k
    if k is None:
        k = {"3.15": 1, "3.19-1": 1, "3.19-2": 2}.get(EXAMPLE_ALIASES.get(args.example, args.example), 0)
    if k < 0:
        raise UsageError("--k must be non-negative")
    grid = example_grid(args.example, k)
    if grid[0][0].r > args.max_r:
        raise UsageError(f"r = {grid[0][0].r} exceeds --max-r {args.max_r}")
    rows = table_rows(grid)
    failed = False
    print(f"l = ({','.join(map(str, rows[0][0].ell))})  m=2 n=1")
    print(f"{'c':>8}  expected  computed  free_rank  status")
    for params, expected, got, fr, ok in rows:
        failed |= not ok
        print(f"{str(params.c):>8}  {expected:<8}  {got:<8}  {'' if fr is None else fr:>9}  "
              f"{'ok' if ok else 'MISMATCH'}")
    return EXIT_MISMATCH if failed else EXIT_OK


# -- selftest (hidden) ---------------------------------------------------------

def random_generic_params(rng: random.Random, r_choices=(3, 4), max_entry: int = 5) -> ChainSpaceParams:
    while True:
        r = rng.choice(r_choices)
        ell = tuple(Fraction(rng.randint(1, max_entry)) for _ in range(r))
        if not is_generic(ell, 0):
            continue
        c = Fraction(rng.randint(0, int(4 * sum(ell))), 4)
        if is_generic(ell, c):
            return ChainSpaceParams(2, rng.randint(1, 2), ell, c)


def cmd_selftest(args) -> int:
    rng = random.Random(args.seed)
    bad = 0
    for _ in range(args.cases):
        p = random_generic_params(rng)
        rep = full_report(p)
        checks = [
            rep.consistent,
            build_iota(p).matrix == iota_via_expansion(p),
            dims(p) == (rep.dim_H, rep.dim_H_fixed),
            parse_json(emit_json(rep)) == rep,
        ]
        if not all(checks):
            bad += 1
            print(f"FAIL {p.to_record()} checks={checks}")
    print(f"selftest seed={args.seed}: {args.cases - bad}/{args.cases} passed")
    return EXIT_MISMATCH if bad else EXIT_OK


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="chainsyz", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser,
                                metavar="{report,sweep,koszul-check,table}")
    sub.required = True

    def chain_flags(p, with_c=True):
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--l", type=_lengths, required=True, help="comma separated lengths, e.g. 1,1,1 or 1/2,3")
        if with_c:
            p.add_argument("--c", type=_rational, default=Fraction(0))
        p.add_argument("--max-r", type=int, default=DEFAULT_MAX_R)

    p = sub.add_parser("report", help="full syzygy report for one parameter set")
    chain_flags(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--dump-matrices", action="store_true")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("sweep", help="one row per chamber of c")
    chain_flags(p, with_c=False)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("koszul-check", help="verify Koszul image modules against known orders")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--max-r", type=int, default=DEFAULT_MAX_R)
    p.set_defaults(func=cmd_koszul_check)

    p = sub.add_parser("table", help="reproduce a worked example family")
    p.add_argument("--example", required=True,
                   choices=sorted(EXAMPLE_ALIASES) + sorted(EXAMPLE_ALIASES.values()))
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--max-r", type=int, default=DEFAULT_MAX_R)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("selftest")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=20)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"chainsyz: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NonGenericError as exc:
        print(f"chainsyz: non-generic input: {exc}", file=sys.stderr)
        return EXIT_NONGENERIC


if __name__ == "__main__":
    sys.exit(main())
