"""Command-line front end.

Exit codes: 0 success, 1 failed verification or no answer, 2 usage or
configuration error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import replace
from pathlib import Path
from typing import Optional, Sequence, TextIO

from . import growth, oeis, search, verify
from .config import Config, load_config
from .core import MoveError, ParseError, neighbors, parse_digit_string
from .extremal import max_neighbor, min_neighbor, min_neighbor_rule
from .search import CapExceededError, ConfigError, NoPathError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("configuration")
    g.add_argument("--cap", dest="cap_digits", type=int, help="digit cap for BFS (default 7)")
    g.add_argument("--limit", type=int, help="largest target in distance tables (default 10000)")
    g.add_argument("--max-gen", dest="n_max", type=int, help="growth generations (default 40)")
    g.add_argument("--cache-dir", help="distance-table cache directory")
    g.add_argument("--no-cache", action="store_true", help="do not read or write the cache")
    g.add_argument("--threads", type=int, help="worker threads, 0 = all cores")
    g.add_argument("--config", type=Path, help="file of 'key = value' lines")
    g.add_argument("-v", "--verbose", action="store_true")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="choix", description="Halve-or-double-a-substring explorer.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("neighbors", parents=[common], help="one-step images of n")
    p.add_argument("n")
    p.add_argument("--base", type=int, choices=(10, 2), default=10)

    p = sub.add_parser("minmax", parents=[common], help="smallest and largest one-step image")
    p.add_argument("n")
    p.add_argument("--rule", action="store_true", help="also show the closed-form minimum rule")

    p = sub.add_parser("tau", parents=[common], help="steps from 1 to n (-1 if unreachable)")
    p.add_argument("n")

    p = sub.add_parser("steps5", parents=[common], help="steps from 5 to n (-1 if unreachable)")
    p.add_argument("n")

    p = sub.add_parser("path", parents=[common], help="a shortest path from a to b")
    p.add_argument("a")
    p.add_argument("b")

    p = sub.add_parser("records", parents=[common], help="record step counts up to --limit")
    p.add_argument("--class", dest="klass", choices=("a", "b"), default="a")

    p = sub.add_parser("growth", parents=[common], help="greedy r(n) and exact R(n) per generation")
    p.add_argument("--frontiers", action="store_true", help="also dump surviving frontier sets")

    p = sub.add_parser("emit", parents=[common], help="write a sequence as a b-file")
    p.add_argument("seq_id", metavar="ID")
    p.add_argument("--terms", type=int, required=True)
    p.add_argument("--out", type=Path, help="output path (default: standard output)")
    p.add_argument("--positions", action="store_true", help="record sequences: emit positions")
    p.add_argument("--offset", type=int, help="first index (default 1)")

    p = sub.add_parser("compare", parents=[common], help="compare a generated b-file with a reference")
    p.add_argument("generated", type=Path)
    p.add_argument("reference", type=Path)
    p.add_argument("--fetch", metavar="ID", help="download the published b-file for ID to REFERENCE first")

    p = sub.add_parser("verify", parents=[common], help="run property suites")
    p.add_argument("--suite", choices=verify.SUITES + ("all",), default="all")
    return parser


def _config(args: argparse.Namespace) -> Config:
    flags = {
        "cap_digits": args.cap_digits,
        "limit": args.limit,
        "n_max": args.n_max,
        "cache_dir": args.cache_dir,
        "threads": args.threads,
    }
    cfg = load_config(flags, file=args.config)
    if args.no_cache:
        cfg = replace(cfg, cache_dir=None)
    return cfg


def _number(text: str, base: int = 10):
    try:
        return parse_digit_string(text, base)
    except ParseError as exc:
        raise UsageError(f"{text!r}: {exc}") from None


def _table(cfg: Config, source: int, target: int) -> search.DistanceTable:
    limit = max(cfg.limit, target)
    return search.bfs_distances(source, cfg.cap_digits, limit, cache_dir=cfg.cache_dir, threads=cfg.threads)


def _move_text(move) -> str:
    return "identity" if move is None else str(move)


def _growth_output(cfg: Config, frontiers: bool) -> str:
    table = growth.exact_max_reach(cfg.n_max, workers=cfg.threads or os.cpu_count() or 1)
    lines = [f"{g}\t{r}\t{big}\t{size}" for g, r, big, size in table.rows()]
    if frontiers:
        for g, level in enumerate(table.frontiers):
            lines.append(f"frontier\t{g}\t" + " ".join(map(str, sorted(level))))
    return "\n".join(lines) + "\n"


def _records_output(cfg: Config, klass: str) -> str:
    if klass == "a":
        t = _table(cfg, 1, cfg.limit)
        rec = search.records_tau(cfg.limit, t)
    else:
        t = _table(cfg, 5, cfg.limit)
        rec = search.records_class_b(cfg.limit, t)
    return "".join(f"{p}\t{v}\n" for p, v in rec.entries)


def _dispatch(args: argparse.Namespace, out: TextIO) -> int:
    cmd = args.command
    cfg = _config(args)

    if cmd == "neighbors":
        n = _number(args.n, args.base)
        out.write(" ".join(map(str, neighbors(n))) + "\n")
        return EXIT_OK

    if cmd == "minmax":
        n = _number(args.n)
        lo, hi = min_neighbor(n), max_neighbor(n)
        out.write(f"min\t{lo.value}\t{_move_text(lo.witness_move)}\n")
        out.write(f"max\t{hi.value}\t{_move_text(hi.witness_move)}\n")
        if args.rule:
            rr = min_neighbor_rule(n)
            out.write(f"rule\t{rr.value}\t{_move_text(rr.witness_move)}\t{'agrees' if rr.agrees else 'differs'}\n")
        return EXIT_OK

    if cmd in ("tau", "steps5"):
        n = int(_number(args.n))
        table = _table(cfg, 1 if cmd == "tau" else 5, n)
        out.write(f"{table[n]}\n")
        return EXIT_OK

    if cmd == "path":
        a, b = _number(args.a), _number(args.b)
        try:
            path = search.shortest_path(a, b, cfg.cap_digits)
        except (NoPathError, CapExceededError) as exc:
            print(f"choix: {exc}", file=sys.stderr)
            return EXIT_FAIL
        out.write(" ".join(map(str, path.vertices)) + "\n")
        return EXIT_OK

    if cmd == "records":
        out.write(_records_output(cfg, args.klass))
        return EXIT_OK

    if cmd == "growth":
        out.write(_growth_output(cfg, args.frontiers))
        return EXIT_OK

    if cmd == "emit":
        tables = oeis.Tables()
        need = oeis.needs_tables(args.seq_id)
        if "tau" in need:
            tables.tau = _table(cfg, 1, cfg.limit)
        if "five" in need:
            tables.five = _table(cfg, 5, cfg.limit)
        bfile = oeis.generate_sequence(args.seq_id, args.terms, tables,
                                       positions=args.positions, offset=args.offset)
        if args.out is None:
            out.write(bfile.to_text())
        else:
            oeis.write_bfile(bfile, args.out)
        return EXIT_OK

    if cmd == "compare":
        if args.fetch:
            oeis.fetch_reference(args.fetch, args.reference)
        report = oeis.compare_sequences(oeis.read_bfile(args.generated), oeis.read_bfile(args.reference))
        out.write(f"{report}\n")
        return EXIT_OK if report.match else EXIT_FAIL

    if cmd == "verify":
        names = verify.SUITES if args.suite == "all" else (args.suite,)
        failed = False
        for name in names:
            for check in verify.run_suites([name], cfg):
                out.write(check.line() + "\n")
                out.flush()
                failed |= check.enforced and not check.ok
        return EXIT_FAIL if failed else EXIT_OK

    raise UsageError(f"unknown command {cmd}")


def run(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return _dispatch(args, out)
    except (UsageError, ConfigError, ParseError, MoveError, search.OutOfRangeError,
            oeis.SequenceError, oeis.BFileFormatError) as exc:
        print(f"choix: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"choix: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
