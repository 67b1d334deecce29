"""``wedit``: edit distance and alignment between a string and an automaton.

Exit status is 0 on success, 1 on bad input and 2 when the distance (or
weight) is infinite; ``inf`` is still printed in that case.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from .alignment import UnreachableError, optimal_alignment
from .automata import INF, AutomatonError, automaton_weight
from .distance import edit_distance
from .edits import CostFunction, InvalidEditOp, levenshtein_costs
from .shortest import RunStats
from .textio import EPS_TOKEN, FormatError, format_weight, parse_automaton, parse_costs, parse_symbols

QUEUES = {"auto": "auto", "dijkstra": "shortest_first", "topo": "topological", "loopk": "back_edge"}

EXIT_OK, EXIT_INPUT, EXIT_INFINITE = 0, 1, 2


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _tokens(text: str, symbols: Optional[set], what: str) -> tuple:
    if symbols is None:
        return tuple(text)
    toks = tuple(text.split())
    unknown = sorted(set(toks) - symbols)
    if unknown:
        raise InputError(f"{what} uses symbols missing from the symbol table: {' '.join(unknown)}")
    return toks


def _load(args, need_string: bool = True):
    symbols = set(parse_symbols(_read(args.symbols))) if args.symbols else None
    automaton = parse_automaton(_read(args.automaton))
    if symbols is not None:
        unknown = sorted(automaton.alphabet - symbols)
        if unknown:
            raise InputError(f"automaton uses symbols missing from the symbol table: {' '.join(unknown)}")
    x = _tokens(args.string, symbols, "string") if args.string is not None else None
    costs = None
    if getattr(args, "costs", None):
        alphabet = set(automaton.alphabet) | set(x or ())
        costs = parse_costs(_read(args.costs), alphabet)
    return x, automaton, costs


def _join(seq: Sequence[str], multichar: bool) -> str:
    return " ".join(seq) if multichar else "".join(seq)


def _cmd_dist(args, out) -> int:
    x, automaton, costs = _load(args)
    dist, stats = edit_distance(x, automaton, costs, QUEUES[args.queue])
    print(format_weight(dist), file=out)
    if args.stats:
        print(stats.report(), file=out)
    return EXIT_INFINITE if dist == INF else EXIT_OK


def _cmd_align(args, out) -> int:
    x, automaton, costs = _load(args)
    try:
        res = optimal_alignment(x, automaton, costs, QUEUES[args.queue])
    except UnreachableError:
        print("inf", file=out)
        return EXIT_INFINITE
    print(format_weight(res.total), file=out)
    print(_join(res.y, bool(args.symbols)), file=out)
    for op in res.alignment:
        a = EPS_TOKEN if op.input is None else op.input
        b = EPS_TOKEN if op.output is None else op.output
        print(f"{a}\t{b}", file=out)
    if args.stats:
        print(res.stats.report(), file=out)
    return EXIT_OK


def _cmd_eval(args, out) -> int:
    y, automaton, _ = _load(args)
    w = automaton_weight(automaton, y)
    print(format_weight(w), file=out)
    return EXIT_INFINITE if w == INF else EXIT_OK


def _cmd_bench(args, out) -> int:
    x, automaton, costs = _load(args)
    if x is None:
        rng = random.Random(args.seed)
        alphabet = sorted(automaton.alphabet) or ["a"]
        x = tuple(rng.choice(alphabet) for _ in range(args.length))
    if costs is None:
        costs = levenshtein_costs(set(x) | set(automaton.alphabet))
    queues = ["dijkstra", "loopk"]
    if automaton.is_acyclic():
        queues.insert(1, "topo")
    cols = ["queue", "distance", "max_dequeues", "total_dequeues", "relaxations",
            "peak_resident_states", "peak_resident_arcs"]
    if args.time:
        cols.append("seconds")
    print("\t".join(cols), file=out)
    for name in queues:
        t0 = time.perf_counter()
        dist, st = edit_distance(x, automaton, costs, QUEUES[name])
        row = [name, format_weight(dist), st.max_dequeues, st.total_dequeues, st.relaxations,
               st.peak_resident_states, st.peak_resident_arcs]
        if args.time:
            row.append(f"{time.perf_counter() - t0:.3f}")
        print("\t".join(map(str, row)), file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wedit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, string_required=True):
        p.add_argument("--string", required=string_required,
                       help="the string; characters are symbols unless --symbols is given")
        p.add_argument("--automaton", required=True, help="automaton in text format")
        p.add_argument("--symbols", help="symbol table; makes --string whitespace-separated tokens")

    p = sub.add_parser("dist", help="edit distance between the string and the automaton")
    common(p)
    p.add_argument("--costs", help="edit cost file (input output cost)")
    p.add_argument("--queue", choices=QUEUES, default="auto")
    p.add_argument("--stats", action="store_true", help="print run statistics")
    p.set_defaults(func=_cmd_dist)

    p = sub.add_parser("align", help="optimal alignment")
    common(p)
    p.add_argument("--costs")
    p.add_argument("--queue", choices=QUEUES, default="auto")
    p.add_argument("--stats", action="store_true")
    p.set_defaults(func=_cmd_align)

    p = sub.add_parser("eval", help="weight the automaton assigns to the string")
    common(p)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("bench", help="run statistics for every applicable queue discipline")
    common(p, string_required=False)
    p.add_argument("--costs")
    p.add_argument("--length", type=int, default=100, help="random string length without --string")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--time", action="store_true", help="add wall-clock seconds per run")
    p.set_defaults(func=_cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse uses status 2 for usage errors, which here means "infinite"
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except (InputError, FormatError, AutomatonError, InvalidEditOp) as exc:
        print(f"wedit: error: {exc}", file=err)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
