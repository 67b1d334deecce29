"""Text formats for automata, transducers and edit costs.

Automaton/transducer lines (whitespace separated, ``#`` starts a comment)::

    src dst label [weight]              # automaton arc
    src dst ilabel olabel [weight]      # transducer arc
    state [weight]                      # final state
    @initial state [weight]             # repeatable

``<eps>`` is epsilon.  Without ``@initial`` the source of the first arc is the
only initial state.  State names are arbitrary tokens, numbered densely in
order of first appearance.
"""

from __future__ import annotations

import math
from typing import Iterable, Optional

from .automata import INF, Arc, AutomatonError, Transition, WeightedAutomaton, WeightedTransducer
from .edits import CostFunction, InvalidEditOp

EPS_TOKEN = "<eps>"


class FormatError(ValueError):
    def __init__(self, msg: str, lineno: Optional[int] = None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {msg}" if lineno is not None else msg)


def _label(tok: str) -> Optional[str]:
    return None if tok == EPS_TOKEN else tok


def _weight(tok: str, lineno: int) -> float:
    try:
        w = float(tok)
    except ValueError:
        raise FormatError(f"bad weight {tok!r}", lineno) from None
    if not w >= 0:
        raise FormatError(f"negative weight {tok!r}", lineno)
    return w


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_automaton(text: str, transducer: bool = False, with_names: bool = False):
    """Parse the text format into a :class:`WeightedAutomaton` (default) or
    :class:`WeightedTransducer`.

    With ``with_names`` also return the state name of each dense id.
    """
    names: dict[str, int] = {}

    def sid(tok):
        if tok not in names:
            names[tok] = len(names)
        return names[tok]

    arc_fields = (4, 5) if transducer else (3, 4)
    arcs = []
    final: dict[int, float] = {}
    initial: dict[int, float] = {}
    first_src = None
    for lineno, f in _lines(text):
        if f[0].startswith("@"):
            if f[0] != "@initial":
                raise FormatError(f"unknown directive {f[0]!r}", lineno)
            if len(f) not in (2, 3):
                raise FormatError("expected '@initial state [weight]'", lineno)
            q = sid(f[1])
            initial[q] = min(initial.get(q, INF), _weight(f[2], lineno) if len(f) == 3 else 0.0)
        elif len(f) in arc_fields:
            src, dst = sid(f[0]), sid(f[1])
            if first_src is None:
                first_src = src
            if transducer:
                w = _weight(f[4], lineno) if len(f) == 5 else 0.0
                arcs.append(Transition(src, _label(f[2]), _label(f[3]), w, dst))
            else:
                w = _weight(f[3], lineno) if len(f) == 4 else 0.0
                arcs.append(Arc(src, _label(f[2]), w, dst))
        elif len(f) in (1, 2):
            q = sid(f[0])
            final[q] = min(final.get(q, INF), _weight(f[1], lineno) if len(f) == 2 else 0.0)
        else:
            raise FormatError(f"cannot parse {len(f)} fields", lineno)
    if not names:
        raise FormatError("no states")
    if not initial:
        initial = {first_src if first_src is not None else 0: 0.0}
    try:
        if transducer:
            m = WeightedTransducer(len(names), tuple(arcs), initial, final)
        else:
            m = WeightedAutomaton(len(names), tuple(arcs), initial, final)
    except AutomatonError as exc:
        raise FormatError(str(exc)) from None
    if with_names:
        by_id = [""] * len(names)
        for tok, k in names.items():
            by_id[k] = tok
        return m, by_id
    return m


def format_weight(w: float) -> str:
    """12 significant digits, no trailing ``.0``; ``inf`` for +infinity."""
    if math.isinf(w):
        return "inf"
    return f"{w:.12g}"


def serialize_automaton(machine) -> str:
    """Inverse of :func:`parse_automaton` up to state renumbering."""

    def lab(x):
        return EPS_TOKEN if x is None else x

    lines = [f"@initial {q} {w!r}" for q, w in sorted(machine.initial.items())]
    for t in machine.transitions:
        if isinstance(machine, WeightedAutomaton):
            lines.append(f"{t.src} {t.dst} {lab(t.label)} {t.weight!r}")
        else:
            lines.append(f"{t.src} {t.dst} {lab(t.ilabel)} {lab(t.olabel)} {t.weight!r}")
    lines.extend(f"{q} {w!r}" for q, w in sorted(machine.final.items()))
    return "\n".join(lines) + "\n"


def parse_costs(text: str, alphabet: Iterable[str] = ()) -> CostFunction:
    """Cost file: ``input output cost`` per line; missing cells are Levenshtein."""
    table = {}
    symbols = set(alphabet)
    for lineno, f in _lines(text):
        if len(f) != 3:
            raise FormatError("expected 'input output cost'", lineno)
        a, b = _label(f[0]), _label(f[1])
        if a is None and b is None:
            raise FormatError("(<eps>, <eps>) is not an edit operation", lineno)
        table[(a, b)] = _weight(f[2], lineno)
        symbols.update(s for s in (a, b) if s is not None)
    try:
        return CostFunction(symbols, table)
    except InvalidEditOp as exc:
        raise FormatError(str(exc)) from None


def parse_symbols(text: str) -> list[str]:
    """Symbol table: first token of each line (an optional id column is ignored)."""
    return [f[0] for _, f in _lines(text) if f[0] != EPS_TOKEN]

