"""Optimal alignment of a string and a weighted automaton in linear space.

Divide and conquer on the string: find a lattice state at the middle level
lying on a shortest path, split both the string and the automaton there, and
recurse.  Strings of length at most one are solved directly with
backpointers over their two level bands.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

from .automata import INF, WeightedAutomaton, automaton_weight
from .distance import level_distances, resolve_costs
from .edits import Alignment, CostFunction, alignment_cost, apply_morphism
from .lattice import EditLattice
from .shortest import RunStats, ShortestFirst, shortest_distance


class UnreachableError(ValueError):
    """The automaton accepts nothing, so no alignment exists."""


class Midpoint(NamedTuple):
    level: int
    a_state: int
    distance: float


@dataclass
class AlignmentResult:
    alignment: Alignment
    total: float
    y: tuple
    edit_cost: float
    automaton_weight: float
    depth: int = 1
    stats: RunStats = field(default_factory=RunStats)


def midpoint(x: Sequence[str], automaton: WeightedAutomaton, costs: Optional[CostFunction] = None,
             discipline: str = "auto", stats: Optional[RunStats] = None) -> Midpoint:
    x = tuple(x)
    i0 = len(x) // 2
    levels = level_distances(x, automaton, costs, i0, "both", discipline)
    if stats is not None:
        stats.absorb(levels.stats)
    through = levels.through()
    best = min(through, default=INF)
    if best == INF:
        raise UnreachableError("edit distance is infinite")
    return Midpoint(i0, through.index(best), best)


def _solve_small(x: tuple, automaton: WeightedAutomaton, costs: CostFunction,
                 stats: RunStats) -> list:
    lattice = EditLattice(x, automaton, costs)
    parents: dict = {}
    d, st = shortest_distance(lattice, lattice.sources(), ShortestFirst(), parents=parents)
    stats.absorb(st)
    n = automaton.num_states
    base = len(x) * n
    best, best_q = INF, None
    for j, rho in sorted(automaton.final.items()):
        v = d.get(base + j, INF) + rho
        if v < best:
            best, best_q = v, base + j
    if best_q is None:
        raise UnreachableError("edit distance is infinite")
    ops = []
    q = best_q
    while q in parents:
        src, k = parents[q]
        ops.append(lattice.describe_arc(src, k)[0])
        q = src
    ops.reverse()
    return ops


def optimal_alignment(x: Sequence[str], automaton: WeightedAutomaton, costs: Optional[CostFunction] = None,
                      discipline: str = "auto") -> AlignmentResult:
    """An alignment of ``x`` with some ``y`` minimizing A(y) + c(alignment).

    ``total`` is that minimum, i.e. the edit distance; ``edit_cost`` and
    ``automaton_weight`` report its two terms separately.
    """
    x = tuple(x)
    costs = resolve_costs(x, automaton, costs)
    stats = RunStats()
    depth = 0

    def solve(xs: tuple, a: WeightedAutomaton, level: int) -> list:
        nonlocal depth
        depth = max(depth, level)
        if len(xs) <= 1:
            return _solve_small(xs, a, costs, stats)
        i0, j0, _ = midpoint(xs, a, costs, discipline, stats)
        left = solve(xs[:i0], a.with_weights(final={j0: 0.0}), level + 1)
        right = solve(xs[i0:], a.with_weights(initial={j0: 0.0}), level + 1)
        return left + right

    if automaton.num_states == 0:
        raise UnreachableError("edit distance is infinite")
    ops = Alignment(tuple(solve(x, automaton, 1)))
    _, y = apply_morphism(ops)
    a_y = automaton_weight(automaton, y)
    cost = alignment_cost(costs, ops)
    return AlignmentResult(ops, a_y + cost, y, cost, a_y, depth, stats)


def depth_bound(n: int) -> int:
    """Largest recursion depth :func:`optimal_alignment` reaches for |x| = n."""
    return 1 if n <= 1 else math.ceil(math.log2(n)) + 1
