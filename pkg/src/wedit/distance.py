"""Linear-space edit distance between a string and a weighted automaton."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

from .automata import (INF, EpsilonError, WeightedAutomaton, mark_back_edges, mirror,
                       topological_order)
from .edits import CostFunction, levenshtein_costs
from .lattice import EditLattice
from .shortest import (BackEdgeCount, Fifo, Lifo, RunStats, ShortestFirst, TopologicalOrder,
                       make_level_meta, shortest_distance)

DISCIPLINES = ("auto", "shortest_first", "topological", "back_edge", "fifo", "lifo")


class EditDistanceResult(NamedTuple):
    distance: float
    stats: RunStats


def resolve_costs(x: Sequence[str], automaton: WeightedAutomaton,
                  costs: Optional[CostFunction]) -> CostFunction:
    """Levenshtein costs over the symbols of ``x`` and ``automaton`` unless given."""
    if costs is None:
        return levenshtein_costs(set(x) | set(automaton.alphabet))
    return costs


def resolve_discipline(automaton: WeightedAutomaton, choice: str) -> str:
    if choice not in DISCIPLINES:
        raise ValueError(f"unknown queue discipline {choice!r}; expected one of {DISCIPLINES}")
    if choice == "auto":
        return "topological" if automaton.is_acyclic() else "back_edge"
    return choice


def _level_discipline(lattice: EditLattice, choice: str):
    automaton = lattice.automaton
    choice = resolve_discipline(automaton, choice)
    if choice == "shortest_first":
        under = ShortestFirst()
    elif choice == "topological":
        under = TopologicalOrder(topological_order(automaton), key=lattice.a_state)
    elif choice == "back_edge":
        under = BackEdgeCount(mark_back_edges(automaton), key=lattice.a_state)
    elif choice == "fifo":
        under = Fifo()
    else:
        under = Lifo()
    return make_level_meta(under, lattice.level)


def sweep(x: Sequence[str], automaton: WeightedAutomaton, costs: CostFunction,
          discipline: str = "auto", **kw) -> tuple[list[float], RunStats]:
    """Distances to every state of the last level of the lattice of ``x``.

    Streams level bands through the generic algorithm under the level
    meta-discipline; final weights are not added.
    """
    n = automaton.num_states
    if n == 0:
        return [], RunStats()
    lattice = EditLattice(x, automaton, costs)
    d, stats = shortest_distance(lattice, lattice.sources(), _level_discipline(lattice, discipline), **kw)
    base = len(lattice.x) * n
    return [d.get(base + j, INF) for j in range(n)], stats


def edit_distance(x: Sequence[str], automaton: WeightedAutomaton, costs: Optional[CostFunction] = None,
                  discipline: str = "auto", **kw) -> EditDistanceResult:
    """d(x, A) = min over y of A(y) + d(x, y).

    ``discipline`` picks the within-level queue order: ``auto`` means
    topological for acyclic automata and back-edge counting otherwise.
    Returns the distance (+inf if no accepting path) and the run's stats.
    """
    x = tuple(x)
    costs = resolve_costs(x, automaton, costs)
    last, stats = sweep(x, automaton, costs, discipline, **kw)
    final = automaton.final
    best = min((dj + final[j] for j, dj in enumerate(last) if j in final), default=INF)
    return EditDistanceResult(best, stats)


@dataclass(frozen=True)
class EditDistanceQuery:
    x: tuple
    automaton: WeightedAutomaton
    costs: Optional[CostFunction] = None
    discipline: str = "auto"

    def run(self) -> EditDistanceResult:
        return edit_distance(self.x, self.automaton, self.costs, self.discipline)


@dataclass
class LevelDistances:
    """Forward and backward shortest distances at one level of the lattice."""

    level: int
    forward: list = field(default_factory=list)
    backward: list = field(default_factory=list)
    stats: RunStats = field(default_factory=RunStats)

    def through(self) -> list[float]:
        """Cost of the best accepting path through each state of the level."""
        return [f + b for f, b in zip(self.forward, self.backward)]


def level_distances(x: Sequence[str], automaton: WeightedAutomaton, costs: Optional[CostFunction],
                    i0: int, direction: str = "both", discipline: str = "auto") -> LevelDistances:
    """Shortest distances into (forward) and out of (backward) level ``i0``.

    The backward sweep runs the same driver on the reversed suffix of ``x``
    against the mirrored automaton, whose initial weights are A's final ones.
    """
    x = tuple(x)
    if not 0 <= i0 <= len(x):
        raise IndexError(f"level {i0} outside 0..{len(x)}")
    if direction not in ("forward", "backward", "both"):
        raise ValueError(f"bad direction {direction!r}")
    costs = resolve_costs(x, automaton, costs)
    if automaton.has_epsilon:
        raise EpsilonError("the automaton must be epsilon-free")
    out = LevelDistances(i0)
    if direction in ("forward", "both"):
        out.forward, st = sweep(x[:i0], automaton, costs, discipline)
        out.stats.absorb(st)
    if direction in ("backward", "both"):
        out.backward, st = sweep(x[i0:][::-1], mirror(automaton), costs, discipline)
        out.stats.absorb(st)
    return out
