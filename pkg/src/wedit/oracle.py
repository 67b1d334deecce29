"""Brute-force references for testing.  Not used by the library or the CLI.

Everything here favors obviousness over speed and memory.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache
from typing import Optional, Sequence

from .automata import INF, Transition, WeightedAutomaton, WeightedTransducer
from .distance import resolve_costs
from .edits import Alignment, CostFunction, EditOp, levenshtein_costs
from .lattice import EditLattice
from .shortest import AdjacencyGraph, ShortestFirst, shortest_distance


class BudgetExceeded(RuntimeError):
    pass


def dp_edit_distance(x: Sequence[str], y: Sequence[str],
                     costs: Optional[CostFunction] = None) -> tuple[float, Alignment]:
    """Full-table DP with traceback."""
    x, y = tuple(x), tuple(y)
    c = costs or levenshtein_costs(set(x) | set(y))
    m, n = len(x), len(y)
    t = [[INF] * (n + 1) for _ in range(m + 1)]
    t[0][0] = 0.0
    for i in range(m + 1):
        for j in range(n + 1):
            if i and j:
                t[i][j] = min(t[i][j], t[i - 1][j - 1] + c(x[i - 1], y[j - 1]))
            if i:
                t[i][j] = min(t[i][j], t[i - 1][j] + c(x[i - 1], None))
            if j:
                t[i][j] = min(t[i][j], t[i][j - 1] + c(None, y[j - 1]))
    ops = []
    i, j = m, n
    while i or j:
        if i and j and t[i][j] == t[i - 1][j - 1] + c(x[i - 1], y[j - 1]):
            ops.append(EditOp(x[i - 1], y[j - 1]))
            i, j = i - 1, j - 1
        elif i and t[i][j] == t[i - 1][j] + c(x[i - 1], None):
            ops.append(EditOp(x[i - 1], None))
            i -= 1
        else:
            ops.append(EditOp(None, y[j - 1]))
            j -= 1
    return t[m][n], Alignment(tuple(reversed(ops)))


def exhaustive_edit_distance(x: Sequence[str], y: Sequence[str],
                             costs: Optional[CostFunction] = None) -> float:
    """Minimum cost over every alignment, by recursion on the first edit op.

    Memoized on suffix positions, which only prunes repeated subproblems; no
    table recurrence is assumed.
    """
    x, y = tuple(x), tuple(y)
    c = costs or levenshtein_costs(set(x) | set(y))

    @lru_cache(maxsize=None)
    def best(i: int, j: int) -> float:
        if i == len(x) and j == len(y):
            return 0.0
        options = []
        if i < len(x):
            options.append(c(x[i], None) + best(i + 1, j))
        if j < len(y):
            options.append(c(None, y[j]) + best(i, j + 1))
        if i < len(x) and j < len(y):
            options.append(c(x[i], y[j]) + best(i + 1, j + 1))
        return min(options)

    return best(0, 0)


def enumerate_language(automaton: WeightedAutomaton, max_len: int,
                       budget: int = 200_000) -> dict[tuple, float]:
    """Every accepted string of length <= ``max_len`` with its weight.

    Breadth-first over (state, prefix) pairs, keeping the lightest path to
    each pair; ``budget`` caps the number of pairs expanded.
    """
    if automaton.has_epsilon:
        raise ValueError("enumerate_language requires an epsilon-free automaton")
    frontier: dict = {}
    for q, w in automaton.initial.items():
        if w < frontier.get((q, ()), INF):
            frontier[(q, ())] = w
    out: dict[tuple, float] = {}
    expanded = 0
    for length in range(max_len + 1):
        for (q, s), w in frontier.items():
            if q in automaton.final:
                out[s] = min(out.get(s, INF), w + automaton.final[q])
        if length == max_len:
            break
        nxt: dict = {}
        for (q, s), w in frontier.items():
            expanded += 1
            if expanded > budget:
                raise BudgetExceeded(f"more than {budget} (state, prefix) pairs")
            for t in automaton.arcs_from(q):
                key = (t.dst, s + (t.label,))
                if w + t.weight < nxt.get(key, INF):
                    nxt[key] = w + t.weight
        frontier = nxt
    return {s: w for s, w in out.items() if w < INF}


def language_edit_distance(x: Sequence[str], automaton: WeightedAutomaton, max_len: int,
                           costs: Optional[CostFunction] = None) -> float:
    """min over enumerated y of A(y) + d(x, y)."""
    x = tuple(x)
    c = resolve_costs(x, automaton, costs)
    lang = enumerate_language(automaton, max_len)
    return min((w + dp_edit_distance(x, y, c)[0] for y, w in lang.items()), default=INF)


def materialize_lattice(x: Sequence[str], automaton: WeightedAutomaton,
                        costs: CostFunction, budget: int = 1_000_000) -> tuple[EditLattice, AdjacencyGraph]:
    lattice = EditLattice(x, automaton, costs)
    n = automaton.num_states
    if lattice.num_levels * n > budget:
        raise BudgetExceeded(f"lattice has more than {budget} states")
    adj = {}
    for i in range(lattice.num_levels):
        band = lattice.band(i)
        for j, arcs in enumerate(band.out):
            adj[i * n + j] = arcs
    return lattice, AdjacencyGraph(adj)


def full_lattice_reference(x: Sequence[str], automaton: WeightedAutomaton,
                           costs: Optional[CostFunction] = None, budget: int = 1_000_000) -> float:
    """Edit distance by Dijkstra over the whole lattice, held in memory."""
    x = tuple(x)
    if automaton.num_states == 0:
        return INF
    c = resolve_costs(x, automaton, costs)
    lattice, graph = materialize_lattice(x, automaton, c, budget)
    d, _ = shortest_distance(graph, lattice.sources(), ShortestFirst())
    base = len(x) * automaton.num_states
    return min((d.get(base + j, INF) + rho for j, rho in automaton.final.items()), default=INF)


def compose_with_epsilons(t1, t2) -> tuple[WeightedTransducer, list[tuple[int, int]]]:
    """Composition honoring epsilons by letting one side move alone.

    An epsilon output of ``t1`` advances ``t1`` only; an epsilon input of
    ``t2`` advances ``t2`` only.  No epsilon filter: redundant paths are
    harmless under min.  Returns the machine and the pair behind each state.
    """
    t1 = t1.as_transducer() if isinstance(t1, WeightedAutomaton) else t1
    t2 = t2.as_transducer() if isinstance(t2, WeightedAutomaton) else t2
    ids: dict = {}
    pairs: list = []
    todo: deque = deque()

    def sid(p):
        if p not in ids:
            ids[p] = len(pairs)
            pairs.append(p)
            todo.append(p)
        return ids[p]

    initial = {}
    for q1, w1 in t1.initial.items():
        for q2, w2 in t2.initial.items():
            initial[sid((q1, q2))] = w1 + w2
    arcs = []
    while todo:
        q1, q2 = p = todo.popleft()
        src = ids[p]
        for a in t1.arcs_from(q1):
            if a.olabel is None:
                arcs.append(Transition(src, a.ilabel, None, a.weight, sid((a.dst, q2))))
                continue
            for b in t2.arcs_from(q2):
                if b.ilabel == a.olabel:
                    arcs.append(Transition(src, a.ilabel, b.olabel, a.weight + b.weight,
                                           sid((a.dst, b.dst))))
        for b in t2.arcs_from(q2):
            if b.ilabel is None:
                arcs.append(Transition(src, None, b.olabel, b.weight, sid((q1, b.dst))))
    final = {}
    for k, (q1, q2) in enumerate(pairs):
        if q1 in t1.final and q2 in t2.final:
            final[k] = t1.final[q1] + t2.final[q2]
    machine = WeightedTransducer(len(pairs), tuple(arcs), initial, final,
                                 t1.input_alphabet, t2.output_alphabet)
    return machine, pairs


def machine_shortest_distance(machine) -> float:
    """Min over accepting paths of the whole machine (labels ignored)."""
    graph = AdjacencyGraph.from_edges((t.src, t.dst, t.weight) for t in machine.transitions)
    d, _ = shortest_distance(graph, machine.initial.items(), ShortestFirst())
    return min((d.get(q, INF) + w for q, w in machine.final.items()), default=INF)


def bellman_ford(edges: Sequence[tuple], sources: dict) -> dict:
    """Fixpoint of repeated full relaxation passes."""
    d = dict(sources)
    states = set(d) | {u for u, _, _ in edges} | {v for _, v, _ in edges}
    for _ in range(len(states) + 1):
        changed = False
        for u, v, w in edges:
            if u in d and d[u] + w < d.get(v, INF):
                d[v] = d[u] + w
                changed = True
        if not changed:
            break
    return d
