"""Generic single-source shortest distance over the tropical semiring.

The algorithm is parameterized by a queue discipline: the rule deciding which
queued state is extracted next.  A graph view is any object with an
``arcs(q)`` method returning a sequence of ``(dst, weight)`` pairs; views
whose states have levels also expose ``level(q)`` and may implement
``retire(level)`` to drop the arcs of every level below ``level``.
"""

from __future__ import annotations

import gc
import heapq
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Mapping, Optional, Sequence

from .automata import INF, BackEdgeMarking

State = Hashable


class NegativeWeightError(ValueError):
    pass


class TopologicalViolation(ValueError):
    """An arc went backward with respect to a topological queue order."""


class LevelOrderError(ValueError):
    """A state was queued at a level that has already been retired."""


@dataclass
class RunStats:
    """Event tallies of one or more shortest-distance runs.

    ``relaxations`` counts arcs examined, ``improvements`` the subset that
    lowered a tentative distance.
    """

    max_dequeues: int = 0
    total_dequeues: int = 0
    relaxations: int = 0
    improvements: int = 0
    peak_resident_states: int = 0
    peak_resident_arcs: int = 0
    dequeues_per_state: Optional[Counter] = None

    def absorb(self, other: "RunStats") -> None:
        """Fold in the stats of another run (peaks are maxima, counts add)."""
        self.max_dequeues = max(self.max_dequeues, other.max_dequeues)
        self.total_dequeues += other.total_dequeues
        self.relaxations += other.relaxations
        self.improvements += other.improvements
        self.peak_resident_states = max(self.peak_resident_states, other.peak_resident_states)
        self.peak_resident_arcs = max(self.peak_resident_arcs, other.peak_resident_arcs)

    def report(self) -> str:
        keys = ("max_dequeues", "total_dequeues", "relaxations", "improvements",
                "peak_resident_states", "peak_resident_arcs")
        return "\n".join(f"{k}={getattr(self, k)}" for k in keys)


class AdjacencyGraph:
    """Eagerly stored graph view."""

    def __init__(self, adjacency: Mapping[State, Sequence[tuple[State, float]]],
                 levels: Optional[Mapping[State, int]] = None):
        self._adj = {}
        for q, arcs in adjacency.items():
            arcs = [(dst, float(w)) for dst, w in arcs]
            for _, w in arcs:
                if not w >= 0:
                    raise NegativeWeightError(f"arc weight {w} out of {q!r}")
            self._adj[q] = arcs
        self._levels = levels
        self.peak_resident_arcs = sum(len(a) for a in self._adj.values())

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[State, State, float]], **kw) -> "AdjacencyGraph":
        adj: dict = {}
        for u, v, w in edges:
            adj.setdefault(u, []).append((v, w))
        return cls(adj, **kw)

    def arcs(self, q: State) -> Sequence[tuple[State, float]]:
        return self._adj.get(q, ())

    def level(self, q: State) -> int:
        if self._levels is None:
            raise TypeError("graph has no levels")
        return self._levels[q]

    def states(self) -> set:
        out = set(self._adj)
        for arcs in self._adj.values():
            out.update(dst for dst, _ in arcs)
        return out


# -- queue disciplines -------------------------------------------------------
#
# A discipline is an immutable description; ``new_queue(graph)`` returns the
# mutable queue for one run.  Queues implement push(q, dist), update(q, dist)
# (called when a queued state's distance drops), pop() and __len__.


class QueueDiscipline:
    kind = "abstract"
    #: whether queues reorder when a queued state's distance drops
    tracks_distance = False

    def new_queue(self, graph):
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"<{self.kind} discipline>"


class _FifoQueue:
    def __init__(self, lifo: bool = False):
        self._items: deque = deque()
        self.pop = self._items.pop if lifo else self._items.popleft

    def push(self, q, dist):
        self._items.append(q)

    def update(self, q, dist):
        pass

    def __len__(self):
        return len(self._items)


class Fifo(QueueDiscipline):
    kind = "fifo"

    def new_queue(self, graph):
        return _FifoQueue()


class Lifo(QueueDiscipline):
    kind = "lifo"

    def new_queue(self, graph):
        return _FifoQueue(lifo=True)


class _ShortestFirstQueue:
    # Binary heap; a decrease pushes a fresh entry and stale ones are skipped.
    __slots__ = ("_heap", "_key")

    def __init__(self):
        self._heap: list = []
        self._key: dict = {}

    def push(self, q, dist):
        self._key[q] = dist
        heapq.heappush(self._heap, (dist, q))

    update = push

    def pop(self):
        heap, key = self._heap, self._key
        while True:
            dist, q = heapq.heappop(heap)
            if key.get(q) == dist:
                del key[q]
                return q

    def __len__(self):
        return len(self._key)


class ShortestFirst(QueueDiscipline):
    """Dijkstra order: smallest tentative distance, then smallest state."""

    kind = "shortest_first"
    tracks_distance = True

    def new_queue(self, graph):
        return _ShortestFirstQueue()


class _RankQueue:
    # push/pop are closures bound per queue: they run once per relaxation
    __slots__ = ("push", "pop", "_heap")

    def __init__(self, position, key=None):
        heap: list = []
        last = [-1]
        heappush, heappop = heapq.heappush, heapq.heappop

        def push(q, dist):
            r = position[q if key is None else key(q)]
            if r < last[0]:
                raise TopologicalViolation(f"state {q!r} queued after a later state was extracted")
            heappush(heap, (r, q))

        def pop():
            r, q = heappop(heap)
            last[0] = r
            return q

        self._heap = heap
        self.push, self.pop = push, pop

    def update(self, q, dist):
        pass

    def __len__(self):
        return len(self._heap)


class TopologicalOrder(QueueDiscipline):
    """Extract by position in ``order``.

    ``key`` maps a graph state to the element of ``order`` it is ranked by;
    the edit-distance driver uses it to rank lattice states by their
    automaton state.
    """

    kind = "topological"

    def __init__(self, order: Sequence[State], key: Optional[Callable[[State], State]] = None):
        self.order = tuple(order)
        self.key = key
        self._pos = {s: r for r, s in enumerate(self.order)}

    def rank(self, q: State) -> int:
        return self._pos[q if self.key is None else self.key(q)]

    def new_queue(self, graph):
        return _RankQueue(self._pos, self.key)


class _BackEdgeQueue:
    __slots__ = ("_pos", "_key", "_count", "_heap")

    def __init__(self, position: Sequence[int], key):
        self._pos = position
        self._key = key
        self._count: dict = {}
        self._heap: list = []

    def push(self, q, dist):
        c = self._count.get(q, 0) + 1
        self._count[q] = c
        heapq.heappush(self._heap, (c, self._pos[self._key(q)], q))

    def update(self, q, dist):
        pass

    def pop(self):
        return heapq.heappop(self._heap)[2]

    def __len__(self):
        return len(self._heap)


class BackEdgeCount(QueueDiscipline):
    """Order by how often a state has been enqueued, then by its position in
    the topological order that ignores marked back edges."""

    kind = "back_edge_count"

    def __init__(self, marking: BackEdgeMarking, key: Optional[Callable[[State], int]] = None):
        self.marking = marking
        self.key = key

    def new_queue(self, graph):
        key = self.key if self.key is not None else (lambda q: q)
        return _BackEdgeQueue(self.marking.position, key)


def _ignore(q, dist):
    pass


class _LevelMetaQueue:
    def __init__(self, underlying: QueueDiscipline, graph, level_of):
        if not underlying.tracks_distance:
            self.update = _ignore
        self._underlying = underlying
        self._graph = graph
        self.level_of = level_of
        # per level: [sub push, number queued, states ever pushed, sub-queue, sub pop]
        self._levels: dict[int, list] = {}
        self._cur: Optional[list] = None
        self.current_level: Optional[int] = None
        levels = self._levels
        hot = [None, None]  # level and entry of the last push

        def push(q, dist):
            lvl = level_of(q)
            if lvl == hot[0]:
                entry = hot[1]
            else:
                entry = levels.get(lvl)
                if entry is None:
                    if self.current_level is not None and lvl < self.current_level:
                        raise LevelOrderError(f"state {q!r} at retired level {lvl}")
                    sub = underlying.new_queue(graph)
                    entry = levels[lvl] = [sub.push, 0, [], sub, sub.pop]
                hot[0], hot[1] = lvl, entry
            entry[0](q, dist)
            entry[1] += 1
            entry[2].append(q)

        self.push = push
        self._hot = hot

    def update(self, q, dist):
        self._levels[self.level_of(q)][3].update(q, dist)

    def pop(self):
        entry = self._cur
        if entry is None or not entry[1]:
            levels = self._levels
            lvl = min(lv for lv, e in levels.items() if e[1])
            self.current_level = lvl
            entry = self._cur = levels[lvl]
        entry[1] -= 1
        return entry[4]()

    def retire_below(self, level: int) -> list:
        """Forget the levels below ``level``; return the states they held."""
        gone = []
        for lv in [lv for lv in self._levels if lv < level]:
            gone.extend(self._levels.pop(lv)[2])
        if self._hot[0] is not None and self._hot[0] < level:
            self._hot[0] = self._hot[1] = None
        return gone

    def __len__(self):
        return sum(e[1] for e in self._levels.values())


class LevelMeta(QueueDiscipline):
    """Lower level strictly first; within a level defer to ``underlying``.

    Runs under this discipline retire every level below the current one as
    soon as the first state of a new level is extracted.
    """

    kind = "level_meta"

    @property
    def tracks_distance(self) -> bool:
        return self.underlying.tracks_distance

    def __init__(self, underlying: QueueDiscipline, level: Optional[Callable[[State], int]] = None):
        self.underlying = underlying
        self.level = level

    def new_queue(self, graph):
        level_of = self.level if self.level is not None else graph.level
        return _LevelMetaQueue(self.underlying, graph, level_of)

    def __repr__(self) -> str:
        return f"<level_meta({self.underlying.kind}) discipline>"


def make_level_meta(underlying: QueueDiscipline, level=None) -> LevelMeta:
    return LevelMeta(underlying, level)


def make_back_edge_discipline(marking: BackEdgeMarking, key=None) -> BackEdgeCount:
    return BackEdgeCount(marking, key)


# -- the algorithm -----------------------------------------------------------


def shortest_distance(graph, sources: Iterable[tuple[State, float]], discipline: QueueDiscipline, *,
                      parents: Optional[dict] = None, trace: Optional[Callable] = None,
                      record_dequeues: bool = False) -> tuple[dict, RunStats]:
    """Shortest distances from weighted ``sources`` to every reached state.

    Extract the head of the queue, relax each of its arcs, and enqueue any
    destination whose distance strictly improved and that is not already
    queued.  A state is re-extracted whenever it improves after extraction.

    ``parents``, if given, is filled with ``dst -> (src, arc index)`` for the
    arc that last improved ``dst``.  ``trace(event, state, value)`` is called
    on every ``"dequeue"`` and ``"improve"`` event.

    Under a :class:`LevelMeta` discipline only the current and the next level
    stay resident, so the returned map holds just the last levels reached.
    """
    # the run allocates many small acyclic tuples; cyclic collection only slows it
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        return _run(graph, sources, discipline, parents, trace, record_dequeues)
    finally:
        if was_enabled:
            gc.enable()


def _run(graph, sources, discipline, parents, trace, record_dequeues):
    queue = discipline.new_queue(graph)
    leveled = hasattr(queue, "retire_below")
    retire = getattr(graph, "retire", None)
    arcs_of = graph.arcs
    stats = RunStats()
    per_state = Counter() if record_dequeues else None

    d: dict = {}
    for q, w in sources:
        w = float(w)
        if not w >= 0:
            raise NegativeWeightError(f"source weight {w} at {q!r}")
        if w < d.get(q, INF):
            d[q] = w
    in_queue = set()
    push, update, pop = queue.push, queue.update, queue.pop
    for q in sorted(d):
        push(q, d[q])
        in_queue.add(q)

    peak = len(d)
    counts: dict = {}
    max_n = total = relax = improved = 0
    level = None
    while in_queue:
        q = pop()
        in_queue.discard(q)
        if leveled and queue.current_level != level:
            level = queue.current_level
            # d only grows between retirements, so its peak is sampled here
            if len(d) > peak:
                peak = len(d)
            # nothing below the extracted level can be read or written again
            for s in queue.retire_below(level):
                d.pop(s, None)
                counts.pop(s, None)
            if retire is not None:
                retire(level)
        n_q = counts.get(q, 0) + 1
        counts[q] = n_q
        if n_q > max_n:
            max_n = n_q
        total += 1
        if per_state is not None:
            per_state[q] += 1
        dq = d[q]
        if trace is not None:
            trace("dequeue", q, dq)
        arcs = arcs_of(q)
        relax += len(arcs)
        for k, (dst, w) in enumerate(arcs):
            nd = dq + w
            old = d.get(dst)
            if old is not None and not nd < old:
                continue
            if nd < dq:
                raise NegativeWeightError(f"negative arc weight {w} from {q!r} to {dst!r}")
            improved += 1
            d[dst] = nd
            if parents is not None:
                parents[dst] = (q, k)
            if trace is not None:
                trace("improve", dst, nd)
            if old is None:
                push(dst, nd)
                in_queue.add(dst)
            elif dst in in_queue:
                update(dst, nd)
            else:
                push(dst, nd)
                in_queue.add(dst)

    stats.max_dequeues = max_n
    stats.total_dequeues = total
    stats.relaxations = relax
    stats.improvements = improved
    stats.peak_resident_states = max(peak, len(d))
    stats.peak_resident_arcs = getattr(graph, "peak_resident_arcs", 0)
    stats.dequeues_per_state = per_state
    return d, stats
