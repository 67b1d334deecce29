"""Composition, and the lazily generated edit lattice U = X o T o A.

A lattice state ``(i, j)`` pairs a position ``i`` in the string (its level)
with a state ``j`` of the automaton; it is addressed as ``i * |Q_A| + j``.
Insertions stay on a level, deletions and substitutions advance one level.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

from .automata import (INF, AutomatonError, EpsilonError, Transition, WeightedAutomaton,
                       WeightedTransducer)
from .edits import CostFunction, EditOp, InvalidEditOp


class AlphabetMismatchError(AutomatonError):
    pass


def _as_transducer(m) -> WeightedTransducer:
    return m.as_transducer() if isinstance(m, WeightedAutomaton) else m


def compose(t1, t2) -> WeightedTransducer:
    """Epsilon-free composition restricted to pairs reachable from initial pairs.

    Pair states are numbered in breadth-first discovery order, initial pairs
    first in ascending order.
    """
    t1, t2 = _as_transducer(t1), _as_transducer(t2)
    if t1.has_epsilon or t2.has_epsilon:
        raise EpsilonError("compose requires epsilon-free machines")
    if t1.output_alphabet != t2.input_alphabet:
        raise AlphabetMismatchError(
            f"output alphabet {sorted(t1.output_alphabet)} != input alphabet {sorted(t2.input_alphabet)}")

    by_input: list[dict] = []
    for q in range(t2.num_states):
        idx: dict = {}
        for t in t2.arcs_from(q):
            idx.setdefault(t.ilabel, []).append(t)
        by_input.append(idx)

    ids: dict[tuple[int, int], int] = {}
    todo: deque = deque()

    def state(pair):
        k = ids.get(pair)
        if k is None:
            k = ids[pair] = len(ids)
            todo.append(pair)
        return k

    initial = {}
    for q1, w1 in sorted(t1.initial.items()):
        for q2, w2 in sorted(t2.initial.items()):
            initial[state((q1, q2))] = w1 + w2
    transitions = []
    while todo:
        q1, q2 = pair = todo.popleft()
        src = ids[pair]
        for a in t1.arcs_from(q1):
            for b in by_input[q2].get(a.olabel, ()):
                dst = state((a.dst, b.dst))
                transitions.append(Transition(src, a.ilabel, b.olabel, a.weight + b.weight, dst))
    final = {}
    for (q1, q2), k in ids.items():
        if q1 in t1.final and q2 in t2.final:
            final[k] = t1.final[q1] + t2.final[q2]
    return WeightedTransducer(len(ids), tuple(transitions), initial, final,
                              t1.input_alphabet, t2.output_alphabet)


class LatticeState(NamedTuple):
    level: int
    a_state: int


@dataclass(frozen=True)
class LevelBand:
    """The lattice arcs leaving level ``level``.

    ``out[j]`` lists ``(dst id, weight)`` for state ``(level, j)``:
    substitutions in automaton arc order, then the deletion, then the
    insertions.  The last level has insertions only.
    """

    level: int
    num_a_states: int
    out: tuple
    num_arcs: int

    def _split(self, same_level: bool) -> list[tuple[LatticeState, LatticeState, float]]:
        n, i = self.num_a_states, self.level
        res = []
        for j, arcs in enumerate(self.out):
            for dst, w in arcs:
                di, dj = divmod(dst, n)
                if (di == i) == same_level:
                    res.append((LatticeState(i, j), LatticeState(di, dj), w))
        return res

    @property
    def arcs_within(self):
        return self._split(True)

    @property
    def arcs_forward(self):
        return self._split(False)

    def states(self) -> Iterator[LatticeState]:
        return (LatticeState(self.level, j) for j in range(self.num_a_states))


class EditLattice:
    """Graph view of U = X o T_c o A, built one level band at a time.

    Bands are materialized on first use and kept until :meth:`retire`; the
    view also tracks how many arcs are resident.  One instance serves one
    shortest-distance run.
    """

    def __init__(self, x: Sequence[str], automaton: WeightedAutomaton, costs: CostFunction):
        if automaton.has_epsilon:
            raise EpsilonError("the automaton must be epsilon-free")
        self.x = tuple(x)
        self.automaton = automaton
        self.costs = costs
        n = self.num_a_states = automaton.num_states
        index, table = costs.index, costs.table
        try:
            self._rows = [table[index[s]] for s in self.x]
            labels = [index[t.label] for t in automaton.transitions]
        except KeyError as exc:
            raise InvalidEditOp(f"cost function does not cover symbol {exc.args[0]!r}") from None
        ins_row = table[0]
        ts = automaton.transitions
        # per automaton state: (dst, label index, arc weight) and (dst, insertion weight)
        self._subst = []
        self._ins = []
        for j in range(n):
            ks = automaton.out_ids[j]
            self._subst.append([(ts[k].dst, labels[k], ts[k].weight) for k in ks])
            self._ins.append([(ts[k].dst, ins_row[labels[k]] + ts[k].weight) for k in ks])
        if n:
            # C-level projections; the queue disciplines call these per push
            self.level = n.__rfloordiv__
            self.a_state = n.__rmod__
        self._bands: dict[int, LevelBand] = {}
        self._hot_level = -1
        self._hot_out: tuple = ()
        self.resident_arcs = 0
        self.peak_resident_arcs = 0

    @property
    def num_levels(self) -> int:
        return len(self.x) + 1

    def level(self, q: int) -> int:
        return q // self.num_a_states

    def a_state(self, q: int) -> int:
        return q % self.num_a_states

    def state_id(self, i: int, j: int) -> int:
        return i * self.num_a_states + j

    def state(self, q: int) -> LatticeState:
        return LatticeState(*divmod(q, self.num_a_states))

    def sources(self) -> list[tuple[int, float]]:
        return sorted((j, w) for j, w in self.automaton.initial.items() if w < INF)

    def initial_weight(self, q: LatticeState) -> float:
        return self.automaton.initial_weight(q.a_state) if q.level == 0 else INF

    def final_weight(self, q: LatticeState) -> float:
        return self.automaton.final_weight(q.a_state) if q.level == len(self.x) else INF

    def band(self, i: int) -> LevelBand:
        if not 0 <= i <= len(self.x):
            raise IndexError(f"level {i} outside 0..{len(self.x)}")
        n = self.num_a_states
        base = i * n
        ins = self._ins
        if i == len(self.x):
            out = tuple([(base + dst, w) for dst, w in ins[j]] for j in range(n))
        else:
            nxt = base + n
            row = self._rows[i]
            dele = row[0]
            subst = self._subst
            out = tuple(
                [(nxt + dst, row[lab] + w) for dst, lab, w in subst[j]]
                + [(nxt + j, dele)]
                + [(base + dst, w) for dst, w in ins[j]]
                for j in range(n)
            )
        return LevelBand(i, n, out, sum(map(len, out)))

    def arcs(self, q: int):
        i, j = divmod(q, self.num_a_states)
        if i == self._hot_level:
            return self._hot_out[j]
        band = self._bands.get(i)
        if band is None:
            band = self._bands[i] = self.band(i)
            self.resident_arcs += band.num_arcs
            if self.resident_arcs > self.peak_resident_arcs:
                self.peak_resident_arcs = self.resident_arcs
        self._hot_level, self._hot_out = i, band.out
        return band.out[j]

    def retire(self, level: int) -> None:
        for i in [i for i in self._bands if i < level]:
            self.resident_arcs -= self._bands.pop(i).num_arcs
        if self._hot_level < level:
            self._hot_level, self._hot_out = -1, ()

    def describe_arc(self, q: int, k: int) -> tuple[EditOp, int, int | None]:
        """Edit operation, destination and automaton transition id of the
        ``k``-th arc leaving lattice state ``q``.

        The transition id is ``None`` for deletions.
        """
        i, j = divmod(q, self.num_a_states)
        ks = self.automaton.out_ids[j]
        ts = self.automaton.transitions
        n = self.num_a_states
        if i < len(self.x):
            sym = self.x[i]
            if k < len(ks):
                t = ts[ks[k]]
                return EditOp(sym, t.label), (i + 1) * n + t.dst, ks[k]
            if k == len(ks):
                return EditOp(sym, None), (i + 1) * n + j, None
            k -= len(ks) + 1
        t = ts[ks[k]]
        return EditOp(None, t.label), i * n + t.dst, ks[k]


def edit_lattice_band(x: Sequence[str], automaton: WeightedAutomaton, costs: CostFunction,
                      i: int) -> LevelBand:
    return EditLattice(x, automaton, costs).band(i)


def initial_weight_at(x, automaton: WeightedAutomaton, q: LatticeState) -> float:
    return automaton.initial_weight(q.a_state) if q.level == 0 else INF


def final_weight_at(x, automaton: WeightedAutomaton, q: LatticeState) -> float:
    return automaton.final_weight(q.a_state) if q.level == len(x) else INF
