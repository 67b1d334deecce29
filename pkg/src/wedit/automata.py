"""Tropical weights, weighted transducers/automata and graph utilities."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence

INF = math.inf

#: Label used for the empty string on transitions.
EPSILON: None = None

Label = Optional[str]


class AutomatonError(ValueError):
    """Invalid machine or unsupported machine property."""


class EpsilonError(AutomatonError):
    """Raised by operations that only accept epsilon-free machines."""


class CyclicAutomatonError(AutomatonError):
    """Raised when a topological order is requested for a cyclic machine."""


def check_weight(value: float) -> float:
    w = float(value)
    # `not w >= 0` also rejects NaN
    if not w >= 0.0:
        raise AutomatonError(f"weights must be non-negative, got {value!r}")
    return w


class TropicalWeight(float):
    """An element of the tropical semiring (R+ U {inf}, min, +, inf, 0).

    It is a plain float with validation and the two semiring operations;
    hot loops in this package work on raw floats.
    """

    __slots__ = ()

    def __new__(cls, value: float = 0.0) -> "TropicalWeight":
        return super().__new__(cls, check_weight(value))

    @classmethod
    def zero(cls) -> "TropicalWeight":
        return cls(INF)

    @classmethod
    def one(cls) -> "TropicalWeight":
        return cls(0.0)

    def combine(self, other: float) -> "TropicalWeight":
        return TropicalWeight(min(float(self), float(other)))

    def extend(self, other: float) -> "TropicalWeight":
        return TropicalWeight(float(self) + float(other))

    def __repr__(self) -> str:
        return f"TropicalWeight({float(self)!r})"


@dataclass(frozen=True, slots=True)
class Transition:
    src: int
    ilabel: Label
    olabel: Label
    weight: float
    dst: int


@dataclass(frozen=True, slots=True)
class Arc:
    """Automaton transition: one label serves as input and output."""

    src: int
    label: Label
    weight: float
    dst: int

    @property
    def ilabel(self) -> Label:
        return self.label

    @property
    def olabel(self) -> Label:
        return self.label


def _check_map(name: str, weights: Mapping[int, float], num_states: int) -> dict[int, float]:
    out = {}
    for q, w in weights.items():
        if not 0 <= q < num_states:
            raise AutomatonError(f"{name} weight given for unknown state {q}")
        out[int(q)] = check_weight(w)
    return out


@dataclass(frozen=True)
class _Machine:
    num_states: int
    transitions: tuple
    initial: Mapping[int, float]
    final: Mapping[int, float]

    def _validate(self) -> None:
        if self.num_states < 0:
            raise AutomatonError("negative number of states")
        object.__setattr__(self, "transitions", tuple(self.transitions))
        object.__setattr__(self, "initial", _check_map("initial", self.initial, self.num_states))
        object.__setattr__(self, "final", _check_map("final", self.final, self.num_states))
        n = self.num_states
        for t in self.transitions:
            if not (0 <= t.src < n and 0 <= t.dst < n):
                raise AutomatonError(f"transition {t} references an unknown state")
            check_weight(t.weight)

    @property
    def num_arcs(self) -> int:
        return len(self.transitions)

    @property
    def size(self) -> int:
        """|Q| + |E|."""
        return self.num_states + len(self.transitions)

    @cached_property
    def out_ids(self) -> tuple[tuple[int, ...], ...]:
        """Transition ids leaving each state, in stored order."""
        adj: list[list[int]] = [[] for _ in range(self.num_states)]
        for k, t in enumerate(self.transitions):
            adj[t.src].append(k)
        return tuple(tuple(a) for a in adj)

    def arcs_from(self, q: int) -> list:
        ts = self.transitions
        return [ts[k] for k in self.out_ids[q]]

    @cached_property
    def has_epsilon(self) -> bool:
        return any(t.ilabel is None or t.olabel is None for t in self.transitions)

    def is_acyclic(self) -> bool:
        try:
            topological_order(self)
        except CyclicAutomatonError:
            return False
        return True

    def initial_weight(self, q: int) -> float:
        return self.initial.get(q, INF)

    def final_weight(self, q: int) -> float:
        return self.final.get(q, INF)

    def without_transitions(self, ids: Iterable[int]):
        drop = set(ids)
        kept = tuple(t for k, t in enumerate(self.transitions) if k not in drop)
        return replace(self, transitions=kept)

    def with_weights(self, initial: Mapping[int, float] | None = None,
                     final: Mapping[int, float] | None = None):
        """Copy with the initial and/or final weight maps replaced."""
        return replace(
            self,
            initial=self.initial if initial is None else initial,
            final=self.final if final is None else final,
        )


@dataclass(frozen=True)
class WeightedTransducer(_Machine):
    """T = (input alphabet, output alphabet, Q, I, F, E, lambda, rho).

    States are the dense ids ``0..num_states-1``; ``initial`` and ``final``
    map states to their weights and absent states weigh +inf.  Alphabets are
    inferred from the labels when not given.
    """

    input_alphabet: Optional[frozenset] = None
    output_alphabet: Optional[frozenset] = None

    def __post_init__(self) -> None:
        self._validate()
        ins = {t.ilabel for t in self.transitions} - {None}
        outs = {t.olabel for t in self.transitions} - {None}
        for name, used in (("input_alphabet", ins), ("output_alphabet", outs)):
            declared = getattr(self, name)
            if declared is None:
                object.__setattr__(self, name, frozenset(used))
            else:
                declared = frozenset(declared)
                if not used <= declared:
                    raise AutomatonError(f"labels {sorted(used - declared)} not in {name}")
                object.__setattr__(self, name, declared)


@dataclass(frozen=True)
class WeightedAutomaton(_Machine):
    """Weighted acceptor; transitions are :class:`Arc` with a single label."""

    alphabet: Optional[frozenset] = None

    def __post_init__(self) -> None:
        self._validate()
        for t in self.transitions:
            if not isinstance(t, Arc):
                raise AutomatonError("automaton transitions must be Arc instances")
        used = {t.label for t in self.transitions} - {None}
        if self.alphabet is None:
            object.__setattr__(self, "alphabet", frozenset(used))
        else:
            declared = frozenset(self.alphabet)
            if not used <= declared:
                raise AutomatonError(f"labels {sorted(used - declared)} not in alphabet")
            object.__setattr__(self, "alphabet", declared)

    @property
    def input_alphabet(self) -> frozenset:
        return self.alphabet

    @property
    def output_alphabet(self) -> frozenset:
        return self.alphabet

    def as_transducer(self) -> WeightedTransducer:
        return WeightedTransducer(
            self.num_states,
            tuple(Transition(t.src, t.label, t.label, t.weight, t.dst) for t in self.transitions),
            dict(self.initial),
            dict(self.final),
            self.alphabet,
            self.alphabet,
        )


def make_automaton(num_states: int, arcs: Iterable[tuple], initial: Mapping[int, float] | None = None,
                   final: Mapping[int, float] | None = None, alphabet=None) -> WeightedAutomaton:
    """Build an automaton from ``(src, label, weight, dst)`` tuples.

    ``initial`` defaults to ``{0: 0}``.
    """
    if initial is None:
        initial = {0: 0.0} if num_states else {}
    return WeightedAutomaton(
        num_states,
        tuple(Arc(s, lab, float(w), d) for s, lab, w, d in arcs),
        initial,
        final or {},
        alphabet,
    )


def string_to_automaton(x: Sequence[str], alphabet=None) -> WeightedAutomaton:
    """Chain acceptor of exactly ``x`` with weight 0, states in topological order."""
    x = tuple(x)
    n = len(x)
    return WeightedAutomaton(
        n + 1,
        tuple(Arc(i, sym, 0.0, i + 1) for i, sym in enumerate(x)),
        {0: 0.0},
        {n: 0.0},
        alphabet,
    )


def automaton_weight(machine: WeightedAutomaton, y: Sequence[str]) -> float:
    """A(y): min over accepting paths labeled ``y`` of lambda + path weight + rho."""
    if machine.has_epsilon:
        raise EpsilonError("automaton_weight requires an epsilon-free automaton")
    cur = {q: w for q, w in machine.initial.items() if w < INF}
    out_ids, ts = machine.out_ids, machine.transitions
    for sym in y:
        nxt: dict[int, float] = {}
        for q, w in cur.items():
            for k in out_ids[q]:
                t = ts[k]
                if t.label == sym:
                    nw = w + t.weight
                    if nw < nxt.get(t.dst, INF):
                        nxt[t.dst] = nw
        cur = nxt
        if not cur:
            return INF
    return min((w + machine.final[q] for q, w in cur.items() if q in machine.final), default=INF)


def mirror(machine):
    """Reverse every transition and exchange the initial and final maps."""
    if isinstance(machine, WeightedAutomaton):
        ts = tuple(Arc(t.dst, t.label, t.weight, t.src) for t in machine.transitions)
        return WeightedAutomaton(machine.num_states, ts, dict(machine.final),
                                 dict(machine.initial), machine.alphabet)
    ts = tuple(Transition(t.dst, t.ilabel, t.olabel, t.weight, t.src) for t in machine.transitions)
    return WeightedTransducer(machine.num_states, ts, dict(machine.final), dict(machine.initial),
                              machine.input_alphabet, machine.output_alphabet)


def topological_order(machine) -> list[int]:
    """Kahn's algorithm, smallest ready state first.

    Raises :class:`CyclicAutomatonError` if the transition graph has a cycle
    (self-loops included).
    """
    n = machine.num_states
    indeg = [0] * n
    for t in machine.transitions:
        indeg[t.dst] += 1
    ready = [q for q in range(n) if indeg[q] == 0]
    heapq.heapify(ready)
    order = []
    ts, out_ids = machine.transitions, machine.out_ids
    while ready:
        q = heapq.heappop(ready)
        order.append(q)
        for k in out_ids[q]:
            d = ts[k].dst
            indeg[d] -= 1
            if indeg[d] == 0:
                heapq.heappush(ready, d)
    if len(order) != n:
        raise CyclicAutomatonError("machine has a cycle")
    return order


@dataclass(frozen=True)
class BackEdgeMarking:
    """Result of :func:`mark_back_edges`.

    ``order`` is the reverse DFS postorder, which is a topological order of
    the machine once ``back_edges`` (transition ids) are removed.
    """

    back_edges: frozenset
    order: tuple
    preorder: tuple = field(default=())

    @cached_property
    def position(self) -> list[int]:
        pos = [0] * len(self.order)
        for r, q in enumerate(self.order):
            pos[q] = r
        return pos


def mark_back_edges(machine) -> BackEdgeMarking:
    """Deterministic DFS marking back edges.

    Roots are tried in order: initial states by ascending id, then every state
    by ascending id.  Children follow stored transition order.
    """
    n = machine.num_states
    ts, out_ids = machine.transitions, machine.out_ids
    WHITE, GRAY, BLACK = 0, 1, 2
    color = [WHITE] * n
    back: set[int] = set()
    post: list[int] = []
    pre: list[int] = []
    for root in [*sorted(machine.initial), *range(n)]:
        if color[root] != WHITE:
            continue
        color[root] = GRAY
        pre.append(root)
        stack = [(root, iter(out_ids[root]))]
        while stack:
            q, it = stack[-1]
            for k in it:
                d = ts[k].dst
                if color[d] == GRAY:
                    back.add(k)
                elif color[d] == WHITE:
                    color[d] = GRAY
                    pre.append(d)
                    stack.append((d, iter(out_ids[d])))
                    break
            else:
                color[q] = BLACK
                post.append(q)
                stack.pop()
    return BackEdgeMarking(frozenset(back), tuple(reversed(post)), tuple(pre))
