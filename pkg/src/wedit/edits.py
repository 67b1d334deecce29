"""Edit operations, alignments, edit cost functions and the edit transducer."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .automata import INF, Transition, WeightedTransducer, check_weight

Symbol = Optional[str]


class InvalidEditOp(ValueError):
    """An edit operation outside the domain of a cost function."""


@dataclass(frozen=True, slots=True)
class EditOp:
    input: Symbol
    output: Symbol

    def __post_init__(self) -> None:
        if self.input is None and self.output is None:
            raise InvalidEditOp("(eps, eps) is not an edit operation")

    @property
    def kind(self) -> str:
        if self.input is None:
            return "insertion"
        if self.output is None:
            return "deletion"
        return "match" if self.input == self.output else "substitution"

    def __repr__(self) -> str:
        return f"({self.input or 'ε'},{self.output or 'ε'})"


@dataclass(frozen=True)
class Alignment(Sequence):
    """A sequence of edit operations."""

    ops: tuple = ()

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Symbol, Symbol]]) -> "Alignment":
        return cls(tuple(EditOp(a, b) for a, b in pairs))

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Alignment(self.ops[i])
        return self.ops[i]

    def __len__(self) -> int:
        return len(self.ops)

    def __iter__(self) -> Iterator[EditOp]:
        return iter(self.ops)

    def __add__(self, other: "Alignment") -> "Alignment":
        return Alignment(self.ops + tuple(other))

    def pairs(self) -> list[tuple[Symbol, Symbol]]:
        return [(op.input, op.output) for op in self.ops]


class CostFunction:
    """Edit costs as a dense table over (alphabet + eps)^2.

    Row/column 0 is epsilon, symbol ``s`` lives at ``index[s]``.  The
    (eps, eps) cell holds +inf and lookups of it raise.
    """

    def __init__(self, alphabet: Iterable[str], costs: Mapping[tuple[Symbol, Symbol], float] | None = None):
        self.symbols = tuple(sorted(set(alphabet)))
        self.index: dict[Symbol, int] = {None: 0}
        for k, s in enumerate(self.symbols, 1):
            self.index[s] = k
        n = len(self.symbols) + 1
        # cells not given in ``costs`` take Levenshtein values
        table = [[0.0 if a == b else 1.0 for b in range(n)] for a in range(n)]
        for (a, b), w in (costs or {}).items():
            if a is None and b is None:
                raise InvalidEditOp("(eps, eps) is not an edit operation")
            try:
                table[self.index[a]][self.index[b]] = check_weight(w)
            except KeyError:
                raise InvalidEditOp(f"({a!r}, {b!r}) uses a symbol outside the alphabet") from None
            except ValueError as exc:
                raise InvalidEditOp(f"cost of ({a!r}, {b!r}): {exc}") from None
        table[0][0] = INF
        self.table = table

    @property
    def alphabet(self) -> frozenset:
        return frozenset(self.symbols)

    def __call__(self, a: Symbol, b: Symbol) -> float:
        try:
            ia, ib = self.index[a], self.index[b]
        except KeyError:
            raise InvalidEditOp(f"({a!r}, {b!r}) uses a symbol outside the alphabet") from None
        if ia == 0 and ib == 0:
            raise InvalidEditOp("(eps, eps) is not an edit operation")
        return self.table[ia][ib]

    def ops(self) -> Iterator[EditOp]:
        """Every element of the edit alphabet, epsilon first, then by symbol."""
        labels = (None, *self.symbols)
        for a in labels:
            for b in labels:
                if a is not None or b is not None:
                    yield EditOp(a, b)

    def covers(self, symbols: Iterable[str]) -> bool:
        return all(s in self.index for s in symbols)

    def extended(self, alphabet: Iterable[str]) -> "CostFunction":
        """Same costs over a larger alphabet; new cells take Levenshtein values."""
        keep = {}
        for op in self.ops():
            keep[(op.input, op.output)] = self(op.input, op.output)
        return CostFunction(set(self.symbols) | set(alphabet), keep)

    def __repr__(self) -> str:
        return f"CostFunction(symbols={self.symbols!r})"


def levenshtein_costs(alphabet: Iterable[str]) -> CostFunction:
    return CostFunction(alphabet)


def alignment_cost(costs: CostFunction, alignment: Iterable[EditOp]) -> float:
    total = 0.0
    for op in alignment:
        total += costs(op.input, op.output)
    return total


def apply_morphism(alignment: Iterable[EditOp]) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Input and output projections of an alignment, epsilons dropped."""
    ops = list(alignment)
    return (tuple(op.input for op in ops if op.input is not None),
            tuple(op.output for op in ops if op.output is not None))


def edit_cost_transducer(costs: CostFunction) -> WeightedTransducer:
    """One-state transducer with a self-loop per edit operation."""
    loops = tuple(Transition(0, op.input, op.output, costs(op.input, op.output), 0) for op in costs.ops())
    return WeightedTransducer(1, loops, {0: 0.0}, {0: 0.0}, costs.alphabet, costs.alphabet)
