import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wedit import (INF, Alignment, CostFunction, EditOp, InvalidEditOp, alignment_cost,
                   apply_morphism, edit_cost_transducer, levenshtein_costs, string_to_automaton)
from wedit.oracle import compose_with_epsilons, dp_edit_distance, machine_shortest_distance

lev = levenshtein_costs("ab")
symbols = st.sampled_from([None, "a", "b", "c"])
ops = st.tuples(symbols, symbols).filter(lambda p: p != (None, None)).map(lambda p: EditOp(*p))
alignments = st.lists(ops, max_size=8).map(lambda xs: Alignment(tuple(xs)))


def test_levenshtein_values():
    assert lev("a", "a") == 0
    assert lev("a", None) == lev(None, "a") == 1
    assert lev("a", "b") == 1


def test_eps_eps_rejected():
    with pytest.raises(InvalidEditOp):
        EditOp(None, None)
    with pytest.raises(InvalidEditOp):
        lev(None, None)
    assert lev.table[0][0] == INF


def test_unknown_symbol_rejected():
    with pytest.raises(InvalidEditOp):
        lev("z", "a")
    with pytest.raises(InvalidEditOp):
        CostFunction("ab", {("a", "z"): 1})


def test_negative_cost_rejected():
    with pytest.raises(InvalidEditOp):
        CostFunction("ab", {("a", "b"): -1})


def test_partial_costs_default_to_levenshtein():
    c = CostFunction("ab", {("a", "b"): 0.5, (None, "b"): 2})
    assert c("a", "b") == 0.5
    assert c(None, "b") == 2
    assert c("b", "a") == 1
    assert c("a", "a") == 0
    assert c("b", None) == 1


def test_extended_keeps_costs():
    c = CostFunction("ab", {("a", "b"): 0.5}).extended("c")
    assert c("a", "b") == 0.5
    assert c("c", "a") == 1
    assert c.covers("abc")


def test_edit_op_kinds():
    assert EditOp("a", "a").kind == "match"
    assert EditOp("a", "b").kind == "substitution"
    assert EditOp("a", None).kind == "deletion"
    assert EditOp(None, "a").kind == "insertion"
    assert repr(EditOp("a", None)) == "(a,ε)"


def test_alignment_cost_examples():
    assert alignment_cost(lev, Alignment()) == 0
    w = Alignment.from_pairs([("a", "a"), ("b", None), ("a", "a")])
    assert alignment_cost(lev, w) == 1


def test_alignment_cost_fold():
    rng = random.Random(11)
    c = CostFunction("abc", {(a, b): rng.randint(0, 9) for a in (None, *"abc") for b in (None, *"abc")
                             if (a, b) != (None, None)})
    for _ in range(50):
        pairs = []
        while len(pairs) < 10:
            a, b = rng.choice((None, *"abc")), rng.choice((None, *"abc"))
            if (a, b) != (None, None):
                pairs.append((a, b))
        total = 0
        for a, b in pairs:
            total += c.table[c.index[a]][c.index[b]]
        assert alignment_cost(c, Alignment.from_pairs(pairs)) == total


@given(alignments, alignments)
def test_alignment_cost_additive(w1, w2):
    c = levenshtein_costs("abc")
    assert alignment_cost(c, w1 + w2) == alignment_cost(c, w1) + alignment_cost(c, w2)


def test_apply_morphism_examples():
    assert apply_morphism(Alignment.from_pairs([("a", "a"), ("b", None), ("a", "a")])) == (
        tuple("aba"), tuple("aa"))
    assert apply_morphism(Alignment()) == ((), ())
    assert apply_morphism(Alignment.from_pairs([(None, "b"), ("a", "b")])) == (("a",), ("b", "b"))


@given(alignments)
def test_apply_morphism_concatenates(w):
    x, y = apply_morphism(w)
    assert len(x) + len(y) >= len(w)
    half = len(w) // 2
    x1, y1 = apply_morphism(w[:half])
    x2, y2 = apply_morphism(w[half:])
    assert (x1 + x2, y1 + y2) == (x, y)


def test_alignment_slicing_and_pairs():
    w = Alignment.from_pairs([("a", "b"), (None, "c")])
    assert isinstance(w[:1], Alignment)
    assert w[1] == EditOp(None, "c")
    assert w.pairs() == [("a", "b"), (None, "c")]


def test_edit_transducer_ab():
    t = edit_cost_transducer(lev)
    assert t.num_states == 1
    assert t.initial == {0: 0.0} and t.final == {0: 0.0}
    assert t.num_arcs == 8
    assert all(e.src == e.dst == 0 for e in t.transitions)
    subst = [e for e in t.transitions if e.ilabel is not None and e.olabel is not None]
    assert sorted(e.weight for e in subst) == [0, 0, 1, 1]
    assert sum(e.ilabel is None for e in t.transitions) == 2
    assert sum(e.olabel is None for e in t.transitions) == 2


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_edit_transducer_size(n):
    alphabet = "abcdefg"[:n]
    t = edit_cost_transducer(levenshtein_costs(alphabet))
    assert t.num_arcs == (n + 1) ** 2 - 1
    assert len({(e.ilabel, e.olabel) for e in t.transitions}) == t.num_arcs


def _transducer_value(x, y, costs):
    t = edit_cost_transducer(costs)
    xt, _ = compose_with_epsilons(string_to_automaton(x), t)
    u, _ = compose_with_epsilons(xt, string_to_automaton(y))
    return machine_shortest_distance(u)


def test_edit_transducer_ab_ba():
    assert _transducer_value("ab", "ba", lev) == dp_edit_distance("ab", "ba")[0] == 2


@given(st.text("ab", max_size=4), st.text("ab", max_size=4))
def test_edit_transducer_is_edit_distance(x, y):
    assert _transducer_value(x, y, lev) == dp_edit_distance(x, y, lev)[0]


def test_sampled_alignments_bounded_below_by_dp():
    rng = random.Random(2)
    c = levenshtein_costs("abc")
    for _ in range(40):
        x = "".join(rng.choice("abc") for _ in range(rng.randint(0, 8)))
        y = "".join(rng.choice("abc") for _ in range(rng.randint(0, 8)))
        d, w = dp_edit_distance(x, y, c)
        assert apply_morphism(w) == (tuple(x), tuple(y))
        assert alignment_cost(c, w) == d
        for _ in range(20):
            # random walk through the alignment grid
            i = j = 0
            pairs = []
            while i < len(x) or j < len(y):
                moves = []
                if i < len(x):
                    moves.append((x[i], None))
                if j < len(y):
                    moves.append((None, y[j]))
                if i < len(x) and j < len(y):
                    moves.append((x[i], y[j]))
                a, b = rng.choice(moves)
                i += a is not None
                j += b is not None
                pairs.append((a, b))
            assert alignment_cost(c, Alignment.from_pairs(pairs)) >= d
