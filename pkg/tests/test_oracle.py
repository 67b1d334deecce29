import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wedit import (INF, CostFunction, alignment_cost, apply_morphism, levenshtein_costs,
                   make_automaton, string_to_automaton)
from wedit.oracle import (BudgetExceeded, bellman_ford, dp_edit_distance, enumerate_language,
                          exhaustive_edit_distance, full_lattice_reference, language_edit_distance)

from .strategies import random_acyclic, random_string

short = st.text("abc", max_size=5)


def test_kitten_sitting():
    assert dp_edit_distance("kitten", "sitting")[0] == 3
    assert exhaustive_edit_distance("kitten", "sitting") == 3


@given(st.text("abc", max_size=6))
def test_empty_against_string(y):
    c = CostFunction("abc", {(None, "a"): 2, (None, "b"): 3})
    assert dp_edit_distance("", y, c)[0] == sum(c(None, s) for s in y)


@given(short)
def test_self_distance(x):
    assert dp_edit_distance(x, x)[0] == 0


@given(short, short)
def test_dp_equals_exhaustive(x, y):
    assert dp_edit_distance(x, y)[0] == exhaustive_edit_distance(x, y)


def test_dp_equals_exhaustive_weighted():
    rng = random.Random(31)
    for _ in range(100):
        c = CostFunction("abc", {(p, q): rng.randint(0, 5) for p in (None, *"abc") for q in (None, *"abc")
                                 if (p, q) != (None, None)})
        x, y = random_string(rng, 5), random_string(rng, 5)
        d, w = dp_edit_distance(x, y, c)
        assert d == exhaustive_edit_distance(x, y, c)
        assert apply_morphism(w) == (tuple(x), tuple(y))
        assert alignment_cost(c, w) == d


@given(short, short, short)
def test_triangle_inequality(x, y, z):
    c = levenshtein_costs("abc")
    assert dp_edit_distance(x, z, c)[0] <= dp_edit_distance(x, y, c)[0] + dp_edit_distance(y, z, c)[0]


def test_enumerate_chain():
    assert enumerate_language(string_to_automaton("ab"), 3) == {("a", "b"): 0.0}
    assert enumerate_language(string_to_automaton("ab"), 1) == {}


def test_enumerate_loop():
    a = make_automaton(1, [(0, "a", 2, 0), (0, "a", 3, 0)], final={0: 1})
    assert enumerate_language(a, 2) == {(): 1.0, ("a",): 3.0, ("a", "a"): 5.0}


def test_enumerate_two_paths():
    a = make_automaton(6, [(0, "a", 0.1, 1), (1, "a", 0.2, 2), (2, "b", 0.6, 3),
                           (0, "a", 0.2, 4), (4, "a", 0.4, 5), (5, "b", 0.5, 3)], final={3: 0.8})
    lang = enumerate_language(a, 5)
    assert list(lang) == [("a", "a", "b")]
    assert lang[("a", "a", "b")] == pytest.approx(1.7)


def test_enumerate_budget():
    a = make_automaton(1, [(0, s, 0, 0) for s in "abc"], final={0: 0})
    with pytest.raises(BudgetExceeded):
        enumerate_language(a, 12, budget=1000)


def test_full_lattice_reference_string_case():
    rng = random.Random(32)
    for _ in range(50):
        x, y = random_string(rng, 7), random_string(rng, 7)
        assert full_lattice_reference(x, string_to_automaton(y)) == dp_edit_distance(x, y)[0]


def test_full_lattice_reference_empty_string():
    a = make_automaton(3, [(0, "a", 2, 1), (1, "b", 0, 2), (0, "c", 5, 2)], final={1: 4, 2: 0})
    # insertion paths: to 1 costs 1 + 2, to 2 via 1 costs 1 + 2 + 1 + 0, direct 1 + 5
    assert full_lattice_reference("", a) == min(3 + 4, 4 + 0, 6 + 0)


def test_full_lattice_reference_budget():
    with pytest.raises(BudgetExceeded):
        full_lattice_reference("a" * 50, string_to_automaton("a" * 50), budget=100)


def test_language_oracle_agrees_with_lattice_oracle():
    rng = random.Random(33)
    for _ in range(40):
        a = random_acyclic(rng, 6)
        x = random_string(rng, 5)
        assert language_edit_distance(x, a, a.num_states) == full_lattice_reference(x, a)


def test_bellman_ford_basic():
    d = bellman_ford([(0, 1, 4), (0, 2, 1), (2, 1, 1), (3, 0, 1)], {0: 0})
    assert d == {0: 0, 1: 2, 2: 1}
    assert 3 not in d and d.get(3, INF) == INF
