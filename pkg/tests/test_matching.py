import pytest
from hypothesis import given, settings

from bicliquesat import BipartiteGraph, CnfFormula, Matching, Rng, assignment_from_matching, incidence_graph, is_matched, maximum_matching, random_formula, random_graph
from bicliquesat.matching import hopcroft_karp
from bicliquesat.oracle import brute_force_matching

from .conftest import complete, graphs


def test_small_examples():
    # two clauses over a single variable cannot both be matched
    assert not is_matched(BipartiteGraph(1, [[0], [0]]))
    assert is_matched(BipartiteGraph(2, [[0, 1], [0]]))
    assert is_matched(BipartiteGraph(0, []))
    assert not is_matched(BipartiteGraph(3, [[]]))
    assert len(maximum_matching(complete(3, 5))) == 3


def test_greedy_trap_needs_augmenting_path():
    # greedy picks 0 for clause 0, leaving clause 1 stuck without augmentation
    adj = [[0, 1], [0], [1, 2], [2, 3], [3]]
    match = hopcroft_karp(adj, 4)
    assert sorted(v for v in match if v >= 0) == [0, 1, 2, 3]


def test_matching_respects_removed_vertices():
    g = BipartiteGraph(2, [[0, 1], [0, 1], [0]])
    assert not is_matched(g)
    g.remove_right(2)
    assert is_matched(g)
    g.remove_left(1)
    assert not is_matched(g)


@settings(max_examples=300)
@given(graphs(max_left=7, max_right=7))
def test_maximum_matching_agrees_with_brute_force(g):
    matching = maximum_matching(g)
    assert matching.is_valid(g)
    assert len(matching) == brute_force_matching(g)
    assert is_matched(g) == (len(matching) == g.n_right)


@settings(max_examples=200)
@given(graphs(max_left=6, max_right=6))
def test_matching_is_invariant_under_right_relabelling(g):
    reversed_graph = BipartiteGraph(g.n_left, list(reversed(g.right_adj)))
    assert len(maximum_matching(reversed_graph)) == len(maximum_matching(g))


def test_assignment_from_matching_satisfies_formula():
    rng = Rng(11)
    found = 0
    for _ in range(200):
        f = random_formula(random_graph(30, 20, 3, rng), rng)
        matching = maximum_matching(incidence_graph(f))
        if len(matching) == f.n_clauses:
            found += 1
            assert f.is_satisfied_by(assignment_from_matching(f, matching))
    assert found > 150


def test_assignment_from_matching_rejects_partial():
    f = CnfFormula(1, [(1,), (-1,)])
    with pytest.raises(ValueError):
        assignment_from_matching(f, Matching({0: 0}))
    with pytest.raises(ValueError):
        assignment_from_matching(f, Matching({0: 0, 1: 0}))


def test_large_matching_is_fast():
    import time
    g = random_graph(5000, 5000, 3, Rng(4))
    start = time.perf_counter()
    maximum_matching(g)
    assert time.perf_counter() - start < 5
