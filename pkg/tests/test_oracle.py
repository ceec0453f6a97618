from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from bicliquesat import BipartiteGraph, CnfFormula, Rng, random_formula, random_graph
from bicliquesat.oracle import OracleRefused, brute_force_matching, brute_force_sat, exact_cover_exists

from .conftest import complete


def truth_table_sat(f):
    return any(f.is_satisfied_by(list(bits)) for bits in product([False, True], repeat=f.n_vars))


@st.composite
def formulas(draw, max_vars=6, max_clauses=12):
    n = draw(st.integers(1, max_vars))
    clauses = []
    for _ in range(draw(st.integers(0, max_clauses))):
        vs = draw(st.sets(st.integers(1, n), max_size=3))
        clauses.append(tuple(v if draw(st.booleans()) else -v for v in vs))
    return CnfFormula(n, clauses)


@settings(max_examples=400)
@given(formulas())
def test_brute_force_sat_agrees_with_truth_table(f):
    model = brute_force_sat(f)
    assert (model is not None) == truth_table_sat(f)
    if model is not None:
        assert f.is_satisfied_by(model)


def test_brute_force_sat_examples():
    assert brute_force_sat(CnfFormula(0, [])) == []
    assert brute_force_sat(CnfFormula(1, [(1,), (-1,)])) is None
    # all eight sign patterns on three variables
    f = CnfFormula(3, [tuple(s * v for s, v in zip(signs, (1, 2, 3))) for signs in product((1, -1), repeat=3)])
    assert brute_force_sat(f) is None
    # dropping the all-negative clause leaves only the all-true model
    assert brute_force_sat(CnfFormula(3, f.clauses[:-1])) == [True, True, True]


def test_brute_force_sat_handles_medium_random_formulas():
    rng = Rng(12)
    for _ in range(20):
        f = random_formula(random_graph(60, 200, 3, rng), rng)
        model = brute_force_sat(f)
        if model is not None:
            assert f.is_satisfied_by(model)


def test_guards():
    with pytest.raises(OracleRefused):
        brute_force_sat(CnfFormula(30, []), max_vars=20)
    with pytest.raises(OracleRefused):
        exact_cover_exists(complete(7, 8))
    with pytest.raises(OracleRefused):
        brute_force_matching(complete(11, 10))


def test_exact_cover_examples():
    assert exact_cover_exists(BipartiteGraph(0, []))
    assert not exact_cover_exists(BipartiteGraph(1, [[]]))
    assert exact_cover_exists(complete(2, 3))
    assert not exact_cover_exists(complete(2, 4))
    # two disjoint K_{2,3} plus a clause over all four variables: the extra
    # clause fits in neither block and the full left set only shares it
    g = BipartiteGraph(4, [[0, 1]] * 3 + [[2, 3]] * 3 + [[0, 1, 2, 3]])
    assert not exact_cover_exists(g, t=2)
    assert not exact_cover_exists(g, t=None)
    assert exact_cover_exists(BipartiteGraph(4, g.right_adj[:6]), t=2)
    # overlapping right parts are allowed
    g = BipartiteGraph(3, [[0, 1, 2]] * 4)
    assert exact_cover_exists(g, t=3)
    assert exact_cover_exists(g, t=2)


def test_brute_force_matching_examples():
    assert brute_force_matching(complete(2, 3)) == 2
    assert brute_force_matching(BipartiteGraph(3, [[0], [0], [1, 2]])) == 2
