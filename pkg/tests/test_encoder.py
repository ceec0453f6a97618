import logging
import sys
import textwrap

import pytest
from hypothesis import given, settings, strategies as st

from bicliquesat import BipartiteGraph, CatalogMode, CnfFormula, SolveStatus, decode_model, encode_cover, enumerate_bicliques, solve_external, validate_cover
from bicliquesat.encoder import SOLVER_ENV, parse_solver_output
from bicliquesat.oracle import brute_force_sat, exact_cover_exists

from .conftest import complete, graphs

SATCLI = f"{sys.executable} -m bicliquesat.satcli {{cnf}}"


def test_k23_catalog_sizes():
    g = complete(2, 3)
    # 2 * 3 stars plus the pair with 3 + 3 + 1 right parts
    assert len(enumerate_bicliques(g, 2, CatalogMode.FULL)) == 13
    assert len(enumerate_bicliques(g, 2, CatalogMode.CANONICAL)) == 7
    assert len(enumerate_bicliques(g, 1, CatalogMode.FULL)) == 6


def test_k23_encoding_shape():
    g = complete(2, 3)
    cnf = encode_cover(g, enumerate_bicliques(g, 2))
    assert cnf.n_vars == 7
    amo = [c for c in cnf.clauses if len(c) == 2 and all(lit < 0 for lit in c)]
    alo = [c for c in cnf.clauses if all(lit > 0 for lit in c)]
    # each left vertex sits in 3 stars and the pair: C(4, 2) = 6 clauses each
    assert len(amo) == 12 and len(alo) == 3
    # two stars and the pair cover each clause
    assert all(len(c) == 3 for c in alo)


def test_k37_catalog_with_three_left():
    g = complete(3, 7)
    catalog = enumerate_bicliques(g, 3)
    assert len(catalog) == 3 * 7 + 3 * 35 + 1
    model = brute_force_sat(encode_cover(g, catalog))
    assert model is not None
    assert validate_cover(g, decode_model(catalog, model), t=3)
    assert brute_force_sat(encode_cover(g, enumerate_bicliques(g, 2))) is None


def test_uncovered_clause_yields_empty_clause(caplog):
    g = BipartiteGraph(2, [[0], []])
    catalog = enumerate_bicliques(g, 2)
    assert catalog.uncovered == [1]
    with caplog.at_level(logging.INFO):
        cnf = encode_cover(g, catalog)
    assert () in cnf.clauses and "UNSAT" in caplog.text
    assert brute_force_sat(cnf) is None


def test_removed_vertices_are_ignored():
    g = complete(2, 4)
    g.remove_right(3)
    catalog = enumerate_bicliques(g, 2)
    assert all(3 not in b.right for b in catalog.entries)
    assert brute_force_sat(encode_cover(g, catalog)) is not None


def test_bad_arguments():
    with pytest.raises(ValueError):
        enumerate_bicliques(complete(2, 2), 0)
    with pytest.raises(ValueError):
        encode_cover(complete(3, 2), enumerate_bicliques(complete(2, 2), 2))
    catalog = enumerate_bicliques(complete(2, 2), 2)
    with pytest.raises(ValueError):
        decode_model(catalog, [True] * len(catalog))
    with pytest.raises(ValueError):
        decode_model(catalog, [])


@settings(max_examples=200, deadline=None)
@given(graphs(max_left=5, max_right=6), st.sampled_from(list(CatalogMode)), st.sampled_from([1, 2, 3]))
def test_encoding_agrees_with_oracle(g, mode, k):
    catalog = enumerate_bicliques(g, k, mode)
    cnf = encode_cover(g, catalog)
    model = brute_force_sat(cnf)
    assert (model is not None) == exact_cover_exists(g, t=k)
    if model is not None:
        assert validate_cover(g, decode_model(catalog, model), t=k)


@settings(max_examples=100, deadline=None)
@given(graphs(max_left=4, max_right=5))
def test_every_full_entry_is_valid(g):
    catalog = enumerate_bicliques(g, 4, CatalogMode.FULL)
    seen = set()
    for b in catalog.entries:
        assert 1 <= len(b.left) and 1 <= len(b.right) < 1 << len(b.left)
        assert all(g.has_edge(v, c) for v in b.left for c in b.right)
        assert b not in seen
        seen.add(b)


# -- solver output -------------------------------------------------------

@pytest.mark.parametrize("text, code, status, model", [
    ("s SATISFIABLE\nv 1 -2\nv 3 0\n", 10, SolveStatus.SAT, [True, False, True]),
    ("s UNSATISFIABLE\n", 20, SolveStatus.UNSAT, None),
    ("s UNKNOWN\n", 0, SolveStatus.TIMEOUT, None),
    ("c no status\n", 20, SolveStatus.UNSAT, None),
    ("v 1 0\n", 10, SolveStatus.SAT, [True, False, False]),
    ("c no status\n", 1, SolveStatus.SOLVER_ERROR, None),
    ("s SATISFIABLE\n", 10, SolveStatus.SOLVER_ERROR, None),
    ("s SATISFIABLE\nv 1 x 0\n", 10, SolveStatus.SOLVER_ERROR, None),
    ("s SATISFIABLE\nv 9 0\n", 10, SolveStatus.SOLVER_ERROR, None),
    ("s MAYBE\n", 0, SolveStatus.SOLVER_ERROR, None),
])
def test_parse_solver_output(text, code, status, model):
    assert parse_solver_output(text, 3, code) == (status, model)


def _fake_solver(tmp_path, body):
    script = tmp_path / "fake.py"
    script.write_text("import sys, time\n" + textwrap.dedent(body))
    return f"{sys.executable} {script} {{cnf}}"


def test_solve_external_with_fake_solvers(tmp_path):
    cnf = CnfFormula(2, [(1,), (-2,)])
    ok = _fake_solver(tmp_path, """
        assert open(sys.argv[1]).read().startswith("p cnf 2 2")
        print("s SATISFIABLE"); print("v 1 -2 0"); sys.exit(10)
    """)
    out = solve_external(cnf, ok)
    assert out.status is SolveStatus.SAT and out.model == [True, False] and out.wall_time > 0

    wrong = _fake_solver(tmp_path, 'print("s SATISFIABLE"); print("v -1 -2 0"); sys.exit(10)\n')
    assert solve_external(cnf, wrong).status is SolveStatus.SOLVER_ERROR

    crash = _fake_solver(tmp_path, 'print("s UNSATISFIABLE"); sys.exit(3)\n')
    assert solve_external(cnf, crash).status is SolveStatus.SOLVER_ERROR

    slow = _fake_solver(tmp_path, "time.sleep(30)\n")
    assert solve_external(cnf, slow, timeout=0.5).status is SolveStatus.TIMEOUT

    missing = solve_external(cnf, "/nonexistent/solver {cnf}")
    assert missing.status is SolveStatus.SOLVER_ERROR


def test_solve_external_command_checks(monkeypatch):
    cnf = CnfFormula(1, [(1,)])
    monkeypatch.delenv(SOLVER_ENV, raising=False)
    with pytest.raises(ValueError):
        solve_external(cnf)
    with pytest.raises(ValueError):
        solve_external(cnf, "solver")
    monkeypatch.setenv(SOLVER_ENV, SATCLI)
    assert solve_external(cnf).status is SolveStatus.SAT


def test_pysat_front_end():
    pytest.importorskip("pysat")
    for g, expected in ((complete(2, 3), SolveStatus.SAT), (complete(2, 4), SolveStatus.UNSAT)):
        catalog = enumerate_bicliques(g, 2)
        out = solve_external(encode_cover(g, catalog), SATCLI, timeout=60)
        assert out.status is expected
        if expected is SolveStatus.SAT:
            assert validate_cover(g, decode_model(catalog, out.model), t=2)
    # variables in no clause are still reported
    out = solve_external(CnfFormula(3, [(2,)]), SATCLI, timeout=60)
    assert out.model == [False, True, False]
    assert solve_external(CnfFormula(1, [()]), SATCLI, timeout=60).status is SolveStatus.UNSAT
