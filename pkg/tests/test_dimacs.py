import io

import pytest
from hypothesis import given, strategies as st

from bicliquesat import BipartiteGraph, CnfFormula, read_cnf, read_graph, write_cnf, write_graph
from bicliquesat.dimacs import ParseError, format_cnf, format_graph, parse_cnf, parse_graph

from .conftest import graphs


def test_graph_text_round_trip():
    text = "p bigraph 2 2 3\ne 1 1\ne 2 1\ne 2 2\n"
    g = parse_graph(text)
    assert g.right_adj == [(0, 1), (1,)]
    assert format_graph(g) == text


def test_graph_parser_skips_comments_and_blank_lines():
    g = parse_graph("c hello\n\np bigraph 1 1 1\nc mid\ne 1 1\n")
    assert g.right_adj == [(0,)]


@pytest.mark.parametrize("text, line", [
    ("p bigraph 1 1 1\ne 2 1\n", 2),
    ("p bigraph 1 1 2\ne 1 1\ne 1 1\n", 3),
    ("e 1 1\n", 1),
    ("p bigraph 1 1\n", 1),
    ("p bigraph 1 1 1\ne x 1\n", 2),
    ("p bigraph 1 1 1\nq\n", 2),
])
def test_graph_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_graph(text)
    assert info.value.line == line


def test_graph_edge_count_mismatch():
    with pytest.raises(ParseError):
        parse_graph("p bigraph 2 2 3\ne 1 1\n")
    with pytest.raises(ParseError):
        parse_graph("")


@given(graphs(max_left=6, max_right=6))
def test_graph_round_trip_property(g):
    assert parse_graph(format_graph(g)) == g
    buf = io.StringIO()
    write_graph(g, buf)
    buf.seek(0)
    assert read_graph(buf) == g


def test_cnf_round_trip_and_files(tmp_path):
    f = CnfFormula(3, [(1, -2), (3,), ()])
    path = tmp_path / "f.cnf"
    write_cnf(f, path)
    assert path.read_text() == "p cnf 3 3\n1 -2 0\n3 0\n0\n"
    assert read_cnf(path) == f


def test_cnf_multi_line_clause_and_end_marker():
    f = parse_cnf("c x\np cnf 3 2\n1 2\n-3 0 2 0\n%\n0\n")
    assert f.clauses == [(1, 2, -3), (2,)]


@pytest.mark.parametrize("text", [
    "p cnf 2 1\n1 2\n",
    "p cnf 2 1\n3 0\n",
    "p cnf 2 2\n1 0\n",
    "p cnf 2 1\n1 1 0\n",
    "p cnf 2 1\n1 -1 0\n",
    "1 0\n",
    "p cnf 2\n",
    "p cnf 2 1\n1 a 0\n",
])
def test_cnf_parse_errors(text):
    with pytest.raises(ParseError):
        parse_cnf(text)


@st.composite
def formulas(draw):
    n = draw(st.integers(1, 6))
    clauses = []
    for _ in range(draw(st.integers(0, 6))):
        vs = draw(st.sets(st.integers(1, n), max_size=n))
        clauses.append(tuple(v if draw(st.booleans()) else -v for v in vs))
    return CnfFormula(n, clauses)


@given(formulas())
def test_cnf_round_trip_property(f):
    assert parse_cnf(format_cnf(f)) == f
    assert format_cnf(parse_cnf(format_cnf(f))) == format_cnf(f)
