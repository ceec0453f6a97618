"""Text formats: ``p bigraph`` edge lists and DIMACS CNF.

Graph format::

    c optional comment
    p bigraph <n_left> <n_right> <edge_count>
    e <left> <right>          (1-based, one line per edge)

Writers emit the canonical form (edges in right-major order, literals
sorted by variable), so ``format(parse(text)) == text`` for canonical text.
"""

import io
import os
from pathlib import Path
from typing import IO, Union

from .graph import BipartiteGraph, CnfFormula

Source = Union[str, os.PathLike, IO[str]]


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _read_text(source: Source) -> str:
    if isinstance(source, (str, os.PathLike)):
        return Path(source).read_text(encoding="ascii")
    return source.read()


def _write_text(text: str, target: Source) -> None:
    if isinstance(target, (str, os.PathLike)):
        with open(target, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    else:
        target.write(text)


def _int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected integer, got {token!r}", lineno) from None


# -- graphs --------------------------------------------------------------

def parse_graph(text: str) -> BipartiteGraph:
    header = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, line in enumerate(text.splitlines(), 1):
        parts = line.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            if header is not None:
                raise ParseError("duplicate header", lineno)
            if len(parts) != 5 or parts[1] != "bigraph":
                raise ParseError("malformed header, expected 'p bigraph <n_left> <n_right> <edges>'", lineno)
            header = tuple(_int(t, lineno) for t in parts[2:])
            if min(header) < 0:
                raise ParseError("negative count in header", lineno)
            continue
        if parts[0] != "e":
            raise ParseError(f"unexpected line {line!r}", lineno)
        if header is None:
            raise ParseError("edge before header", lineno)
        if len(parts) != 3:
            raise ParseError("malformed edge line", lineno)
        v, c = _int(parts[1], lineno), _int(parts[2], lineno)
        if not (1 <= v <= header[0] and 1 <= c <= header[1]):
            raise ParseError(f"edge {v} {c} references a vertex out of range", lineno)
        if (v, c) in seen:
            raise ParseError(f"duplicate edge {v} {c}", lineno)
        seen.add((v, c))
        edges.append((v - 1, c - 1))
    if header is None:
        raise ParseError("missing 'p bigraph' header")
    n_left, n_right, n_edges = header
    if len(edges) != n_edges:
        raise ParseError(f"header announces {n_edges} edges, found {len(edges)}")
    return BipartiteGraph.from_edges(n_left, n_right, edges)


def format_graph(graph: BipartiteGraph) -> str:
    edges = list(graph.edges())
    lines = [f"p bigraph {graph.n_left} {graph.n_right} {len(edges)}"]
    lines.extend(f"e {v + 1} {c + 1}" for v, c in edges)
    return "\n".join(lines) + "\n"


def read_graph(source: Source) -> BipartiteGraph:
    return parse_graph(_read_text(source))


def write_graph(graph: BipartiteGraph, target: Source) -> None:
    _write_text(format_graph(graph), target)


# -- CNF -----------------------------------------------------------------

def parse_cnf(text: str) -> CnfFormula:
    header = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    last_line = 0
    for lineno, line in enumerate(text.splitlines(), 1):
        parts = line.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "%":
            # SATLIB end marker
            break
        last_line = lineno
        if parts[0] == "p":
            if header is not None:
                raise ParseError("duplicate header", lineno)
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError("malformed header, expected 'p cnf <vars> <clauses>'", lineno)
            header = (_int(parts[2], lineno), _int(parts[3], lineno))
            if min(header) < 0:
                raise ParseError("negative count in header", lineno)
            continue
        if header is None:
            raise ParseError("clause before header", lineno)
        for tok in parts:
            lit = _int(tok, lineno)
            if lit == 0:
                lits = set(current)
                if len(lits) != len(current):
                    raise ParseError("duplicate literal in clause", lineno)
                if any(-x in lits for x in lits):
                    raise ParseError("clause contains a variable in both polarities", lineno)
                clauses.append(tuple(current))
                current = []
            elif abs(lit) > header[0]:
                raise ParseError(f"literal {lit} out of range", lineno)
            else:
                current.append(lit)
    if header is None:
        raise ParseError("missing 'p cnf' header")
    if current:
        raise ParseError("last clause is missing its 0 terminator", last_line)
    if len(clauses) != header[1]:
        raise ParseError(f"header announces {header[1]} clauses, found {len(clauses)}")
    return CnfFormula(header[0], clauses)


def format_cnf(formula: CnfFormula) -> str:
    out = io.StringIO()
    out.write(f"p cnf {formula.n_vars} {formula.n_clauses}\n")
    for clause in formula.clauses:
        out.write(" ".join(map(str, (*clause, 0))) + "\n")
    return out.getvalue()


def read_cnf(source: Source) -> CnfFormula:
    return parse_cnf(_read_text(source))


def write_cnf(formula: CnfFormula, target: Source) -> None:
    _write_text(format_cnf(formula), target)
