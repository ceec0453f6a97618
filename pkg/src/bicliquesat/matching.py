"""Maximum bipartite matching and matched-formula detection."""

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .graph import Assignment, BipartiteGraph, CnfFormula, incidence_graph

_INF = 1 << 30


@dataclass
class Matching:
    """Partial map from right vertices (clauses) to left vertices (variables)."""

    pairs: dict[int, int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.pairs)

    def is_valid(self, graph: BipartiteGraph) -> bool:
        if len(set(self.pairs.values())) != len(self.pairs):
            return False
        return all(graph.has_edge(v, c) for c, v in self.pairs.items())


def hopcroft_karp(adj: Sequence[Sequence[int]], n_left: int) -> list[int]:
    """Maximum matching of right vertices ``0..len(adj)-1`` into ``n_left``
    left vertices.

    ``adj[c]`` lists the left neighbours of right vertex ``c``.  Returns
    ``match[c]`` (left vertex or -1).  Neighbours are tried in list order,
    so ascending lists give index-ordered tie breaking.
    """
    m = len(adj)
    match_r = [-1] * m
    match_l = [-1] * n_left
    for c in range(m):
        for v in adj[c]:
            if match_l[v] < 0:
                match_r[c] = v
                match_l[v] = c
                break

    while True:
        dist = [_INF] * m
        queue = deque()
        for c in range(m):
            if match_r[c] < 0:
                dist[c] = 0
                queue.append(c)
        found = False
        while queue:
            c = queue.popleft()
            for v in adj[c]:
                c2 = match_l[v]
                if c2 < 0:
                    found = True
                elif dist[c2] == _INF:
                    dist[c2] = dist[c] + 1
                    queue.append(c2)
        if not found:
            return match_r

        ptr = [0] * m
        for root in range(m):
            if match_r[root] >= 0:
                continue
            stack = [root]
            path: list[int] = []
            while stack:
                c = stack[-1]
                nbrs = adj[c]
                step = None
                while ptr[c] < len(nbrs):
                    v = nbrs[ptr[c]]
                    ptr[c] += 1
                    c2 = match_l[v]
                    if c2 < 0:
                        path.append(v)
                        for cc, vv in zip(stack, path):
                            match_r[cc] = vv
                            match_l[vv] = cc
                        step = "augmented"
                        break
                    if dist[c2] == dist[c] + 1:
                        path.append(v)
                        stack.append(c2)
                        step = "descend"
                        break
                if step == "augmented":
                    break
                if step is None:
                    # dead end: no shortest augmenting path continues through c
                    dist[c] = _INF
                    stack.pop()
                    if path:
                        path.pop()


def maximum_matching(graph: BipartiteGraph) -> Matching:
    """Maximum-cardinality matching over the alive part of ``graph``."""
    rights = graph.alive_right_vertices()
    adj = [graph.neighbors(c) for c in rights]
    match = hopcroft_karp(adj, graph.n_left)
    return Matching({c: v for c, v in zip(rights, match) if v >= 0})


def is_matched(graph: BipartiteGraph) -> bool:
    """True iff some matching saturates every alive right vertex."""
    n_right = graph.n_alive_right
    if n_right > graph.n_alive_left:
        return False
    return len(maximum_matching(graph)) == n_right


def assignment_from_matching(formula: CnfFormula, matching: Matching) -> Assignment:
    """Satisfy each clause through its matched variable; other variables
    are set false."""
    graph = incidence_graph(formula)
    if len(matching) != formula.n_clauses or not matching.is_valid(graph):
        raise ValueError("matching does not saturate the clauses of the formula")
    values = [False] * formula.n_vars
    for c, v in matching.pairs.items():
        lit = next(lit for lit in formula.clauses[c] if abs(lit) == v + 1)
        values[v] = lit > 0
    return values
