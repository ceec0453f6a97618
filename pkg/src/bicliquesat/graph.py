"""Bipartite incidence graphs, CNF formulas and random instance generators.

Vertices are 0-based.  Left vertices are variables, right vertices are
clauses.  Formula literals follow DIMACS conventions, so variable ``i``
(1-based, signed in literals) corresponds to left vertex ``i - 1``.

Adjacency is stored twice as Python integers used as bitsets: for each
right vertex the mask of its left neighbours and for each left vertex the
mask of its right neighbours.  Vertex removal flips liveness bits only,
so indices stay stable while the cover heuristic consumes the graph.
"""

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .rng import Rng


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the positions of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_to_list(mask: int) -> list[int]:
    return list(iter_bits(mask))


def list_to_bits(items: Iterable[int]) -> int:
    mask = 0
    for i in items:
        mask |= 1 << i
    return mask


class BipartiteGraph:
    """Bipartite graph with left part ``0..n_left-1`` and right part
    ``0..n_right-1``.

    Only alive vertices take part in any query; edges incident to a dead
    vertex are treated as absent.
    """

    __slots__ = ("n_left", "n_right", "left_nbrs", "right_nbrs", "alive_left", "alive_right")

    def __init__(self, n_left: int, right_adj: Sequence[Iterable[int]] = ()):
        if n_left < 0:
            raise ValueError("n_left must be non-negative")
        self.n_left = n_left
        self.n_right = len(right_adj)
        self.left_nbrs = [0] * n_left
        self.right_nbrs = [0] * self.n_right
        for c, nbrs in enumerate(right_adj):
            mask = 0
            for v in nbrs:
                if not 0 <= v < n_left:
                    raise ValueError(f"right vertex {c}: left neighbour {v} out of range")
                bit = 1 << v
                if mask & bit:
                    raise ValueError(f"right vertex {c}: duplicate neighbour {v}")
                mask |= bit
                self.left_nbrs[v] |= 1 << c
            self.right_nbrs[c] = mask
        self.alive_left = (1 << n_left) - 1
        self.alive_right = (1 << self.n_right) - 1

    @classmethod
    def from_edges(cls, n_left: int, n_right: int, edges: Iterable[tuple[int, int]]) -> "BipartiteGraph":
        adj: list[list[int]] = [[] for _ in range(n_right)]
        for v, c in edges:
            if not 0 <= c < n_right:
                raise ValueError(f"right vertex {c} out of range")
            adj[c].append(v)
        return cls(n_left, adj)

    def copy(self) -> "BipartiteGraph":
        g = BipartiteGraph.__new__(BipartiteGraph)
        g.n_left = self.n_left
        g.n_right = self.n_right
        g.left_nbrs = self.left_nbrs.copy()
        g.right_nbrs = self.right_nbrs.copy()
        g.alive_left = self.alive_left
        g.alive_right = self.alive_right
        return g

    # -- queries -------------------------------------------------------

    def is_left_alive(self, v: int) -> bool:
        return 0 <= v < self.n_left and bool(self.alive_left >> v & 1)

    def is_right_alive(self, c: int) -> bool:
        return 0 <= c < self.n_right and bool(self.alive_right >> c & 1)

    @property
    def n_alive_left(self) -> int:
        return self.alive_left.bit_count()

    @property
    def n_alive_right(self) -> int:
        return self.alive_right.bit_count()

    def alive_left_vertices(self) -> list[int]:
        return bits_to_list(self.alive_left)

    def alive_right_vertices(self) -> list[int]:
        return bits_to_list(self.alive_right)

    def neighbors(self, c: int) -> list[int]:
        """Alive left neighbours of right vertex ``c``, ascending."""
        return bits_to_list(self.right_nbrs[c] & self.alive_left)

    def left_neighbors(self, v: int) -> list[int]:
        """Alive right neighbours of left vertex ``v``, ascending."""
        return bits_to_list(self.left_nbrs[v] & self.alive_right)

    def degree(self, c: int) -> int:
        return (self.right_nbrs[c] & self.alive_left).bit_count()

    @property
    def right_adj(self) -> list[tuple[int, ...]]:
        """Neighbour tuples of every alive right vertex (dead ones omitted)."""
        return [tuple(self.neighbors(c)) for c in iter_bits(self.alive_right)]

    @property
    def edge_count(self) -> int:
        return sum(self.degree(c) for c in iter_bits(self.alive_right))

    def edges(self) -> Iterator[tuple[int, int]]:
        """Alive edges ``(left, right)`` in right-major order."""
        for c in iter_bits(self.alive_right):
            for v in iter_bits(self.right_nbrs[c] & self.alive_left):
                yield v, c

    def has_edge(self, v: int, c: int) -> bool:
        return self.is_left_alive(v) and self.is_right_alive(c) and bool(self.right_nbrs[c] >> v & 1)

    # -- mutation ------------------------------------------------------

    def remove_left(self, v: int) -> None:
        if not self.is_left_alive(v):
            raise ValueError(f"left vertex {v} is not alive")
        self.alive_left &= ~(1 << v)

    def remove_right(self, c: int) -> None:
        if not self.is_right_alive(c):
            raise ValueError(f"right vertex {c} is not alive")
        self.alive_right &= ~(1 << c)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return (
            self.n_left == other.n_left
            and self.n_right == other.n_right
            and self.alive_left == other.alive_left
            and self.alive_right == other.alive_right
            and list(self.edges()) == list(other.edges())
        )

    def __repr__(self) -> str:
        return (
            f"BipartiteGraph(n_left={self.n_left}, n_right={self.n_right}, "
            f"alive={self.n_alive_left}/{self.n_alive_right}, edges={self.edge_count})"
        )


def common_neighborhood(graph: BipartiteGraph, left_set: Iterable[int]) -> set[int]:
    """Alive right vertices adjacent to every member of ``left_set``."""
    mask = graph.alive_right
    for v in left_set:
        if not graph.is_left_alive(v):
            raise ValueError(f"left vertex {v} is dead or out of range")
        mask &= graph.left_nbrs[v]
    return set(iter_bits(mask))


# -- formulas ------------------------------------------------------------

Assignment = list[bool]
"""Truth values indexed by ``variable - 1``."""


@dataclass
class CnfFormula:
    n_vars: int
    clauses: list[tuple[int, ...]] = field(default_factory=list)

    def __post_init__(self):
        canon = []
        for i, clause in enumerate(self.clauses):
            lits = sorted(clause, key=lambda lit: (abs(lit), lit))
            seen = set()
            for lit in lits:
                if lit == 0 or abs(lit) > self.n_vars:
                    raise ValueError(f"clause {i}: literal {lit} out of range")
                if lit in seen:
                    raise ValueError(f"clause {i}: duplicate literal {lit}")
                if -lit in seen:
                    raise ValueError(f"clause {i}: contains both {abs(lit)} and {-abs(lit)}")
                seen.add(lit)
            canon.append(tuple(lits))
        self.clauses = canon

    @property
    def n_clauses(self) -> int:
        return len(self.clauses)

    def is_satisfied_by(self, assignment: Sequence[bool]) -> bool:
        return all(
            any(assignment[abs(lit) - 1] == (lit > 0) for lit in clause)
            for clause in self.clauses
        )

    def with_polarities(self, rng: Rng) -> "CnfFormula":
        """Same variable structure with every literal sign redrawn."""
        clauses = []
        for clause in self.clauses:
            bits = rng.getrandbits(len(clause)) if clause else 0
            clauses.append(tuple(abs(lit) if bits >> i & 1 else -abs(lit) for i, lit in enumerate(clause)))
        return CnfFormula(self.n_vars, clauses)


def incidence_graph(formula: CnfFormula) -> BipartiteGraph:
    return BipartiteGraph(formula.n_vars, [[abs(lit) - 1 for lit in clause] for clause in formula.clauses])


def random_graph(n: int, m: int, k: int, rng: Rng) -> BipartiteGraph:
    """Draw a graph with ``m`` right vertices, each adjacent to ``k``
    distinct left vertices chosen uniformly from ``n``.

    Right vertices are drawn independently, so neighbourhoods may repeat.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if m < 0:
        raise ValueError("m must be non-negative")
    scratch = list(range(n))
    randrange = rng.randrange
    adj = []
    for _ in range(m):
        # partial Fisher-Yates; the scratch permutation carries over between clauses
        for i in range(k):
            j = randrange(i, n)
            scratch[i], scratch[j] = scratch[j], scratch[i]
        adj.append(scratch[:k])
    return BipartiteGraph(n, adj)


def random_formula(graph: BipartiteGraph, rng: Rng) -> CnfFormula:
    """One clause per alive right vertex over its alive neighbours, with
    independent fair-coin polarities."""
    clauses = []
    for nbrs in graph.right_adj:
        bits = rng.getrandbits(len(nbrs)) if nbrs else 0
        clauses.append(tuple(v + 1 if bits >> i & 1 else -(v + 1) for i, v in enumerate(nbrs)))
    return CnfFormula(graph.n_left, clauses)
