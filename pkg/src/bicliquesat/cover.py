"""Bounded biclique covers: validation, the seed-based heuristic and
assignment extraction.

A biclique is *bounded* when it has fewer right vertices (clauses) than
``2 ** len(left)`` (assignments to its variables).  A bounded biclique
cover uses bicliques with pairwise disjoint left parts whose right parts
together contain every clause; right parts may overlap.

The heuristic consumes a private copy of the graph:

1. unit propagation turns every clause of degree one into a ``K_{1,1}``;
2. one maximal seed is generated for every pair of variables sharing
   at least ``USEFUL_SEED_SIZE`` clauses (a pair covering two clauses or
   fewer does no better than a matching, so it is never worth taking);
3. until the rest of the graph has a clause-saturating matching, a seed
   is chosen by strategy, grown while smaller than ``t`` and unbounded,
   trimmed at random to ``2 ** len(left) - 1`` clauses if still
   unbounded, then removed from the graph together with propagation.

Only a returned cover is a certificate; failure proves nothing.
"""

import enum
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .graph import (
    Assignment,
    BipartiteGraph,
    CnfFormula,
    bits_to_list,
    incidence_graph,
    iter_bits,
    list_to_bits,
)
from .matching import maximum_matching
from .rng import Rng


@dataclass(frozen=True)
class Biclique:
    left: frozenset[int]
    right: frozenset[int]

    @classmethod
    def of(cls, left: Iterable[int], right: Iterable[int]) -> "Biclique":
        return cls(frozenset(left), frozenset(right))

    def format(self) -> str:
        """``b <left...> | <right...>`` with 1-based indices."""
        left = " ".join(str(v + 1) for v in sorted(self.left))
        right = " ".join(str(c + 1) for c in sorted(self.right))
        return f"b {left} | {right}"


@dataclass
class BicliqueCover:
    bicliques: list[Biclique] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.bicliques)

    def __iter__(self) -> Iterator[Biclique]:
        return iter(self.bicliques)

    def append(self, b: Biclique) -> None:
        self.bicliques.append(b)

    def format(self) -> str:
        return "".join(b.format() + "\n" for b in self.bicliques)


@dataclass
class Seed:
    """A biclique under construction: ``left`` starts as a vertex pair and
    ``right_mask`` is a bitset of right vertices."""

    left: tuple[int, ...]
    right_mask: int

    @property
    def right(self) -> frozenset[int]:
        return frozenset(iter_bits(self.right_mask))

    @property
    def size(self) -> int:
        return self.right_mask.bit_count()

    def is_bounded(self) -> bool:
        return self.size < (1 << len(self.left))

    def to_biclique(self) -> Biclique:
        return Biclique(frozenset(self.left), self.right)


# smallest right part for which a two-variable seed beats a matching
USEFUL_SEED_SIZE = 3


class Strategy(enum.Enum):
    MIN = "min"
    RAND = "rand"
    MAX = "max"


def is_bounded(b: Biclique) -> bool:
    return len(b.right) < (1 << len(b.left))


@dataclass
class CoverCheck:
    """Result of :func:`validate_cover`; truthy iff no violations.

    Each violation is ``(code, biclique_index, detail)`` with codes
    ``missing_edge``, ``unbounded``, ``too_wide``, ``overlap``,
    ``uncovered`` (index -1).
    """

    violations: list[tuple[str, int, object]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return not self.violations


def validate_cover(graph: BipartiteGraph, cover: BicliqueCover, t: Optional[int] = None) -> CoverCheck:
    check = CoverCheck()
    owner: dict[int, int] = {}
    covered = 0
    for i, b in enumerate(cover):
        for v in sorted(b.left):
            for c in sorted(b.right):
                if not graph.has_edge(v, c):
                    check.violations.append(("missing_edge", i, (v, c)))
            if v in owner:
                check.violations.append(("overlap", i, (v, owner[v])))
            else:
                owner[v] = i
        if not is_bounded(b):
            check.violations.append(("unbounded", i, (len(b.left), len(b.right))))
        if t is not None and len(b.left) > t:
            check.violations.append(("too_wide", i, len(b.left)))
        covered |= list_to_bits(b.right)
    for c in iter_bits(graph.alive_right & ~covered):
        check.violations.append(("uncovered", -1, c))
    return check


# -- heuristic steps -----------------------------------------------------

def unit_g_propagation(graph: BipartiteGraph, cover: BicliqueCover) -> bool:
    """Cover every degree-one clause by its only edge, FIFO, removing the
    clause and the variable.  Returns False as soon as an alive clause has
    no alive neighbour; on success every alive clause has degree >= 2."""
    right_nbrs = graph.right_nbrs
    left_nbrs = graph.left_nbrs
    queue = []
    for c in iter_bits(graph.alive_right):
        deg = (right_nbrs[c] & graph.alive_left).bit_count()
        if deg == 0:
            return False
        if deg == 1:
            queue.append(c)
    head = 0
    while head < len(queue):
        c = queue[head]
        head += 1
        if not graph.alive_right >> c & 1:
            continue
        nbrs = right_nbrs[c] & graph.alive_left
        if not nbrs:
            return False
        if nbrs & (nbrs - 1):
            continue
        v = nbrs.bit_length() - 1
        cover.append(Biclique(frozenset((v,)), frozenset((c,))))
        graph.alive_right &= ~(1 << c)
        graph.alive_left &= ~(1 << v)
        for c2 in iter_bits(left_nbrs[v] & graph.alive_right):
            deg = (right_nbrs[c2] & graph.alive_left).bit_count()
            if deg == 0:
                return False
            if deg == 1:
                queue.append(c2)
    return True


def generate_seeds(graph: BipartiteGraph, min_right: int = 1) -> list[Seed]:
    """One maximal seed per pair of alive left vertices whose common
    neighbourhood has at least ``min_right`` (default: one) clauses, in
    lexicographic pair order."""
    alive_right = graph.alive_right
    rows = [(v, graph.left_nbrs[v] & alive_right) for v in iter_bits(graph.alive_left)]
    seeds = []
    for i, (u, mu) in enumerate(rows):
        if not mu:
            continue
        for v, mv in rows[i + 1:]:
            common = mu & mv
            if common and common.bit_count() >= min_right:
                seeds.append(Seed((u, v), common))
    return seeds


def choose_seed(seeds: list[Seed], strategy: Strategy, rng: Rng) -> Seed:
    if not seeds:
        raise ValueError("cannot choose from an empty seed list")
    if strategy is Strategy.RAND:
        return seeds[rng.randrange(len(seeds))]
    sizes = [s.right_mask.bit_count() for s in seeds]
    target = min(sizes) if strategy is Strategy.MIN else max(sizes)
    ties = [i for i, size in enumerate(sizes) if size == target]
    return seeds[ties[rng.randrange(len(ties))]]


def expand_seed(graph: BipartiteGraph, s: Seed, rng: Rng) -> tuple[Seed, bool]:
    """Add the alive left vertex keeping the most clauses of ``s``.

    Returns ``(seed, halted)``; ``halted`` is True (and ``s`` is returned
    unchanged) when every candidate would leave the right part empty.
    """
    if (1 << len(s.left)) > s.size:
        raise ValueError("expand_seed called on a bounded seed")
    in_left = list_to_bits(s.left)
    best = 0
    ties: list[int] = []
    left_nbrs = graph.left_nbrs
    for v in iter_bits(graph.alive_left & ~in_left):
        size = (s.right_mask & left_nbrs[v]).bit_count()
        if size > best:
            best = size
            ties = [v]
        elif size == best and best:
            ties.append(v)
    if not best:
        return s, True
    v = ties[rng.randrange(len(ties))] if len(ties) > 1 else ties[0]
    return Seed(s.left + (v,), s.right_mask & left_nbrs[v]), False


def restrict_seed(s: Seed, rng: Rng) -> Seed:
    """Keep a uniformly random ``2 ** len(left) - 1`` of the clauses."""
    keep = (1 << len(s.left)) - 1
    if s.size < keep + 1:
        raise ValueError("restrict_seed called on a bounded seed")
    kept = rng.sample(bits_to_list(s.right_mask), keep)
    return Seed(s.left, list_to_bits(kept))


def remove_biclique(graph: BipartiteGraph, b: Biclique | Seed) -> None:
    left = b.left
    right = b.right if isinstance(b, Biclique) else bits_to_list(b.right_mask)
    lmask = list_to_bits(left)
    rmask = list_to_bits(right)
    if lmask & ~graph.alive_left or rmask & ~graph.alive_right:
        raise ValueError("biclique refers to a removed vertex")
    graph.alive_left &= ~lmask
    graph.alive_right &= ~rmask


def remove_invalid_seeds(
    seeds: list[Seed], graph: BipartiteGraph, removed: Biclique | Seed, min_right: int = 1
) -> list[Seed]:
    """Drop seeds touching removed or dead left vertices and restrict the
    rest to alive clauses; seeds left with fewer than ``min_right`` clauses
    are dropped too."""
    gone = list_to_bits(removed.left) | ~graph.alive_left
    alive_right = graph.alive_right
    kept = []
    for s in seeds:
        if list_to_bits(s.left) & gone:
            continue
        right = s.right_mask & alive_right
        if right and right.bit_count() >= min_right:
            kept.append(s if right == s.right_mask else Seed(s.left, right))
    return kept


def test_matched(graph: BipartiteGraph, cover: BicliqueCover) -> bool:
    """If a matching saturates the alive clauses, add it to ``cover`` as
    ``K_{1,1}`` bicliques and return True."""
    if graph.n_alive_right > graph.n_alive_left:
        return False
    matching = maximum_matching(graph)
    if len(matching) != graph.n_alive_right:
        return False
    for c, v in sorted(matching.pairs.items()):
        cover.append(Biclique(frozenset((v,)), frozenset((c,))))
    return True


# keeps pytest from collecting the function above as a test
test_matched.__test__ = False


def find_cover(
    graph: BipartiteGraph,
    t: Optional[int] = 2,
    strategy: Strategy = Strategy.RAND,
    rng: Optional[Rng] = None,
    seed_min_right: int = USEFUL_SEED_SIZE,
) -> Optional[BicliqueCover]:
    """Search for a bounded biclique cover whose bicliques have at most
    ``t`` left vertices (``t=None``: no limit).

    Seeds with fewer than ``seed_min_right`` clauses are discarded, both
    when generated and when shrunk by removals; ``seed_min_right=1`` keeps
    every seed with a nonempty common neighbourhood.

    Returns the cover, or None when the heuristic gives up.  ``graph`` is
    not modified.
    """
    if t is not None and t < 2:
        raise ValueError("t must be at least 2 or None")
    if rng is None:
        rng = Rng(0)
    g = graph.copy()
    cover = BicliqueCover()
    if not unit_g_propagation(g, cover):
        return None
    seeds = generate_seeds(g, seed_min_right)
    while seeds:
        if test_matched(g, cover):
            return cover
        s = choose_seed(seeds, strategy, rng)
        while (t is None or len(s.left) < t) and (1 << len(s.left)) <= s.size:
            s, halted = expand_seed(g, s, rng)
            if halted:
                break
        if (1 << len(s.left)) <= s.size:
            s = restrict_seed(s, rng)
        remove_biclique(g, s)
        cover.append(s.to_biclique())
        if not unit_g_propagation(g, cover):
            return None
        seeds = remove_invalid_seeds(seeds, g, s, seed_min_right)
    if not test_matched(g, cover):
        # seeds ran out with clauses still uncovered
        return None
    return cover


# -- assignments ---------------------------------------------------------

def assignment_from_cover(formula: CnfFormula, cover: BicliqueCover) -> Assignment:
    """Satisfying assignment built biclique by biclique.

    Every clause of a biclique mentions all of its variables and rules out
    exactly one pattern on them; with fewer clauses than patterns some
    pattern survives.  Variables outside the cover are set false.
    """
    if not validate_cover(incidence_graph(formula), cover):
        raise ValueError("not a bounded biclique cover of the formula's incidence graph")
    values = [False] * formula.n_vars
    for b in cover:
        variables = sorted(b.left)
        position = {v + 1: i for i, v in enumerate(variables)}
        forbidden = set()
        for c in b.right:
            pattern = 0
            for lit in formula.clauses[c]:
                i = position.get(abs(lit))
                if i is not None and lit < 0:
                    # the clause is falsified when this variable is true
                    pattern |= 1 << i
            forbidden.add(pattern)
        pattern = next(p for p in range(len(forbidden) + 1) if p not in forbidden)
        for i, v in enumerate(variables):
            values[v] = bool(pattern >> i & 1)
    return values
