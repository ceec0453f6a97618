"""Exponential reference procedures used as ground truth in tests.

Each has a hard size guard and raises :class:`OracleRefused` beyond it.
None of them shares code with the production paths they check.
"""

from itertools import combinations
from typing import Optional

from .graph import Assignment, BipartiteGraph, CnfFormula, iter_bits


class OracleRefused(ValueError):
    pass


def brute_force_matching(graph: BipartiteGraph) -> int:
    """Maximum matching size by exhaustive search over injective maps."""
    if graph.n_alive_left + graph.n_alive_right > 20:
        raise OracleRefused("brute_force_matching is limited to n + m <= 20")
    rights = [graph.neighbors(c) for c in graph.alive_right_vertices()]
    best = 0

    def search(i: int, used: int, size: int) -> None:
        nonlocal best
        if size + len(rights) - i <= best:
            return
        if i == len(rights):
            best = size
            return
        for v in rights[i]:
            if not used >> v & 1:
                search(i + 1, used | 1 << v, size + 1)
        search(i + 1, used, size)

    search(0, 0, 0)
    return best


def exact_cover_exists(graph: BipartiteGraph, t: Optional[int] = 2) -> bool:
    """Decide whether a bounded biclique cover with at most ``t`` left
    vertices per biclique exists (``t=None``: any size).

    Backtracking always covers the lowest uncovered clause ``c`` first, by
    some left set ``S`` inside its neighbourhood.  Among the right parts for
    ``S`` only maximal sets of still-uncovered clauses containing ``c`` are
    tried; covering more never hurts because right parts may overlap.
    """
    if graph.n_alive_left + graph.n_alive_right > 14:
        raise OracleRefused("exact_cover_exists is limited to n + m <= 14")
    left_nbrs = graph.left_nbrs
    alive_right = graph.alive_right

    def search(uncovered: int, used: int) -> bool:
        if not uncovered:
            return True
        c = (uncovered & -uncovered).bit_length() - 1
        cand = list(iter_bits(graph.right_nbrs[c] & graph.alive_left & ~used))
        max_size = len(cand) if t is None else min(t, len(cand))
        for size in range(1, max_size + 1):
            limit = (1 << size) - 1
            for left in combinations(cand, size):
                common = alive_right & uncovered
                for v in left:
                    common &= left_nbrs[v]
                smask = 0
                for v in left:
                    smask |= 1 << v
                others = list(iter_bits(common & ~(1 << c)))
                if len(others) + 1 <= limit:
                    options = [common]
                else:
                    options = []
                    for rest in combinations(others, limit - 1):
                        mask = 1 << c
                        for r in rest:
                            mask |= 1 << r
                        options.append(mask)
                for right in options:
                    if search(uncovered & ~right, used | smask):
                        return True
        return False

    return search(alive_right, 0)


def brute_force_sat(formula: CnfFormula, max_vars: int = 1024) -> Optional[Assignment]:
    """Complete backtracking search (DPLL) with unit propagation.

    Returns a satisfying assignment (unassigned variables false) or None.
    """
    n = formula.n_vars
    if n > max_vars:
        raise OracleRefused(f"brute_force_sat is limited to {max_vars} variables")
    clauses = formula.clauses
    if any(not clause for clause in clauses):
        return None
    occurs: dict[int, list[int]] = {}
    for i, clause in enumerate(clauses):
        for lit in clause:
            occurs.setdefault(lit, []).append(i)
    value: list[Optional[bool]] = [None] * (n + 1)
    trail: list[int] = []

    def assign_and_propagate(lit: int) -> bool:
        pending = [lit]
        while pending:
            lit = pending.pop()
            var, want = abs(lit), lit > 0
            if value[var] is not None:
                if value[var] != want:
                    return False
                continue
            value[var] = want
            trail.append(var)
            for ci in occurs.get(-lit, ()):
                free = None
                n_free = 0
                for other in clauses[ci]:
                    val = value[abs(other)]
                    if val is None:
                        free = other
                        n_free += 1
                    elif val == (other > 0):
                        break
                else:
                    if n_free == 0:
                        return False
                    if n_free == 1:
                        pending.append(free)
        return True

    def undo(mark: int) -> None:
        while len(trail) > mark:
            value[trail.pop()] = None

    # Clauses without a free positive literal are satisfied by setting every
    # free variable false, so decisions are only needed on clauses that
    # still have one; once none is left the all-false completion is a model.
    positive = [clause for clause in clauses if any(lit > 0 for lit in clause)]

    def pick() -> Optional[int]:
        best, best_len = None, 0
        for clause in positive:
            n_free = 0
            candidate = None
            for lit in clause:
                val = value[abs(lit)]
                if val is None:
                    n_free += 1
                    if lit > 0:
                        candidate = lit
                elif val == (lit > 0):
                    break
            else:
                if candidate is not None and (best is None or n_free < best_len):
                    best, best_len = candidate, n_free
                    if best_len <= 2:
                        break
        return best

    for clause in clauses:
        if len(clause) == 1 and not assign_and_propagate(clause[0]):
            return None

    # explicit stack of (trail mark, decision literal, polarity already flipped)
    stack: list[tuple[int, int, bool]] = []
    while True:
        lit = pick()
        if lit is None:
            return [bool(value[v]) for v in range(1, n + 1)]
        stack.append((len(trail), lit, False))
        ok = assign_and_propagate(lit)
        while not ok:
            while stack and stack[-1][2]:
                mark, _, _ = stack.pop()
                undo(mark)
            if not stack:
                return None
            mark, lit, _ = stack.pop()
            undo(mark)
            stack.append((mark, -lit, True))
            ok = assign_and_propagate(-lit)
