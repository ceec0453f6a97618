"""SAT encoding of bounded k-biclique cover existence.

One Boolean variable per candidate biclique (entry ids double as DIMACS
variable numbers).  For every left vertex a pairwise at-most-one over the
entries containing it; for every right vertex one at-least-one clause over
the entries covering it.
"""

import enum
import itertools
import logging
import os
import shlex
import subprocess
import tempfile
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .cover import Biclique, BicliqueCover, validate_cover
from .dimacs import write_cnf
from .graph import BipartiteGraph, CnfFormula, bits_to_list, iter_bits

log = logging.getLogger(__name__)

SOLVER_ENV = "BICLIQUESAT_SOLVER"


class CatalogMode(enum.Enum):
    CANONICAL = "canonical"
    FULL = "full"


@dataclass
class BicliqueCatalog:
    graph: BipartiteGraph
    k: int
    mode: CatalogMode
    entries: list[Biclique] = field(default_factory=list)
    by_left: dict[int, list[int]] = field(default_factory=dict)
    by_right: dict[int, list[int]] = field(default_factory=dict)
    # alive right vertices no entry covers; the encoding is then trivially UNSAT
    uncovered: list[int] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.entries)

    def add(self, left: Sequence[int], right: Sequence[int]) -> None:
        var = len(self.entries) + 1
        self.entries.append(Biclique(frozenset(left), frozenset(right)))
        for v in left:
            self.by_left[v].append(var)
        for c in right:
            self.by_right[c].append(var)


def _left_subsets(graph: BipartiteGraph, k: int):
    """Yield ``(left_tuple, common_mask)`` for every left subset of size at
    most ``k`` with a nonempty common neighbourhood, by size then
    lexicographically."""
    level = [((v,), graph.left_nbrs[v] & graph.alive_right) for v in iter_bits(graph.alive_left)]
    level = [(s, mask) for s, mask in level if mask]
    alive = graph.alive_left
    for size in range(1, k + 1):
        yield from level
        if size == k:
            break
        nxt = []
        for s, mask in level:
            for v in iter_bits(alive >> (s[-1] + 1) << (s[-1] + 1)):
                common = mask & graph.left_nbrs[v]
                if common:
                    nxt.append((s + (v,), common))
        if not nxt:
            break
        level = nxt


def enumerate_bicliques(
    graph: BipartiteGraph, k: int, mode: CatalogMode = CatalogMode.CANONICAL
) -> BicliqueCatalog:
    """Candidate bounded bicliques with at most ``k`` left vertices.

    FULL lists every nonempty bounded right part under each left subset.
    CANONICAL keeps only right parts of the largest admissible size: any
    cover using ``(S, C)`` stays a cover after growing ``C`` inside the
    common neighbourhood of ``S``, so both catalogs decide the same
    question.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    catalog = BicliqueCatalog(graph.copy(), k, mode)
    catalog.by_left = {v: [] for v in iter_bits(graph.alive_left)}
    catalog.by_right = {c: [] for c in iter_bits(graph.alive_right)}
    for left, mask in _left_subsets(graph, k):
        limit = (1 << len(left)) - 1
        common = bits_to_list(mask)
        if mode is CatalogMode.CANONICAL:
            if len(common) <= limit:
                catalog.add(left, common)
            else:
                for right in itertools.combinations(common, limit):
                    catalog.add(left, right)
        else:
            for size in range(1, min(limit, len(common)) + 1):
                for right in itertools.combinations(common, size):
                    catalog.add(left, right)
    catalog.uncovered = [c for c, ids in catalog.by_right.items() if not ids]
    return catalog


def encode_cover(graph: BipartiteGraph, catalog: BicliqueCatalog) -> CnfFormula:
    """CNF whose models are exactly the covers drawn from ``catalog``."""
    if graph.n_left != catalog.graph.n_left or graph.n_right != catalog.graph.n_right:
        raise ValueError("catalog was built for a different graph")
    clauses: list[tuple[int, ...]] = []
    for v in iter_bits(graph.alive_left):
        ids = catalog.by_left.get(v, ())
        clauses.extend((-a, -b) for a, b in itertools.combinations(ids, 2))
    for c in iter_bits(graph.alive_right):
        clauses.append(tuple(catalog.by_right.get(c, ())))
    if catalog.uncovered:
        log.info("right vertices %s are covered by no candidate biclique; encoding is UNSAT",
                    [c + 1 for c in catalog.uncovered])
    return CnfFormula(len(catalog), clauses)


def decode_model(catalog: BicliqueCatalog, model: Sequence[bool]) -> BicliqueCover:
    """Cover made of the entries set true in ``model``."""
    if len(model) < len(catalog):
        raise ValueError("model is shorter than the catalog")
    cover = BicliqueCover([b for b, value in zip(catalog.entries, model) if value])
    check = validate_cover(catalog.graph, cover, catalog.k)
    if not check:
        raise ValueError(f"model does not describe a cover: {check.violations[:5]}")
    return cover


# -- external solvers ----------------------------------------------------

class SolveStatus(enum.Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"
    TIMEOUT = "TIMEOUT"
    SOLVER_ERROR = "SOLVER_ERROR"


@dataclass
class SolveOutcome:
    status: SolveStatus
    model: Optional[list[bool]] = None
    wall_time: float = 0.0
    output: str = ""


def parse_solver_output(text: str, n_vars: int, returncode: Optional[int] = None) -> tuple[SolveStatus, Optional[list[bool]]]:
    """Read SAT-competition style output (``s`` and ``v`` lines).

    Exit codes 10/20 stand in for a missing ``s`` line.  ``s UNKNOWN``
    counts as a timeout: the solver gave up within its own limits.
    """
    status = None
    literals: list[int] = []
    for line in text.splitlines():
        if line.startswith("s "):
            word = line[2:].strip()
            status = {
                "SATISFIABLE": SolveStatus.SAT,
                "UNSATISFIABLE": SolveStatus.UNSAT,
                "UNKNOWN": SolveStatus.TIMEOUT,
            }.get(word, SolveStatus.SOLVER_ERROR)
        elif line.startswith("v ") or line == "v":
            try:
                literals.extend(int(tok) for tok in line.split()[1:])
            except ValueError:
                return SolveStatus.SOLVER_ERROR, None
    if status is None:
        status = {10: SolveStatus.SAT, 20: SolveStatus.UNSAT}.get(returncode, SolveStatus.SOLVER_ERROR)
    if status is not SolveStatus.SAT:
        return status, None
    if not literals:
        return SolveStatus.SOLVER_ERROR, None
    model = [False] * n_vars
    for lit in literals:
        if lit == 0:
            continue
        if abs(lit) > n_vars:
            return SolveStatus.SOLVER_ERROR, None
        model[abs(lit) - 1] = lit > 0
    return status, model


def solve_external(cnf: CnfFormula, solver_command: Optional[str] = None, timeout: Optional[float] = None) -> SolveOutcome:
    """Run an external solver on ``cnf``.

    ``solver_command`` is a shell-like template containing ``{cnf}``,
    e.g. ``"kissat -q {cnf}"``; it defaults to ``$BICLIQUESAT_SOLVER``.
    """
    solver_command = solver_command or os.environ.get(SOLVER_ENV)
    if not solver_command:
        raise ValueError(f"no solver command given and ${SOLVER_ENV} is not set")
    if "{cnf}" not in solver_command:
        raise ValueError("solver command must contain the {cnf} placeholder")
    fd, path = tempfile.mkstemp(prefix="bicliquesat-", suffix=".cnf")
    try:
        with os.fdopen(fd, "w", encoding="ascii") as fh:
            write_cnf(cnf, fh)
        argv = [tok.replace("{cnf}", path) for tok in shlex.split(solver_command)]
        start = time.perf_counter()
        try:
            proc = subprocess.run(argv, capture_output=True, text=True, timeout=timeout)
        except subprocess.TimeoutExpired as exc:
            out = exc.stdout.decode() if isinstance(exc.stdout, bytes) else (exc.stdout or "")
            return SolveOutcome(SolveStatus.TIMEOUT, wall_time=time.perf_counter() - start, output=out)
        except OSError as exc:
            return SolveOutcome(SolveStatus.SOLVER_ERROR, wall_time=time.perf_counter() - start, output=str(exc))
        elapsed = time.perf_counter() - start
    finally:
        os.unlink(path)
    output = proc.stdout + proc.stderr
    status, model = parse_solver_output(proc.stdout, cnf.n_vars, proc.returncode)
    if status is SolveStatus.SAT and not cnf.is_satisfied_by(model):
        status, model = SolveStatus.SOLVER_ERROR, None
    if status in (SolveStatus.SAT, SolveStatus.UNSAT) and proc.returncode not in (0, 10, 20):
        status, model = SolveStatus.SOLVER_ERROR, None
    return SolveOutcome(status, model, elapsed, output)
