"""Monte-Carlo sweeps over random graphs, threshold intervals and output.

Every trial owns a substream ``Rng(master_seed).derive(cell * trials +
trial)``, where cells are numbered in ``(k, ratio)`` order.  Results are
therefore the same for any worker count and completion order.
"""

import csv
import enum
import io
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Callable, Optional, Sequence

from .cover import Strategy, find_cover
from .encoder import CatalogMode, SolveStatus, decode_model, encode_cover, enumerate_bicliques, solve_external
from .graph import random_graph
from .matching import is_matched
from .oracle import OracleRefused, brute_force_sat
from .rng import Rng

log = logging.getLogger(__name__)

CSV_HEADER = ["n", "m", "k", "ratio", "trials", "successes", "rate"]


def ratio_grid(start, stop, step) -> list[Decimal]:
    """Inclusive decimal grid ``start, start+step, ..., <= stop``."""
    start, stop, step = Decimal(str(start)), Decimal(str(stop)), Decimal(str(step))
    if step <= 0:
        raise ValueError("ratio step must be positive")
    if stop < start:
        raise ValueError("ratio range is empty")
    exponent = min(start.as_tuple().exponent, step.as_tuple().exponent)
    quantum = Decimal(1).scaleb(exponent)
    count = int((stop - start) / step) + 1
    return [(start + i * step).quantize(quantum) for i in range(count)]


@dataclass
class SweepConfig:
    n: int
    k_values: list[int]
    ratios: list[Decimal]
    trials: int = 100
    t: Optional[int] = 2
    strategy: Strategy = Strategy.RAND
    master_seed: int = 0
    solver_command: Optional[str] = None
    timeout: Optional[float] = None
    workers: int = 1

    @classmethod
    def grid(cls, n, k_from, k_to, ratio_from, ratio_to, ratio_step, **kwargs) -> "SweepConfig":
        return cls(n, list(range(k_from, k_to + 1)), ratio_grid(ratio_from, ratio_to, ratio_step), **kwargs)

    def validate(self) -> None:
        if self.n < 1:
            raise ValueError("n must be positive")
        if not self.k_values or not self.ratios:
            raise ValueError("k and ratio ranges must be nonempty")
        if any(not 1 <= k <= self.n for k in self.k_values):
            raise ValueError("every k must satisfy 1 <= k <= n")
        if any(r < 0 for r in self.ratios):
            raise ValueError("ratios must be non-negative")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.t is not None and self.t < 2:
            raise ValueError("t must be at least 2 (or None for unbounded)")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")

    def m_for(self, ratio: Decimal) -> int:
        return int((ratio * self.n).to_integral_value(rounding=ROUND_HALF_UP))

    def cells(self) -> list[tuple[int, Decimal]]:
        return [(k, r) for k in self.k_values for r in self.ratios]

    def trial_rng(self, cell: int, trial: int) -> Rng:
        return Rng(self.master_seed).derive(cell * self.trials + trial)


@dataclass
class SweepRow:
    n: int
    m: int
    k: int
    ratio: Decimal
    trials: int
    successes: int
    mean_time: float = 0.0

    @property
    def rate(self) -> float:
        return self.successes / self.trials


@dataclass
class SweepResult:
    rows: list[SweepRow] = field(default_factory=list)

    def row(self, k: int, ratio) -> SweepRow:
        ratio = Decimal(str(ratio))
        for r in self.rows:
            if r.k == k and r.ratio == ratio:
                return r
        raise KeyError((k, ratio))


# -- trials ----------------------------------------------------------------

def _matched_trial(config: SweepConfig, k: int, m: int, rng: Rng) -> bool:
    return is_matched(random_graph(config.n, m, k, rng))


def _cover_trial(config: SweepConfig, k: int, m: int, rng: Rng) -> bool:
    graph = random_graph(config.n, m, k, rng)
    return find_cover(graph, config.t, config.strategy, rng) is not None


@dataclass
class PairedOutcome:
    heuristic: bool
    heuristic_time: float
    sat_status: SolveStatus
    sat_time: float
    n_catalog: int = 0


def paired_trial(config: SweepConfig, k: int, m: int, rng: Rng) -> PairedOutcome:
    """Heuristic and SAT encoding on the same instance."""
    graph = random_graph(config.n, m, k, rng)
    start = time.perf_counter()
    cover = find_cover(graph, config.t, config.strategy, rng)
    h_time = time.perf_counter() - start

    start = time.perf_counter()
    catalog = enumerate_bicliques(graph, config.t, CatalogMode.CANONICAL)
    cnf = encode_cover(graph, catalog)
    if config.solver_command:
        outcome = solve_external(cnf, config.solver_command, config.timeout)
        status, model = outcome.status, outcome.model
    else:
        try:
            model = brute_force_sat(cnf)
            status = SolveStatus.SAT if model is not None else SolveStatus.UNSAT
        except OracleRefused:
            status, model = SolveStatus.TIMEOUT, None
    s_time = time.perf_counter() - start
    if status is SolveStatus.SAT:
        try:
            decode_model(catalog, model)
        except ValueError:
            log.error("solver model does not decode to a cover (n=%d m=%d k=%d)", config.n, m, k)
            status = SolveStatus.SOLVER_ERROR
    return PairedOutcome(cover is not None, h_time, status, s_time, len(catalog))


def _timed(fn: Callable, config: SweepConfig, k: int, m: int, rng: Rng):
    start = time.perf_counter()
    value = fn(config, k, m, rng)
    return value, time.perf_counter() - start


def _run_chunk(fn: Callable, config: SweepConfig, cell: int, trials: Sequence[int]) -> list:
    k, ratio = config.cells()[cell]
    m = config.m_for(ratio)
    return [_timed(fn, config, k, m, config.trial_rng(cell, t)) for t in trials]


def _run(fn: Callable, config: SweepConfig) -> list[list]:
    """Outcomes indexed ``[cell][trial]`` as ``(value, seconds)``."""
    config.validate()
    cells = config.cells()
    if config.workers == 1:
        return [_run_chunk(fn, config, i, range(config.trials)) for i in range(len(cells))]
    chunk = max(1, math.ceil(config.trials / config.workers))
    results: list[list] = [[None] * config.trials for _ in cells]
    with ProcessPoolExecutor(config.workers) as pool:
        futures = {}
        for i in range(len(cells)):
            for lo in range(0, config.trials, chunk):
                trials = range(lo, min(lo + chunk, config.trials))
                futures[pool.submit(_run_chunk, fn, config, i, trials)] = (i, trials)
        for future, (i, trials) in futures.items():
            for t, outcome in zip(trials, future.result()):
                results[i][t] = outcome
    return results


def _summarize(config: SweepConfig, outcomes: list[list], success: Callable = bool) -> SweepResult:
    result = SweepResult()
    for (k, ratio), cell in zip(config.cells(), outcomes):
        successes = sum(1 for value, _ in cell if success(value))
        mean_time = sum(sec for _, sec in cell) / len(cell)
        result.rows.append(SweepRow(config.n, config.m_for(ratio), k, ratio, config.trials, successes, mean_time))
    return result


def sweep_matched(config: SweepConfig) -> SweepResult:
    """Fraction of random graphs with a clause-saturating matching per cell."""
    return _summarize(config, _run(_matched_trial, config))


def sweep_cover(config: SweepConfig) -> SweepResult:
    """Fraction of random graphs on which :func:`find_cover` succeeds."""
    return _summarize(config, _run(_cover_trial, config))


@dataclass
class CompareRow:
    n: int
    m: int
    k: int
    ratio: Decimal
    trials: int
    heuristic: int
    sat_true: int
    sat_finished: int
    # heuristic succeeded where the solver proved UNSAT; must stay 0
    contradictions: int
    mean_time_ratio: float
    max_time_ratio: float
    heuristic_time: float
    sat_time: float

    @property
    def triple(self) -> str:
        return f"{self.heuristic}/{self.sat_true}/{self.sat_finished}"


def compare_sat(config: SweepConfig) -> list[CompareRow]:
    """Heuristic versus SAT encoding on paired instances.

    Uses ``config.solver_command`` when set, else the in-process
    brute-force oracle (instances beyond its guard count as unfinished).
    Solver failures are recorded per instance and never abort the sweep.
    """
    if config.t is None:
        raise ValueError("compare_sat needs a finite t")
    rows = []
    for (k, ratio), cell in zip(config.cells(), _run(paired_trial, config)):
        outs = [value for value, _ in cell]
        finished = [o for o in outs if o.sat_status in (SolveStatus.SAT, SolveStatus.UNSAT)]
        ratios = [o.heuristic_time / o.sat_time for o in finished if o.sat_time > 0]
        rows.append(CompareRow(
            n=config.n,
            m=config.m_for(ratio),
            k=k,
            ratio=ratio,
            trials=config.trials,
            heuristic=sum(o.heuristic for o in outs),
            sat_true=sum(o.sat_status is SolveStatus.SAT for o in outs),
            sat_finished=len(finished),
            contradictions=sum(o.heuristic and o.sat_status is SolveStatus.UNSAT for o in outs),
            mean_time_ratio=sum(ratios) / len(ratios) if ratios else math.nan,
            max_time_ratio=max(ratios) if ratios else math.nan,
            heuristic_time=sum(o.heuristic_time for o in outs) / len(outs),
            sat_time=sum(o.sat_time for o in outs) / len(outs),
        ))
    return rows


# -- thresholds -------------------------------------------------------------

class Axis(enum.Enum):
    RATIO = "ratio"    # success falls as m/n grows, per fixed k
    DEGREE = "degree"  # success grows with k, per fixed m/n


@dataclass
class ThresholdInterval:
    low: Optional[object]
    high: Optional[object]
    monotone: bool = True

    @property
    def midpoint(self) -> Optional[float]:
        if self.low is None or self.high is None:
            return None
        return (float(self.low) + float(self.high)) / 2


def _interval(points: list[tuple[object, float]], rising: bool) -> ThresholdInterval:
    """``points`` sorted by grid value.  ``low`` ends the longest prefix on
    the "before" side of the transition, ``high`` starts the longest suffix
    on the "after" side; values in between are non-monotone noise."""
    if rising:
        before = [rate <= 0.01 for _, rate in points]
        after = [rate >= 0.99 for _, rate in points]
    else:
        before = [rate >= 0.99 for _, rate in points]
        after = [rate <= 0.01 for _, rate in points]
    low = None
    prefix = 0
    while prefix < len(points) and before[prefix]:
        low = points[prefix][0]
        prefix += 1
    high = None
    suffix = len(points)
    while suffix > 0 and after[suffix - 1]:
        suffix -= 1
        high = points[suffix][0]
    monotone = not any(before[prefix:]) and not any(after[:suffix])
    return ThresholdInterval(low, high, monotone)


def thresholds(result: SweepResult, axis: Axis = Axis.RATIO) -> dict:
    """Per fixed ``k`` (RATIO axis) or fixed ratio (DEGREE axis), the
    interval between the 99% and 1% success levels; ``None`` marks an
    endpoint the sweep never reached."""
    groups: dict = {}
    for row in result.rows:
        key, value = (row.k, row.ratio) if axis is Axis.RATIO else (row.ratio, row.k)
        groups.setdefault(key, []).append((value, row.rate))
    out = {}
    for key in sorted(groups):
        interval = _interval(sorted(groups[key]), rising=axis is Axis.DEGREE)
        if not interval.monotone:
            log.warning("non-monotone success rates at %s=%s", "k" if axis is Axis.RATIO else "ratio", key)
        out[key] = interval
    return out


# -- output -----------------------------------------------------------------

def format_csv(result: SweepResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in result.rows:
        writer.writerow([r.n, r.m, r.k, r.ratio, r.trials, r.successes, f"{r.rate:.6g}"])
    return buf.getvalue()


def format_pgm(result: SweepResult) -> str:
    """ASCII heatmap: one column per ratio, one row per k (ascending),
    brightness ``round(255 * rate)``."""
    ks = sorted({r.k for r in result.rows})
    ratios = sorted({r.ratio for r in result.rows})
    rate = {(r.k, r.ratio): r.rate for r in result.rows}
    lines = ["P2", f"{len(ratios)} {len(ks)}", "255"]
    for k in ks:
        lines.append(" ".join(str(round(255 * rate.get((k, x), 0.0))) for x in ratios))
    return "\n".join(lines) + "\n"


def emit_outputs(result: SweepResult, csv_path=None, pgm_path=None) -> None:
    if csv_path is not None:
        with open(csv_path, "w", encoding="ascii", newline="") as fh:
            fh.write(format_csv(result))
    if pgm_path is not None:
        with open(pgm_path, "w", encoding="ascii", newline="") as fh:
            fh.write(format_pgm(result))
