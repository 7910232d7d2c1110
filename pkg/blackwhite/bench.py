# File: blackwhite/bench.py
"""Amortized-cost benchmarks: wall-clock ns/op and comparisons/op by size.

Values are pre-generated and structures are built before the clock starts;
only the operations themselves are timed.
"""
from __future__ import annotations

import csv
import enum
import logging
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .core import BlackWhiteArray, GrowthPolicy

logger = logging.getLogger(__name__)

BENCH_OPS = ('insert', 'search', 'delete')
CSV_HEADER = ('size_exp', 'op', 'config', 'hit_ratio', 'ns_per_op', 'cmp_per_op')


class BenchOutputError(Exception):
    """Raised when benchmark rows cannot be written or read."""


class Configuration(str, enum.Enum):
    PERFECT = 'perfect'  # total is exactly 2**m: one active segment
    RANDOM = 'random'    # total uniform in [1, 2**m - 1], averaged over trials


@dataclass(frozen=True)
class BenchConfig:
    min_exp: int = 10
    max_exp: int = 14
    ops: Tuple[str, ...] = BENCH_OPS
    config: Configuration = Configuration.PERFECT
    trials: int = 1000
    hit_ratio: float = 1.0
    seed: int = 0
    probes: int = 1024
    min_batch_ns: int = 1_000_000
    value_bits: int = 30

    def __post_init__(self):
        ops = (self.ops,) if isinstance(self.ops, str) else tuple(self.ops)
        object.__setattr__(self, 'ops', ops)
        object.__setattr__(self, 'config', Configuration(self.config))
        if not 1 <= self.min_exp <= self.max_exp:
            raise ValueError(f"need 1 <= min_exp <= max_exp, got {self.min_exp}..{self.max_exp}")
        unknown = set(ops) - set(BENCH_OPS)
        if unknown or not ops:
            raise ValueError(f"ops must be a non-empty subset of {', '.join(BENCH_OPS)}, got {ops}")
        if self.trials < 1:
            raise ValueError(f"trials must be at least 1, got {self.trials}")
        if not 0.0 <= self.hit_ratio <= 1.0:
            raise ValueError(f"hit_ratio must lie in [0, 1], got {self.hit_ratio}")
        if self.seed < 0:
            raise ValueError(f"seed must be non-negative, got {self.seed}")
        if self.probes < 1:
            raise ValueError(f"probes must be at least 1, got {self.probes}")

    @property
    def sizes(self) -> range:
        return range(self.min_exp, self.max_exp + 1)


@dataclass(frozen=True)
class BenchRow:
    size_exp: int
    op: str
    config: str
    hit_ratio: float
    ns_per_op: float
    cmp_per_op: float


@dataclass
class SweepReport:
    rows: List[BenchRow] = field(default_factory=list)
    failures: List[dict] = field(default_factory=list)


# -- workload ---------------------------------------------------------------

def _rng(cfg: BenchConfig, *key: int) -> np.random.Generator:
    return np.random.default_rng([cfg.seed, *key])


def stored_values(rng: np.random.Generator, count: int, value_bits: int) -> List[int]:
    """Even 32-bit values; odd values are then guaranteed misses."""
    return (rng.integers(0, 1 << value_bits, size=count, dtype=np.int64) * 2).tolist()


def probe_values(rng: np.random.Generator, stored: Sequence[int], count: int,
                 hit_ratio: float, value_bits: int) -> List[int]:
    """``count`` probes: distinct stored values with probability ``hit_ratio``, odd misses otherwise."""
    hits = int(rng.binomial(count, hit_ratio)) if stored else 0
    hits = min(hits, len(stored))
    picked = rng.choice(len(stored), size=hits, replace=False) if hits else np.empty(0, dtype=np.int64)
    misses = rng.integers(0, 1 << value_bits, size=count - hits, dtype=np.int64) * 2 + 1
    probes = np.concatenate([np.asarray(stored, dtype=np.int64)[picked], misses])
    rng.shuffle(probes)
    return probes.tolist()


# -- measurement ------------------------------------------------------------

def _time_probes(build: Callable[[], BlackWhiteArray], op: str, probes: Sequence[int],
                 min_batch_ns: int) -> Tuple[float, float]:
    """Time ``op`` over ``probes`` in batches until at least ``min_batch_ns`` has elapsed.

    Deletes rebuild the structure between batches so every batch runs at the
    intended size. Comparisons come from the first batch only.
    """
    elapsed = 0
    done = 0
    comparisons = None
    bwa = None
    while True:
        if bwa is None or op == 'delete':
            bwa = build()
        bwa.counters.reset()
        call = bwa.search if op == 'search' else bwa.delete
        start = time.perf_counter_ns()
        for value in probes:
            call(value)
        elapsed += time.perf_counter_ns() - start
        done += len(probes)
        if comparisons is None:
            comparisons = bwa.counters.comparisons
        if elapsed >= min_batch_ns:
            break
    return elapsed / done, comparisons / len(probes)


def _measure_insert(cfg: BenchConfig, size_exp: int) -> BenchRow:
    count = 1 << size_exp
    values = stored_values(_rng(cfg, size_exp), count, cfg.value_bits)
    elapsed = 0
    rounds = 0
    comparisons = None
    while True:
        # room for 2**m values without growing
        bwa = BlackWhiteArray(size_exp + 1, GrowthPolicy.FIXED)
        insert = bwa.insert
        start = time.perf_counter_ns()
        for value in values:
            insert(value)
        elapsed += time.perf_counter_ns() - start
        rounds += 1
        if comparisons is None:
            comparisons = bwa.counters.comparisons
        if elapsed >= cfg.min_batch_ns:
            break
    return BenchRow(size_exp, 'insert', cfg.config.value, cfg.hit_ratio,
                    elapsed / (rounds * count), comparisons / count)


def _probe_count(cfg: BenchConfig, op: str, total: int) -> int:
    if op == 'delete':
        # a batch may not shrink the structure by more than a quarter
        return max(1, min(cfg.probes, total >> 2))
    return cfg.probes


def _measure_probe(cfg: BenchConfig, op: str, size_exp: int) -> BenchRow:
    if cfg.config is Configuration.PERFECT:
        totals = [1 << size_exp]
    else:
        totals = _rng(cfg, size_exp, 0).integers(1, 1 << size_exp, size=cfg.trials).tolist()

    ns_samples = []
    cmp_samples = []
    for trial, total in enumerate(totals):
        rng = _rng(cfg, size_exp, trial + 1)
        values = stored_values(rng, total, cfg.value_bits)
        probes = probe_values(rng, values, _probe_count(cfg, op, total), cfg.hit_ratio, cfg.value_bits)
        ns, cmp = _time_probes(lambda: BlackWhiteArray.from_values(values), op, probes, cfg.min_batch_ns)
        ns_samples.append(ns)
        cmp_samples.append(cmp)
    return BenchRow(size_exp, op, cfg.config.value, cfg.hit_ratio,
                    float(np.mean(ns_samples)), float(np.mean(cmp_samples)))


def _sweep(cfg: BenchConfig, op: str, measure: Callable[[int], BenchRow],
           failures: Optional[list], on_row: Optional[Callable[[BenchRow], None]]) -> List[BenchRow]:
    rows = []
    for size_exp in cfg.sizes:
        try:
            row = measure(size_exp)
        except MemoryError as e:
            logger.error("Benchmark %s at 2**%d failed: %s", op, size_exp, e)
            if failures is not None:
                failures.append({'size_exp': size_exp, 'op': op, 'success': False, 'error_message': str(e)})
            continue
        logger.info("%s 2**%d %s: %.1f ns/op, %.2f cmp/op",
                    op, size_exp, row.config, row.ns_per_op, row.cmp_per_op)
        rows.append(row)
        if on_row is not None:
            on_row(row)
    return rows


def run_insert_bench(cfg: BenchConfig, failures: Optional[list] = None,
                     on_row: Optional[Callable[[BenchRow], None]] = None) -> List[BenchRow]:
    """One insert row per size: fill a fresh structure with 2**m pre-generated values."""
    return _sweep(cfg, 'insert', lambda m: _measure_insert(cfg, m), failures, on_row)


def run_probe_bench(cfg: BenchConfig, failures: Optional[list] = None,
                    on_row: Optional[Callable[[BenchRow], None]] = None) -> List[BenchRow]:
    """Search and delete rows per size for the configured configuration and hit ratio."""
    rows = []
    for op in ('search', 'delete'):
        if op in cfg.ops:
            rows.extend(_sweep(cfg, op, lambda m, op=op: _measure_probe(cfg, op, m), failures, on_row))
    return rows


def run_sweep(cfg: BenchConfig, on_row: Optional[Callable[[BenchRow], None]] = None) -> SweepReport:
    report = SweepReport()
    if 'insert' in cfg.ops:
        report.rows.extend(run_insert_bench(cfg, report.failures, on_row))
    report.rows.extend(run_probe_bench(cfg, report.failures, on_row))
    return report


def sweep_length(cfg: BenchConfig) -> int:
    return len(cfg.ops) * len(cfg.sizes)


# -- CSV --------------------------------------------------------------------

def write_rows(rows: Iterable[BenchRow], stream) -> None:
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow([row.size_exp, row.op, row.config, repr(float(row.hit_ratio)),
                         repr(float(row.ns_per_op)), repr(float(row.cmp_per_op))])


def write_csv(rows: Iterable[BenchRow], path) -> None:
    try:
        with open(path, 'w', newline='', encoding='utf-8') as f:
            write_rows(rows, f)
    except OSError as e:
        raise BenchOutputError(f"could not write benchmark CSV to {path}: {e}") from e


def read_csv(path) -> List[BenchRow]:
    try:
        with open(path, newline='', encoding='utf-8') as f:
            records = list(csv.DictReader(f))
    except OSError as e:
        raise BenchOutputError(f"could not read benchmark CSV from {path}: {e}") from e
    return [BenchRow(int(r['size_exp']), r['op'], r['config'], float(r['hit_ratio']),
                     float(r['ns_per_op']), float(r['cmp_per_op'])) for r in records]


# -- persisted runs -----------------------------------------------------------

def run_benchmark(run):
    """Perform the sweep described by a BenchRun and store its measurements.

    Args:
        run: BenchRun instance holding the sweep parameters

    Returns:
        Dictionary with the rows, the failed sizes and a success flag
    """
    results = {
        'rows': [],
        'failures': [],
    }
    try:
        report = run_sweep(run.to_config())
        for row in report.rows:
            run.measurements.create(**asdict(row))
        run.row_count = len(report.rows)
        run.finished = True
        run.error_message = None
        run.save()

        results['rows'] = report.rows
        results['failures'] = report.failures
        results['success'] = True
    except Exception as e:
        logger.exception("Error in benchmark run %s", run.pk)
        run.error_message = str(e)
        run.save()
        results['success'] = False
        results['error_message'] = str(e)
    return results
