"""Benchmark harness for the window engines.

Three experiment shapes are supported. ``static`` prefills a count-based
window of fixed size and then times rounds of evict, insert, and query.
``dynamic`` runs a fill-and-drain pattern: insert and query up to the
window size, then evict down to empty with no queries, repeated. ``event``
maintains an event-time window over timestamped records, evicting
everything older than the newest timestamp minus the horizon before each
insert.

Every run wraps its monoid in a combine counter, so reports carry a
per-operation combine-count profile alongside wall-clock measurements. For
a fixed configuration and seed the combine profile is deterministic; only
the latency numbers vary between runs. Each experiment runs on a single
thread; run separate processes for separate configurations.
"""

import csv
import math
import random
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .amortized import TwoStacks, TwoStacksLite
from .core import CountingMonoid, RecalcOracle
from .deamortized import Daba, DabaLite
from .monoids import MONOID_NAMES, aggregates_equal, make_monoid

__all__ = [
    "ENGINE_NAMES",
    "MODES",
    "ExperimentConfig",
    "CombineStats",
    "OpReport",
    "InputError",
    "VerificationError",
    "TimestampedWindow",
    "make_engine",
    "synthetic_values",
    "synthetic_events",
    "read_event_csv",
    "run_static",
    "run_dynamic",
    "run_event",
    "run_experiment",
    "percentile",
    "write_samples_csv",
    "write_summary_csv",
]

ENGINES = {
    "two-stacks": TwoStacks,
    "two-stacks-lite": TwoStacksLite,
    "daba": Daba,
    "daba-lite": DabaLite,
    "recalc": RecalcOracle,
}
ENGINE_NAMES = tuple(sorted(ENGINES))
MODES = ("static", "dynamic", "event")

VERIFY_INTERVAL = 10_000
DEFAULT_LATENCY_ROUNDS = 10**6
DEFAULT_THROUGHPUT_ROUNDS = 10**7

SUMMARY_FIELDS = (
    "algo", "monoid", "n", "ops_per_sec",
    "avg_ins_combines", "max_ins_combines",
    "avg_evi_combines", "max_evi_combines",
)


class InputError(Exception):
    """Malformed or out-of-order benchmark input."""


class VerificationError(Exception):
    """Engine output diverged from the recalculation oracle."""


@dataclass
class CombineStats:
    """Combine-call tally for one operation kind."""

    ops: int = 0
    total: int = 0
    max: int = 0
    min: Optional[int] = None

    def add(self, delta: int) -> None:
        self.ops += 1
        self.total += delta
        if delta > self.max:
            self.max = delta
        if self.min is None or delta < self.min:
            self.min = delta

    @property
    def avg(self) -> float:
        return self.total / self.ops if self.ops else 0.0


@dataclass
class ExperimentConfig:
    algo: str
    monoid: str
    mode: str = "static"
    window_exp: int = 10          # window size 2**window_exp (static/dynamic)
    tau_ms: Optional[int] = None  # event-time horizon (event mode)
    rounds: Optional[int] = None
    seed: int = 42
    out_path: Optional[str] = None
    verify: bool = False
    measure: str = "latency"      # "latency" keeps per-round samples
    input_path: Optional[str] = None
    skip_header: bool = False

    def validate(self) -> None:
        if self.algo not in ENGINES:
            raise ValueError(f"unknown algo {self.algo!r}; choose from {ENGINE_NAMES}")
        if self.monoid not in MONOID_NAMES:
            raise ValueError(f"unknown monoid {self.monoid!r}; choose from {MONOID_NAMES}")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.measure not in ("latency", "throughput"):
            raise ValueError(f"unknown measure {self.measure!r}")
        if not 0 <= self.window_exp <= 30:
            raise ValueError("window-exp must be between 0 and 30")
        if self.effective_rounds() < 1:
            raise ValueError("rounds must be at least 1")
        if self.mode == "event" and self.tau_ms is None:
            raise ValueError("event mode requires a horizon (tau-ms)")
        if self.tau_ms is not None and self.tau_ms < 0:
            raise ValueError("tau-ms must be nonnegative")

    def effective_rounds(self) -> int:
        if self.rounds is not None:
            return self.rounds
        if self.measure == "throughput":
            return DEFAULT_THROUGHPUT_ROUNDS
        return DEFAULT_LATENCY_ROUNDS


@dataclass
class OpReport:
    """Measurements from one experiment run."""

    algo: str
    monoid: str
    mode: str
    n: int                    # window size, or the horizon in ms for event mode
    rounds: int
    seed: int
    elapsed_s: float
    ops: int
    insert_stats: CombineStats = field(default_factory=CombineStats)
    evict_stats: CombineStats = field(default_factory=CombineStats)
    query_stats: CombineStats = field(default_factory=CombineStats)
    latency_ns: Optional[list] = None

    @property
    def ops_per_sec(self) -> float:
        return self.ops / self.elapsed_s if self.elapsed_s > 0 else float("inf")

    def latency_summary(self) -> Optional[dict]:
        if not self.latency_ns:
            return None
        s = sorted(self.latency_ns)
        return {
            "min": s[0],
            "median": percentile(s, 50),
            "p99": percentile(s, 99),
            "p99.99": percentile(s, 99.99),
            "max": s[-1],
        }

    def summary_row(self) -> dict:
        return {
            "algo": self.algo,
            "monoid": self.monoid,
            "n": self.n,
            "ops_per_sec": f"{self.ops_per_sec:.1f}",
            "avg_ins_combines": f"{self.insert_stats.avg:.4f}",
            "max_ins_combines": self.insert_stats.max,
            "avg_evi_combines": f"{self.evict_stats.avg:.4f}",
            "max_evi_combines": self.evict_stats.max,
        }


def percentile(samples, q: float):
    """Nearest-rank percentile over ``samples`` (sorted or not)."""
    if not samples:
        raise ValueError("no samples")
    s = sorted(samples)
    rank = math.ceil(q / 100.0 * len(s))
    return s[max(0, min(len(s), rank) - 1)]


# --------------------------------------------------------------------------
# Input streams.

def synthetic_values(seed: int):
    """Infinite deterministic stream of small positive integers."""
    rng = random.Random(seed)
    while True:
        yield rng.randint(1, 100)


def synthetic_events(seed: int, count: int, mean_gap_ms: float = 10.0,
                     start_ms: int = 0):
    """Deterministic timestamped records at roughly 100 Hz.

    Inter-arrival gaps are exponential with the given mean, rounded to whole
    milliseconds, so timestamps are monotone nondecreasing.
    """
    rng = random.Random(seed)
    ts = start_ms
    for _ in range(count):
        yield ts, rng.randint(1, 100)
        ts += int(round(rng.expovariate(1.0 / mean_gap_ms)))


def read_event_csv(path: str, skip_header: bool = False):
    """Yield (timestamp_ms, value) rows from a two-column CSV.

    Timestamps are parsed as exact integers and must be monotone
    nondecreasing; violations raise InputError naming the offending line.
    """
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        last_ts = None
        for lineno, row in enumerate(reader, start=1):
            if skip_header and lineno == 1:
                continue
            if len(row) != 2:
                raise InputError(f"line {lineno}: expected 2 columns, got {len(row)}")
            try:
                ts = int(row[0])
            except ValueError:
                raise InputError(f"line {lineno}: bad timestamp {row[0]!r}") from None
            try:
                value = int(row[1])
            except ValueError:
                try:
                    value = float(row[1])
                except ValueError:
                    raise InputError(f"line {lineno}: bad value {row[1]!r}") from None
            if last_ts is not None and ts < last_ts:
                raise InputError(
                    f"line {lineno}: timestamp {ts} goes backwards (previous {last_ts})"
                )
            last_ts = ts
            yield ts, value


# --------------------------------------------------------------------------
# Engines and verification plumbing.

def make_engine(algo: str, monoid_name: str):
    """Build an engine with its monoid wrapped in a combine counter."""
    if algo not in ENGINES:
        raise ValueError(f"unknown algo {algo!r}; choose from {ENGINE_NAMES}")
    raw = make_monoid(monoid_name)
    counting = CountingMonoid(raw)
    return ENGINES[algo](counting), counting


class TimestampedWindow:
    """Engine wrapper tracking per-element timestamps.

    FIFO engines know nothing about time; this keeps a parallel queue of
    timestamps so event-time eviction can ask for the oldest and youngest
    ones in O(1).
    """

    def __init__(self, engine):
        self.engine = engine
        self._ts = deque()

    def insert(self, ts: int, value) -> None:
        self.engine.insert(value)
        self._ts.append(ts)

    def evict(self) -> None:
        self.engine.evict()
        self._ts.popleft()

    def query(self):
        return self.engine.query()

    def oldest_ts(self) -> int:
        return self._ts[0]

    def youngest_ts(self) -> int:
        return self._ts[-1]

    def __len__(self):
        return len(self._ts)


class _OracleMirror:
    """Shadow window used for --verify spot checks."""

    def __init__(self, raw_monoid):
        self._m = raw_monoid
        self._fifo = deque()

    def insert(self, value):
        self._fifo.append(value)

    def evict(self):
        self._fifo.popleft()

    def check(self, engine_output, where: str) -> None:
        acc = self._m.identity
        combine = self._m.combine
        for v in self._fifo:
            acc = combine(acc, v)
        if not aggregates_equal(self._m.name, acc, engine_output):
            raise VerificationError(
                f"{where}: engine returned {engine_output!r}, oracle says {acc!r}"
            )


# --------------------------------------------------------------------------
# Runners.

def run_static(cfg: ExperimentConfig,
               on_query: Optional[Callable] = None) -> OpReport:
    """Fixed-size window: prefill, then rounds of evict, insert, query."""
    cfg.validate()
    engine, counting = make_engine(cfg.algo, cfg.monoid)
    lift = counting.lift
    n = 2 ** cfg.window_exp
    rounds = cfg.effective_rounds()
    values = synthetic_values(cfg.seed)
    mirror = _OracleMirror(counting.inner) if cfg.verify else None

    for _ in range(n):
        v = lift(next(values))
        engine.insert(v)
        if mirror is not None:
            mirror.insert(v)

    report = OpReport(cfg.algo, cfg.monoid, "static", n, rounds, cfg.seed,
                      elapsed_s=0.0, ops=3 * rounds)
    samples = [] if cfg.measure == "latency" else None
    ins, evi, qry = report.insert_stats, report.evict_stats, report.query_stats
    perf_ns = time.perf_counter_ns
    t_start = time.perf_counter()
    for r in range(rounds):
        raw = next(values)
        t0 = perf_ns() if samples is not None else 0
        c0 = counting.calls
        engine.evict()
        c1 = counting.calls
        v = lift(raw)
        engine.insert(v)
        c2 = counting.calls
        out = engine.query()
        c3 = counting.calls
        if samples is not None:
            samples.append(perf_ns() - t0)
        evi.add(c1 - c0)
        ins.add(c2 - c1)
        qry.add(c3 - c2)
        if mirror is not None:
            mirror.evict()
            mirror.insert(v)
            if r % VERIFY_INTERVAL == 0:
                mirror.check(out, f"round {r}")
        if on_query is not None:
            on_query(out)
    report.elapsed_s = time.perf_counter() - t_start
    report.latency_ns = samples
    return report


def run_dynamic(cfg: ExperimentConfig,
                on_query: Optional[Callable] = None) -> OpReport:
    """Fill-and-drain: insert+query up to the window size, evict to empty.

    ``rounds`` counts data items inserted in total; the drain phase issues
    no queries. Latency samples cover one item each: insert+query while
    filling, a single evict while draining.
    """
    cfg.validate()
    engine, counting = make_engine(cfg.algo, cfg.monoid)
    lift = counting.lift
    n = 2 ** cfg.window_exp
    total_items = cfg.effective_rounds()
    values = synthetic_values(cfg.seed)
    mirror = _OracleMirror(counting.inner) if cfg.verify else None

    report = OpReport(cfg.algo, cfg.monoid, "dynamic", n, 0, cfg.seed,
                      elapsed_s=0.0, ops=0)
    samples = [] if cfg.measure == "latency" else None
    ins, evi, qry = report.insert_stats, report.evict_stats, report.query_stats
    perf_ns = time.perf_counter_ns
    inserted = 0
    ops = 0
    t_start = time.perf_counter()
    while inserted < total_items:
        while len(engine) < n and inserted < total_items:
            raw = next(values)
            t0 = perf_ns() if samples is not None else 0
            c0 = counting.calls
            v = lift(raw)
            engine.insert(v)
            c1 = counting.calls
            out = engine.query()
            c2 = counting.calls
            if samples is not None:
                samples.append(perf_ns() - t0)
            ins.add(c1 - c0)
            qry.add(c2 - c1)
            inserted += 1
            ops += 2
            if mirror is not None:
                mirror.insert(v)
                if inserted % VERIFY_INTERVAL == 0:
                    mirror.check(out, f"item {inserted}")
            if on_query is not None:
                on_query(out)
        while len(engine) > 0:
            t0 = perf_ns() if samples is not None else 0
            c0 = counting.calls
            engine.evict()
            c1 = counting.calls
            if samples is not None:
                samples.append(perf_ns() - t0)
            evi.add(c1 - c0)
            ops += 1
            if mirror is not None:
                mirror.evict()
    report.elapsed_s = time.perf_counter() - t_start
    report.ops = ops
    report.rounds = len(samples) if samples is not None else inserted
    report.latency_ns = samples
    return report


def run_event(cfg: ExperimentConfig, records: Optional[Iterable] = None,
              on_query: Optional[Callable] = None) -> OpReport:
    """Event-time window: evict beyond the horizon, insert, query per record."""
    cfg.validate()
    engine, counting = make_engine(cfg.algo, cfg.monoid)
    lift = counting.lift
    tau = cfg.tau_ms
    if records is None:
        if cfg.input_path is not None:
            records = read_event_csv(cfg.input_path, cfg.skip_header)
        else:
            records = synthetic_events(cfg.seed, cfg.effective_rounds())
    window = TimestampedWindow(engine)
    mirror = _OracleMirror(counting.inner) if cfg.verify else None

    report = OpReport(cfg.algo, cfg.monoid, "event", tau, 0, cfg.seed,
                      elapsed_s=0.0, ops=0)
    samples = [] if cfg.measure == "latency" else None
    ins, evi, qry = report.insert_stats, report.evict_stats, report.query_stats
    perf_ns = time.perf_counter_ns
    last_ts = None
    rounds = 0
    ops = 0
    t_start = time.perf_counter()
    for ts, raw in records:
        if last_ts is not None and ts < last_ts:
            raise InputError(
                f"record {rounds + 1}: timestamp {ts} goes backwards (previous {last_ts})"
            )
        last_ts = ts
        horizon = ts - tau
        t0 = perf_ns() if samples is not None else 0
        while len(window) > 0 and window.oldest_ts() < horizon:
            c0 = counting.calls
            window.evict()
            evi.add(counting.calls - c0)
            ops += 1
            if mirror is not None:
                mirror.evict()
        c0 = counting.calls
        v = lift(raw)
        window.insert(ts, v)
        c1 = counting.calls
        out = window.query()
        c2 = counting.calls
        if samples is not None:
            samples.append(perf_ns() - t0)
        ins.add(c1 - c0)
        qry.add(c2 - c1)
        ops += 2
        rounds += 1
        if mirror is not None:
            mirror.insert(v)
            if rounds % VERIFY_INTERVAL == 0:
                mirror.check(out, f"record {rounds}")
        if on_query is not None:
            on_query(out)
    report.elapsed_s = time.perf_counter() - t_start
    report.rounds = rounds
    report.ops = ops
    report.latency_ns = samples
    return report


def run_experiment(cfg: ExperimentConfig, **kwargs) -> OpReport:
    """Dispatch on cfg.mode."""
    runner = {"static": run_static, "dynamic": run_dynamic, "event": run_event}
    return runner[cfg.mode](cfg, **kwargs)


# --------------------------------------------------------------------------
# CSV output.

def write_samples_csv(report: OpReport, path: str) -> None:
    """Per-round latency samples as ``round,latency_ns`` rows."""
    if report.latency_ns is None:
        raise ValueError("report has no latency samples (throughput mode?)")
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["round", "latency_ns"])
        writer.writerows(enumerate(report.latency_ns))


def write_summary_csv(report: OpReport, path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=SUMMARY_FIELDS)
        writer.writeheader()
        writer.writerow(report.summary_row())
