"""Benchmark harness: run both factoring algorithms over a dataset with
per-number time budgets and record the outcomes.

Timeouts are cooperative: the algorithms poll their deadline at bounded
intervals (rho every `deadline_check_interval` iterations, the sieve per
candidate and per round), so a recorded elapsed time may overshoot the
budget by one polling interval. Every record carries a seed derived from
(config seed, row index, algorithm), which makes results independent of
worker scheduling.
"""

from __future__ import annotations

import csv
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import errors
from .pollard import RhoConfig, pollard_factor
from .primegen import Semiprime, derive_seed
from .sieve import QsParams, qs_factor

ALGORITHMS = ("pollard", "qs")
STATUSES = ("success", "timeout", "error")

# Documented polling slack: a timed-out attempt's recorded elapsed time may
# exceed its budget by at most the work done between two deadline polls.
# At desk-scale inputs (products up to ~60 bits, budgets up to a few
# seconds) that is comfortably below this bound; very long budgets reach
# larger rounds whose final poll gap can be wider.
TIMEOUT_SLACK_SECONDS = 0.25

RESULTS_CSV_HEADER = [
    "n",
    "p",
    "q",
    "p_bits",
    "q_bits",
    "n_bits",
    "algorithm",
    "status",
    "factor",
    "elapsed_seconds",
    "b_param",
    "m_param",
    "iterations",
    "seed",
]


@dataclass(frozen=True)
class FactorOutcome:
    """Result of one factorization attempt."""

    algorithm: str
    n: int
    status: str
    factor: int | None
    elapsed_seconds: float
    b_param: int | None
    m_param: int | None
    iterations: int
    seed: int


@dataclass(frozen=True)
class BenchRecord:
    semiprime: Semiprime
    outcome: FactorOutcome


@dataclass(frozen=True)
class BenchConfig:
    budget_seconds: float = 180.0
    algorithms: tuple[str, ...] = ALGORITHMS
    seed: int = 0
    workers: int = 1
    qs_params: QsParams = QsParams()

    def __post_init__(self):
        if self.budget_seconds <= 0:
            raise ValueError("budget_seconds must be positive")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        bad = [a for a in self.algorithms if a not in ALGORITHMS]
        if bad or not self.algorithms:
            raise ValueError(f"algorithms must be a nonempty subset of {ALGORITHMS}")


def run_attempt(
    algorithm: str,
    n: int,
    seed: int,
    budget_seconds: float,
    qs_params: QsParams | None = None,
) -> FactorOutcome:
    """One timed factorization; failures become statuses, never exceptions."""
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    start = time.monotonic()
    factor = None
    status = "error"
    iterations = 0
    b_param = None
    m_param = None
    try:
        if algorithm == "pollard":
            factor, trace = pollard_factor(n, RhoConfig(seed=seed), budget_seconds)
            iterations = trace.iterations
            status = "success"
        else:
            factor, trace = qs_factor(n, qs_params, budget_seconds)
            iterations = trace.rounds
            b_param = trace.final_b
            m_param = trace.final_m
            status = "success"
    except errors.BudgetExceeded as exc:
        status = "timeout"
        iterations, b_param, m_param = _trace_counters(algorithm, exc.trace)
    except (errors.FactorError, ValueError) as exc:
        status = "error"
        iterations, b_param, m_param = _trace_counters(algorithm, getattr(exc, "trace", None))
    elapsed = time.monotonic() - start
    if factor is not None and not (1 < factor < n and n % factor == 0):
        # belt and braces: a bad factor is a bug, surface it as an error record
        factor = None
        status = "error"
    return FactorOutcome(
        algorithm=algorithm,
        n=n,
        status=status,
        factor=factor,
        elapsed_seconds=elapsed,
        b_param=b_param,
        m_param=m_param,
        iterations=iterations,
        seed=seed,
    )


def _trace_counters(algorithm, trace):
    if trace is None:
        return 0, None, None
    if algorithm == "pollard":
        return trace.iterations, None, None
    return trace.rounds, trace.final_b, trace.final_m


def _run_indexed(task) -> tuple[int, int, BenchRecord]:
    row_index, algo_index, semiprime, algorithm, seed, budget, qs_params = task
    outcome = run_attempt(algorithm, semiprime.n, seed, budget, qs_params)
    return row_index, algo_index, BenchRecord(semiprime=semiprime, outcome=outcome)


def run_bench(
    dataset: list[Semiprime], cfg: BenchConfig, progress=None
) -> list[BenchRecord]:
    """One BenchRecord per (semiprime, algorithm), in dataset order.

    `progress` is an optional callable invoked with each finished record.
    """
    if not dataset:
        raise ValueError("dataset must be nonempty")
    tasks = []
    for row_index, sp in enumerate(dataset):
        for algo_index, algorithm in enumerate(cfg.algorithms):
            seed = derive_seed(cfg.seed, row_index, algorithm)
            tasks.append(
                (row_index, algo_index, sp, algorithm, seed, cfg.budget_seconds, cfg.qs_params)
            )
    results: dict[tuple[int, int], BenchRecord] = {}
    if cfg.workers == 1:
        for task in tasks:
            ri, ai, record = _run_indexed(task)
            results[(ri, ai)] = record
            if progress is not None:
                progress(record)
    else:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            for ri, ai, record in pool.map(_run_indexed, tasks):
                results[(ri, ai)] = record
                if progress is not None:
                    progress(record)
    return [results[key] for key in sorted(results)]


def verify_outcomes(records: list[BenchRecord]) -> list[str]:
    """Re-check every success record's factor; returns violation messages."""
    violations = []
    for i, record in enumerate(records):
        out = record.outcome
        if out.status == "success":
            if out.factor is None:
                violations.append(f"record {i}: success without a factor")
            elif not 1 < out.factor < out.n:
                violations.append(f"record {i}: factor {out.factor} out of range for {out.n}")
            elif out.n % out.factor != 0:
                violations.append(f"record {i}: {out.factor} does not divide {out.n}")
        elif out.factor is not None:
            violations.append(f"record {i}: status {out.status} carries a factor")
    return violations


def write_results_csv(path: str | Path, records: list[BenchRecord]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(RESULTS_CSV_HEADER)
        for record in records:
            s, o = record.semiprime, record.outcome
            writer.writerow(
                [
                    s.n,
                    s.p,
                    s.q,
                    s.p_bits,
                    s.q_bits,
                    s.n_bits,
                    o.algorithm,
                    o.status,
                    "" if o.factor is None else o.factor,
                    f"{o.elapsed_seconds:.7f}",
                    "" if o.b_param is None else o.b_param,
                    "" if o.m_param is None else o.m_param,
                    o.iterations,
                    o.seed,
                ]
            )


def read_results_csv(path: str | Path) -> list[BenchRecord]:
    records = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != RESULTS_CSV_HEADER:
            raise ValueError(f"unexpected results header: {reader.fieldnames}")
        for row in reader:
            semiprime = Semiprime(
                n=int(row["n"]),
                p=int(row["p"]),
                q=int(row["q"]),
                p_bits=int(row["p_bits"]),
                q_bits=int(row["q_bits"]),
                n_bits=int(row["n_bits"]),
            )
            outcome = FactorOutcome(
                algorithm=row["algorithm"],
                n=int(row["n"]),
                status=row["status"],
                factor=int(row["factor"]) if row["factor"] else None,
                elapsed_seconds=float(row["elapsed_seconds"]),
                b_param=int(row["b_param"]) if row["b_param"] else None,
                m_param=int(row["m_param"]) if row["m_param"] else None,
                iterations=int(row["iterations"]),
                seed=int(row["seed"]),
            )
            records.append(BenchRecord(semiprime=semiprime, outcome=outcome))
    return records
