"""Operation-count benchmarks for the engines.

Each run feeds a reproducible random input through an engine over
counting arithmetic and reports raw and L^2-normalized tallies.  Random
rather than structured inputs: structured data (geometric, say) breaks
tables down and truncates the counts.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .engines import run_epsilon, run_fs_qd, run_rs
from .scalars import BreakdownError, CountingContext, CountingField, OpCounts
from .tables import ArgumentError, EntryStatus, SequencePair

METHODS = ("fsqd", "fsqd_diag", "rs", "eps")
MIN_L = 10


@dataclass
class BenchReport:
    method: str
    L: int
    counts: OpCounts
    normalized: Dict[str, float]
    total: int
    valid: bool

    def as_dict(self) -> dict:
        return {
            "method": self.method,
            "L": self.L,
            "counts": self.counts.as_dict(),
            "normalized": self.normalized,
            "total": self.total,
            "valid": self.valid,
        }


def _draw_input(
    method: str, L: int, seed: int
) -> Tuple[List[float], Optional[List[float]]]:
    rng = random.Random(seed)
    if method == "eps":
        return [rng.uniform(0.5, 1.5) for _ in range(2 * L + 1)], None
    A = [rng.uniform(0.5, 1.5) for _ in range(L + 1)]
    u = [rng.uniform(0.5, 1.5) for _ in range(2 * L + 1)]
    return A, u


def bench_on(
    method: str, A: List[float], u: Optional[List[float]], L: int
) -> BenchReport:
    """Run one engine over counting arithmetic on explicit input.

    Input conversion and status bookkeeping are free; only the arithmetic
    in the engine recursions is tallied.  A breakdown anywhere in the run
    flags the report invalid; the counts then cover the work done up to
    the degenerate region.
    """
    if method not in METHODS:
        raise ArgumentError(
            f"unknown method {method!r}; choose from {', '.join(METHODS)}"
        )
    ctx = CountingContext()
    fld = CountingField(ctx)
    valid = True
    try:
        if method == "eps":
            table = run_epsilon(A, field=fld)
        else:
            seq = SequencePair(A=A, u=list(u), L=L)
            if method == "fsqd":
                table = run_fs_qd(seq, field=fld)
            elif method == "fsqd_diag":
                table = run_fs_qd(seq, diagonal_only=True, field=fld)
            else:
                _, table = run_rs(seq, field=fld)
        for _, entry in table.items():
            if entry.status is EntryStatus.BREAKDOWN:
                valid = False
                break
    except BreakdownError:
        valid = False

    counts = ctx.counts.snapshot()
    L2 = float(L * L)
    normalized = {
        "additions": counts.additions / L2,
        "multiplications": counts.multiplications / L2,
        "divisions": counts.divisions / L2,
    }
    return BenchReport(
        method=method,
        L=L,
        counts=counts,
        normalized=normalized,
        total=counts.total,
        valid=valid,
    )


def bench_method(method: str, L: int, seed: int) -> BenchReport:
    """Benchmark one engine on the standard random input for (L, seed)."""
    if L < MIN_L:
        raise ArgumentError(f"L must be at least {MIN_L}, got {L}")
    A, u = _draw_input(method, L, seed)
    return bench_on(method, A, u, L)


def compare_ratio(L: int, seed: int) -> float:
    """Total-operation ratio rs over fsqd on one shared random input."""
    if L < MIN_L:
        raise ArgumentError(f"L must be at least {MIN_L}, got {L}")
    A, u = _draw_input("fsqd", L, seed)
    rs_report = bench_on("rs", A, u, L)
    fsqd_report = bench_on("fsqd", A, u, L)
    return rs_report.total / fsqd_report.total
