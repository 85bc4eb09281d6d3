"""Exact-rational consistency suite.

Checks, on random rational inputs, that the fast engines agree with each
other, with the determinantal definitions, and with direct solution of
the defining linear system.  Used by the check subcommand and by the
acceptance tests.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from . import oracle
from .engines import build_qd_table, run_epsilon, run_fs_qd, run_rs, shanks_prepare
from .scalars import RationalField
from .tables import EntryStatus, InitializationError, QdTable, RsTable, SequencePair

_FIELD = RationalField()


@dataclass
class CheckReport:
    cases: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def first_counterexample(self) -> Optional[str]:
        return self.failures[0] if self.failures else None


def _rand_fraction(rng: random.Random, nonzero: bool = False) -> Fraction:
    while True:
        p = rng.randint(-20, 20)
        q = rng.randint(1, 10)
        if nonzero and p == 0:
            continue
        return Fraction(p, q)


def random_pair(rng: random.Random, L: int) -> SequencePair:
    A = [_rand_fraction(rng) for _ in range(L + 1)]
    u = [_rand_fraction(rng, nonzero=True) for _ in range(2 * L + 1)]
    return SequencePair(A=A, u=u, L=L)


def _fully_valid(table) -> bool:
    return all(e.status is EntryStatus.VALID for _, e in table.items())


class _Degenerate(Exception):
    """Raised by a case checker to request a redraw."""


def check_equivalence_case(seq: SequencePair) -> Optional[str]:
    """fsqd, rs and the direct linear solve must produce structurally
    identical rationals at every (j, n).  Returns a description of the
    first mismatch, None when the case passes, or raises _Degenerate to
    request a redraw when any engine breaks down."""
    fsqd = run_fs_qd(seq, field=_FIELD)
    _, rs = run_rs(seq, field=_FIELD)
    if not (_fully_valid(fsqd) and _fully_valid(rs)):
        raise _Degenerate()
    for (j, n), entry in fsqd.items():
        other = rs.get(j, n)
        if entry.value != other.value:
            return (
                f"fsqd ({j},{n}) = {entry.value} but rs gives {other.value} "
                f"on A={seq.A} u={seq.u}"
            )
        solved = oracle.direct_solve(seq, j, n)
        if solved.singular:
            return (
                f"direct solve singular at ({j},{n}) though engines "
                f"succeeded on A={seq.A} u={seq.u}"
            )
        if solved.value != entry.value:
            return (
                f"direct solve ({j},{n}) = {solved.value} but engines "
                f"give {entry.value} on A={seq.A} u={seq.u}"
            )
    return None


def check_epsilon_identity_case(A: List[Fraction]) -> Optional[str]:
    """Even epsilon columns must equal the fsqd table of the differenced
    sequence wherever both are valid."""
    eps = run_epsilon(A, field=_FIELD)
    try:
        seq = shanks_prepare(A, field=_FIELD)
    except InitializationError:
        raise _Degenerate() from None
    fsqd = run_fs_qd(seq, field=_FIELD)
    compared = 0
    for (j, n), entry in fsqd.items():
        other = eps.get(j, n)
        if entry.valid and other.valid:
            compared += 1
            if entry.value != other.value:
                return (
                    f"eps ({j},{n}) = {other.value} but fsqd-on-differences "
                    f"gives {entry.value} on A={A}"
                )
    if compared == 0:
        raise _Degenerate()
    return None


def check_qd_identity_case(u: List[Fraction], L: int) -> Optional[str]:
    """Every stored qd entry must equal its Hankel-ratio definition."""
    table = build_qd_table(u, L, field=_FIELD)
    try:
        for j, n in QdTable.e_range(L):
            if n == 0:
                continue
            want = oracle.e_ref(u, j, n)
            got = table.e.get(j, n)
            if not got.valid or got.value != want:
                return f"e[{j}][{n}] = {got.value} but ratio gives {want} on u={u}"
        for j, n in QdTable.q_range(L):
            want = oracle.q_ref(u, j, n)
            got = table.q.get(j, n)
            if not got.valid or got.value != want:
                return f"q[{j}][{n}] = {got.value} but ratio gives {want} on u={u}"
    except oracle.SingularError:
        raise _Degenerate() from None
    return None


def check_rs_identity_case(seq: SequencePair) -> Optional[str]:
    """Every stored r and s entry must equal its determinant-ratio
    definition."""
    tbl, _ = run_rs(seq, field=_FIELD)
    u = seq.u
    try:
        for j, n in RsTable.r_range(seq.L):
            want = oracle.r_ref(u, j, n)
            got = tbl.r.get(j, n)
            if not got.valid or got.value != want:
                return f"r[{j}][{n}] = {got.value} but ratio gives {want} on u={u}"
        for j, n in RsTable.s_range(seq.L):
            want = oracle.s_ref(u, j, n)
            got = tbl.s.get(j, n)
            if not got.valid or got.value != want:
                return f"s[{j}][{n}] = {got.value} but ratio gives {want} on u={u}"
    except oracle.SingularError:
        raise _Degenerate() from None
    return None


def _run_with_redraw(report: CheckReport, rng, draw, check, cases: int,
                     max_attempts: int = 400) -> None:
    done = 0
    attempts = 0
    while done < cases and attempts < max_attempts:
        attempts += 1
        sample = draw(rng)
        try:
            failure = check(sample)
        except _Degenerate:
            continue
        done += 1
        report.cases += 1
        if failure is not None:
            report.failures.append(failure)
            return
    if done < cases:
        report.failures.append(
            f"could not draw {cases} non-degenerate cases in "
            f"{max_attempts} attempts"
        )


def run_equivalence_suite(
    L: int = 4, cases: int = 20, seed: int = 7
) -> CheckReport:
    """The full consistency battery: engine/solve equivalence, the
    epsilon identity, and the qd and rs determinant identities."""
    report = CheckReport()
    rng = random.Random(seed)

    _run_with_redraw(
        report,
        rng,
        lambda r: random_pair(r, L),
        check_equivalence_case,
        cases,
    )
    if not report.ok:
        return report
    _run_with_redraw(
        report,
        rng,
        lambda r: [_rand_fraction(r) for _ in range(9)],
        check_epsilon_identity_case,
        cases,
    )
    if not report.ok:
        return report
    _run_with_redraw(
        report,
        rng,
        lambda r: [_rand_fraction(r, nonzero=True) for _ in range(2 * L + 1)],
        lambda u: check_qd_identity_case(u, L),
        cases,
    )
    if not report.ok:
        return report
    _run_with_redraw(
        report,
        rng,
        lambda r: random_pair(r, L),
        check_rs_identity_case,
        cases,
    )
    return report
