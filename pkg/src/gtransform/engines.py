"""The four recursive acceleration engines.

All engines run over any scalar field from .scalars and record per-entry
statuses instead of aborting on degenerate data.  Divisor policy:

* Exact field: a division by exact zero marks the entry (and dependents)
  breakdown.  Zero values themselves are legitimate.
* Float fields: divisors that only propagate the quotient-difference
  table (the e-quantities, which cancel between the paired numerator and
  denominator arrays of the FS recursion) are floored and the run
  continues, because their size is a gauge choice, not information.
  Value-bearing divisors and catastrophically cancelled update factors
  mark breakdown instead, since continuing would fabricate digits.
"""

from __future__ import annotations

from typing import Any, Dict, List, Optional, Tuple

from .scalars import float_is_finite, infer_field
from .tables import (
    ArgumentError,
    Entry,
    EntryStatus,
    ExtrapolationTable,
    InitializationError,
    QdTable,
    RsTable,
    SequencePair,
    combined_status,
)

VALID = EntryStatus.VALID
BREAKDOWN = EntryStatus.BREAKDOWN
NOT_COMPUTED = EntryStatus.NOT_COMPUTED


def _check_u_nonzero(u, field, count: Optional[int] = None) -> None:
    limit = len(u) if count is None else min(count, len(u))
    for i in range(limit):
        if field.is_zero(u[i]):
            raise InitializationError(
                f"u[{i}] is zero; the recursion needs every u value "
                f"nonzero as an initial divisor"
            )


def build_qd_table(u, L: int, field=None) -> QdTable:
    """Quotient-difference arrays from u_0..u_2L, column by column.

    e[j][0] = 0; q[j][1] = u_{j+1}/u_j; then
    e[j][n] = q[j+1][n] - q[j][n] + e[j+1][n-1] and
    q[j][n+1] = (e[j+1][n]/e[j][n]) * q[j+1][n].

    A short u (fewer than 2L+1 values) leaves the entries that would need
    the missing tail not-computed; a longer u is an error.
    """
    if L < 0:
        raise ArgumentError(f"L must be non-negative, got {L}")
    if len(u) == 0 and L > 0:
        raise ArgumentError("u must not be empty")
    if len(u) > 2 * L + 1:
        raise ArgumentError(
            f"u holds {len(u)} values but 2L+1 = {2 * L + 1} expected"
        )
    if field is None:
        field = infer_field(u)
    u = [field.convert(x) for x in u]
    _check_u_nonzero(u, field)

    table = QdTable(L)
    zero = field.zero()
    for j in range(2 * L + 1):
        table.e.set(j, 0, Entry(zero, VALID))
    for j in range(2 * L):
        if j + 1 < len(u):
            table.q.set(j, 1, Entry(u[j + 1] / u[j], VALID))
        else:
            table.q.set(j, 1, Entry(None, NOT_COMPUTED))

    for n in range(1, L + 1):
        for j in range(2 * (L - n) + 1):
            q1 = table.q.get(j + 1, n)
            q0 = table.q.get(j, n)
            ep = table.e.get(j + 1, n - 1)
            status = combined_status(q1.status, q0.status, ep.status)
            if status is VALID:
                table.e.set(j, n, Entry(q1.value - q0.value + ep.value, VALID))
            else:
                table.e.set(j, n, Entry(None, status))
        for j in range(2 * (L - n)):
            e1 = table.e.get(j + 1, n)
            e0 = table.e.get(j, n)
            qn = table.q.get(j + 1, n)
            status = combined_status(e1.status, e0.status, qn.status)
            if status is VALID:
                den = _qd_divisor(field, table, j, n)
                if den is None:
                    status = BREAKDOWN
                else:
                    table.q.set(
                        j, n + 1, Entry((e1.value / den) * qn.value, VALID)
                    )
                    continue
            table.q.set(j, n + 1, Entry(None, status))
    return table


def _qd_divisor(field, table: QdTable, j: int, n: int):
    """Guarded divisor for e[j][n], scaled by the operands that formed it.
    None signals breakdown (exact field only)."""
    ev = table.e.get(j, n).value
    ops = []
    q1 = table.q.get(j + 1, n)
    q0 = table.q.get(j, n)
    ep = table.e.get(j + 1, n - 1)
    for ent in (q1, q0, ep):
        if ent.valid:
            ops.append(ent.value)
    return field.structural_divisor(ev, *ops)


def run_fs_qd(
    seq: SequencePair, diagonal_only: bool = False, field=None
) -> ExtrapolationTable:
    """The paired-numerator FS recursion with divisors supplied by the
    quotient-difference table.

    M[j][0] = A_j/u_j and N[j][0] = 1/u_j; both arrays are updated by
    differencing and dividing by e[j][n]; entry (j,n) is M[j][n]/N[j][n].
    With diagonal_only the final division is performed only for j = 0,
    which drops the division count from 5L^2/2 + O(L) to 2L^2 + O(L);
    off-diagonal entries beyond column 0 are then not computed.
    """
    if field is None:
        field = seq.infer_field()
    L = seq.L
    A = [field.convert(x) for x in seq.A]
    u = [field.convert(x) for x in seq.u]
    _check_u_nonzero(u, field)
    qd = build_qd_table(u, L, field)

    M: Dict[Tuple[int, int], Entry] = {}
    N: Dict[Tuple[int, int], Entry] = {}
    one = field.one()
    for j in range(L + 1):
        if j < len(u):
            M[(j, 0)] = Entry(A[j] / u[j], VALID)
            N[(j, 0)] = Entry(one / u[j], VALID)
        else:
            M[(j, 0)] = Entry(None, NOT_COMPUTED)
            N[(j, 0)] = Entry(None, NOT_COMPUTED)

    for n in range(1, L + 1):
        for j in range(L - n + 1):
            m1, m0 = M[(j + 1, n - 1)], M[(j, n - 1)]
            n1, n0 = N[(j + 1, n - 1)], N[(j, n - 1)]
            ee = qd.e.get(j, n)
            status = combined_status(
                m1.status, m0.status, n1.status, n0.status, ee.status
            )
            if status is VALID:
                den = _qd_divisor(field, qd, j, n)
                if den is None:
                    status = BREAKDOWN
                else:
                    M[(j, n)] = Entry((m1.value - m0.value) / den, VALID)
                    N[(j, n)] = Entry((n1.value - n0.value) / den, VALID)
                    continue
            M[(j, n)] = Entry(None, status)
            N[(j, n)] = Entry(None, status)

    method = "fsqd_diag" if diagonal_only else "fsqd"
    out = ExtrapolationTable(method, L)
    for j in range(L + 1):
        out.set(j, 0, Entry(A[j], VALID))
    for n in range(1, L + 1):
        for j in range(L - n + 1):
            if diagonal_only and j != 0:
                out.set(j, n, Entry(None, NOT_COMPUTED))
                continue
            me, ne = M[(j, n)], N[(j, n)]
            status = combined_status(me.status, ne.status)
            if status is VALID:
                if field.is_zero(ne.value) or not (
                    field.exact
                    or (
                        float_is_finite(me.value)
                        and float_is_finite(ne.value)
                    )
                ):
                    status = BREAKDOWN
                else:
                    out.set(j, n, Entry(me.value / ne.value, VALID))
                    continue
            out.set(j, n, Entry(None, status))
    return out


def run_rs(seq: SequencePair, field=None) -> Tuple[RsTable, ExtrapolationTable]:
    """The r/s recursion and the accelerated table it drives.

    s[j][0] = 1 and r[j][1] = u_j; then
    s[j][n] = s[j+1][n-1] * (r[j+1][n]/r[j][n] - 1),
    r[j][n+1] = r[j+1][n] * (s[j+1][n]/s[j][n] - 1), and
    entry (j,n) = (r[j][n] T(j+1,n-1) - r[j+1][n] T(j,n-1))
                  / (r[j][n] - r[j+1][n]).

    The r and s quantities carry value information, so under float
    arithmetic an update whose bracketed factor cancels to roundoff is
    marked breakdown at creation; exact zeros in the exact field stay
    valid values and only fail where actually divided by.
    """
    if field is None:
        field = seq.infer_field()
    L = seq.L
    A = [field.convert(x) for x in seq.A]
    u = [field.convert(x) for x in seq.u]
    _check_u_nonzero(u, field)

    tbl = RsTable(L)
    one = field.one()
    for j in range(2 * (L - 0) + 2):
        tbl.s.set(j, 0, Entry(one, VALID))
    for j in range(2 * (L - 1) + 3):
        if j < len(u):
            tbl.r.set(j, 1, Entry(u[j], VALID))
        else:
            tbl.r.set(j, 1, Entry(None, NOT_COMPUTED))

    out = ExtrapolationTable("rs", L)
    for j in range(L + 1):
        out.set(j, 0, Entry(A[j], VALID))

    for n in range(1, L + 1):
        for j in range(2 * (L - n) + 2):
            sp = tbl.s.get(j + 1, n - 1)
            r1 = tbl.r.get(j + 1, n)
            r0 = tbl.r.get(j, n)
            status = combined_status(sp.status, r1.status, r0.status)
            if status is VALID:
                den = field.value_divisor(r0.value)
                if den is None:
                    status = BREAKDOWN
                else:
                    ratio = r1.value / den
                    paren = ratio - one
                    if not field.exact and field.is_negligible(
                        paren, ratio, one
                    ):
                        status = BREAKDOWN
                    else:
                        val = sp.value * paren
                        if not field.exact and field.is_zero(val):
                            status = BREAKDOWN
                        else:
                            tbl.s.set(j, n, Entry(val, VALID))
                            continue
            tbl.s.set(j, n, Entry(None, status))
        for j in range(2 * (L - n) + 1):
            s1 = tbl.s.get(j + 1, n)
            s0 = tbl.s.get(j, n)
            rp = tbl.r.get(j + 1, n)
            status = combined_status(s1.status, s0.status, rp.status)
            if status is VALID:
                den = field.value_divisor(s0.value)
                if den is None:
                    status = BREAKDOWN
                else:
                    ratio = s1.value / den
                    paren = ratio - one
                    if not field.exact and field.is_negligible(
                        paren, ratio, one
                    ):
                        status = BREAKDOWN
                    else:
                        val = rp.value * paren
                        if not field.exact and field.is_zero(val):
                            status = BREAKDOWN
                        else:
                            tbl.r.set(j, n + 1, Entry(val, VALID))
                            continue
            tbl.r.set(j, n + 1, Entry(None, status))
        for j in range(L - n + 1):
            r0 = tbl.r.get(j, n)
            r1 = tbl.r.get(j + 1, n)
            t1 = out.get(j + 1, n - 1)
            t0 = out.get(j, n - 1)
            status = combined_status(r0.status, r1.status, t1.status, t0.status)
            if status is VALID:
                den_raw = r0.value - r1.value
                den = field.value_divisor(den_raw, r0.value, r1.value)
                if den is None:
                    status = BREAKDOWN
                else:
                    num = r0.value * t1.value - r1.value * t0.value
                    out.set(j, n, Entry(num / den, VALID))
                    continue
            out.set(j, n, Entry(None, status))
    return tbl, out


def run_epsilon(A, field=None) -> ExtrapolationTable:
    """Even columns of the epsilon recursion over the raw sequence.

    eps[j][-1] = 0, eps[j][0] = A_j,
    eps[j][k+1] = eps[j+1][k-1] + 1/(eps[j+1][k] - eps[j][k]).
    Entry (j, n) of the result is eps[j][2n]; odd columns stay internal.
    A vanishing difference marks the dependent entry breakdown.
    """
    if len(A) == 0:
        raise ArgumentError("A must not be empty")
    if field is None:
        field = infer_field(A)
    vals = [field.convert(x) for x in A]
    total = len(vals) - 1

    zero = field.zero()
    one = field.one()
    eps: Dict[Tuple[int, int], Entry] = {}
    for j in range(total + 1):
        eps[(j, -1)] = Entry(zero, VALID)
        eps[(j, 0)] = Entry(vals[j], VALID)

    for k in range(0, total):
        for j in range(total - k):
            prev = eps[(j + 1, k - 1)]
            hi = eps[(j + 1, k)]
            lo = eps[(j, k)]
            status = combined_status(prev.status, hi.status, lo.status)
            if status is VALID:
                diff = hi.value - lo.value
                den = field.value_divisor(diff, hi.value, lo.value)
                if den is None:
                    status = BREAKDOWN
                else:
                    eps[(j, k + 1)] = Entry(prev.value + one / den, VALID)
                    continue
            eps[(j, k + 1)] = Entry(None, status)

    out = ExtrapolationTable("eps", total // 2)
    for n in range(total // 2 + 1):
        for j in range(total - 2 * n + 1):
            out.set(j, n, eps[(j, 2 * n)])
    return out


def shanks_prepare(A, field=None) -> SequencePair:
    """Difference a raw sequence into the (A, u) input pair.

    From 2L+1 terms: the first L+1 terms become A and the 2L forward
    differences become u_0..u_{2L-1}.  The one unconstructible value
    u_{2L} is padded with the geometric continuation
    u_{2L-1}^2 / u_{2L-2}, chosen because it leaves every accelerated
    value unchanged (u_{2L} enters those entries only through factors
    that cancel) while keeping an exactly geometric tail exactly
    geometric, so exactness-driven degeneracy is still detected.  An
    even-length input needs no pad.  A zero difference is refused here
    so downstream initialization never sees a zero divisor.
    """
    if len(A) == 0:
        raise ArgumentError("A must not be empty")
    if field is None:
        field = infer_field(A)
    vals = [field.convert(x) for x in A]
    L = (len(vals) - 1) // 2

    u: List[Any] = []
    for k in range(len(vals) - 1):
        d = vals[k + 1] - vals[k]
        if field.is_zero(d):
            raise InitializationError(
                f"zero difference at index {k}: A[{k + 1}] equals A[{k}]"
            )
        u.append(d)
    if len(vals) % 2 == 1 and L >= 1:
        u.append(u[2 * L - 1] * u[2 * L - 1] / u[2 * L - 2])
    return SequencePair(A=vals[: L + 1], u=u, L=L)
