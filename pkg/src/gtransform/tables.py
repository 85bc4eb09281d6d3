"""Table and input types shared by the extrapolation engines.

Every table slot carries a status so degenerate data truncates tables
instead of aborting runs: a zero divisor invalidates one entry and its
dependents, and entries whose inputs are simply unavailable are marked
not-computed rather than breakdown.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Tuple

from .scalars import infer_field


class ArgumentError(ValueError):
    """A structurally invalid argument (bad lengths, out-of-range index)."""


class InitializationError(ValueError):
    """Input data violates an engine precondition (for example a zero
    sample where a nonzero divisor is required)."""


class EntryStatus(enum.Enum):
    VALID = "valid"
    BREAKDOWN = "breakdown"
    NOT_COMPUTED = "not_computed"

    @property
    def label(self) -> str:
        return self.value


@dataclass
class Entry:
    """One table slot: a value plus its status.  value is None unless the
    status is VALID."""

    value: Any = None
    status: EntryStatus = EntryStatus.NOT_COMPUTED

    @property
    def valid(self) -> bool:
        return self.status is EntryStatus.VALID


def combined_status(*statuses: EntryStatus) -> EntryStatus:
    """Status for an entry computed from the given inputs.  Breakdown
    dominates (it propagates to every dependent), then not-computed."""
    out = EntryStatus.VALID
    for s in statuses:
        if s is EntryStatus.BREAKDOWN:
            return EntryStatus.BREAKDOWN
        if s is EntryStatus.NOT_COMPUTED:
            out = EntryStatus.NOT_COMPUTED
    return out


class _IndexedTable:
    """Dict-backed ragged table keyed by (j, n)."""

    def __init__(self) -> None:
        self._entries: Dict[Tuple[int, int], Entry] = {}

    def set(self, j: int, n: int, entry: Entry) -> None:
        self._entries[(j, n)] = entry

    def get(self, j: int, n: int) -> Entry:
        return self._entries.get((j, n), Entry(None, EntryStatus.NOT_COMPUTED))

    def has(self, j: int, n: int) -> bool:
        return (j, n) in self._entries

    def items(self) -> Iterator[Tuple[Tuple[int, int], Entry]]:
        return iter(sorted(self._entries.items()))

    def __len__(self) -> int:
        return len(self._entries)


class ExtrapolationTable(_IndexedTable):
    """Triangular array of accelerated values indexed (j, n) for
    0 <= j+n <= limit, tagged with the engine that produced it."""

    def __init__(self, method: str, limit: int) -> None:
        super().__init__()
        self.method = method
        self.limit = limit

    def value(self, j: int, n: int):
        e = self.get(j, n)
        if not e.valid:
            raise ArgumentError(
                f"entry ({j},{n}) is {e.status.label}, not valid"
            )
        return e.value

    def diagonal(self) -> List[Entry]:
        """Entries (0, n) for n = 0..limit."""
        return [self.get(0, n) for n in range(self.limit + 1)]

    def best(self) -> Optional[Tuple[int, Any]]:
        """The deepest valid diagonal entry (0, n), preferred for summaries
        because diagonal entries converge fastest.  None when even (0,0)
        is unavailable."""
        for n in range(self.limit, -1, -1):
            e = self.get(0, n)
            if e.valid:
                return n, e.value
        return None

    def all_beyond_first_column_broken(self) -> bool:
        """True when every entry with n >= 1 has breakdown status (and at
        least one such entry exists)."""
        saw = False
        for (j, n), e in self.items():
            if n >= 1:
                saw = True
                if e.status is not EntryStatus.BREAKDOWN:
                    return False
        return saw


class QdTable:
    """Quotient-difference arrays q and e.

    Stored index ranges, for input length 2L+1: q[j][n] for n >= 1 and
    0 <= j <= 2(L-n)+1; e[j][n] for n >= 0 and 0 <= j <= 2(L-n).  These
    are exactly the entries determined by u_0..u_2L.
    """

    def __init__(self, L: int) -> None:
        self.L = L
        self.q = _IndexedTable()
        self.e = _IndexedTable()

    @staticmethod
    def q_range(L: int) -> Iterator[Tuple[int, int]]:
        for n in range(1, L + 1):
            for j in range(2 * (L - n) + 2):
                yield j, n

    @staticmethod
    def e_range(L: int) -> Iterator[Tuple[int, int]]:
        for n in range(L + 1):
            for j in range(2 * (L - n) + 1):
                yield j, n


class RsTable:
    """Arrays r and s of the rs recursion.

    Stored index ranges: r[j][n] for n >= 1, 0 <= j <= 2(L-n)+2 (which
    admits the single top entry r[0][L+1]); s[j][n] for n >= 0,
    0 <= j <= 2(L-n)+1.
    """

    def __init__(self, L: int) -> None:
        self.L = L
        self.r = _IndexedTable()
        self.s = _IndexedTable()

    @staticmethod
    def r_range(L: int) -> Iterator[Tuple[int, int]]:
        for n in range(1, L + 2):
            for j in range(2 * (L - n) + 3):
                yield j, n

    @staticmethod
    def s_range(L: int) -> Iterator[Tuple[int, int]]:
        for n in range(L + 1):
            for j in range(2 * (L - n) + 2):
                yield j, n


@dataclass
class SequencePair:
    """The inputs A_0..A_L and u_0..u_2L of the defining linear system.

    u may be shorter than 2L+1 (general-mode file input); engines then mark
    entries that would need the missing tail as not-computed.  A longer u
    is rejected outright.
    """

    A: List[Any]
    u: List[Any]
    L: int = field(default=-1)

    def __post_init__(self) -> None:
        if self.L < 0:
            self.L = len(self.A) - 1
        if len(self.A) != self.L + 1:
            raise ArgumentError(
                f"A must hold L+1 = {self.L + 1} values, got {len(self.A)}"
            )
        if self.L < 0:
            raise ArgumentError("A must not be empty")
        if len(self.u) > 2 * self.L + 1:
            raise ArgumentError(
                f"u holds {len(self.u)} values but at most 2L+1 = "
                f"{2 * self.L + 1} are meaningful"
            )

    @property
    def complete(self) -> bool:
        return len(self.u) == 2 * self.L + 1

    def infer_field(self):
        return infer_field(list(self.A) + list(self.u))
