"""Arithmetic fields the extrapolation engines are generic over.

Three realizations share one small protocol: plain machine doubles, exact
rationals, and counting-instrumented doubles that tally every add, multiply
and divide.  Engines never test divisors themselves; they ask the field,
so the breakdown policy lives in exactly one place per realization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Optional, Union

# Unit roundoff for double precision.  Relative negligibility threshold:
# a quantity d produced from operands with magnitude `scale` is treated as
# vanishing when |d| <= EPS * scale.
EPS = 2.0 ** -52

# Lower bound for continuation divisors so a quotient cannot overflow to
# inf after a short chain of floored divisions (a floor of 2**-1022 was
# observed to push tables of exactly-degenerate input past the double
# range by depth 3).
FLOOR_MIN = EPS * EPS

Numeric = Union[int, float, Fraction, "CountingScalar"]


class ScalarError(ValueError):
    """Base class for scalar-layer failures."""


class ParseError(ScalarError):
    """Text did not parse as a rational number."""


class BreakdownError(ScalarError):
    """Division by zero under counting arithmetic.

    Carries the operation counts accumulated up to the failing divide so a
    caller can report a partial tally.
    """

    def __init__(self, message: str, counts: "OpCounts"):
        super().__init__(message)
        self.counts = counts


def rational_from_text(text: str) -> Fraction:
    """Parse an integer, a fraction "p/q", or a finite decimal exactly.

    "4/6" reduces to 2/3, "0.25" becomes 1/4.  A zero denominator or
    malformed text raises ParseError naming the offending token.
    """
    if not isinstance(text, str):
        raise ParseError(f"expected text, got {type(text).__name__}: {text!r}")
    stripped = text.strip()
    try:
        return Fraction(stripped)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {stripped!r}") from None
    except ValueError:
        raise ParseError(f"not a rational number: {stripped!r}") from None


@dataclass
class OpCounts:
    """Tally of arithmetic operations; additions and subtractions share one
    counter."""

    additions: int = 0
    multiplications: int = 0
    divisions: int = 0

    @property
    def total(self) -> int:
        return self.additions + self.multiplications + self.divisions

    def snapshot(self) -> "OpCounts":
        return OpCounts(self.additions, self.multiplications, self.divisions)

    def as_dict(self) -> dict:
        return {
            "additions": self.additions,
            "multiplications": self.multiplications,
            "divisions": self.divisions,
        }


@dataclass
class CountingContext:
    """Accumulator owned by one evaluation scope.

    One context per run; concurrent runs each create their own.
    """

    counts: OpCounts = dc_field(default_factory=OpCounts)


class CountingScalar:
    """A double that reports its arithmetic to a CountingContext.

    Negation, absolute value and comparisons are free.  Arithmetic is
    performed on the wrapped doubles directly, so results are bit-identical
    to running the same computation on plain floats.
    """

    __slots__ = ("value", "ctx")

    def __init__(self, value: float, ctx: CountingContext):
        self.value = float(value)
        self.ctx = ctx

    def _lift(self, other) -> "CountingScalar":
        if isinstance(other, CountingScalar):
            return other
        if isinstance(other, (int, float)):
            return CountingScalar(float(other), self.ctx)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        self.ctx.counts.additions += 1
        return CountingScalar(self.value + other.value, self.ctx)

    def __radd__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other.__add__(self)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        self.ctx.counts.additions += 1
        return CountingScalar(self.value - other.value, self.ctx)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other.__sub__(self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        self.ctx.counts.multiplications += 1
        return CountingScalar(self.value * other.value, self.ctx)

    def __rmul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other.__mul__(self)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if other.value == 0.0:
            raise BreakdownError(
                "division by zero under counting arithmetic",
                self.ctx.counts.snapshot(),
            )
        self.ctx.counts.divisions += 1
        return CountingScalar(self.value / other.value, self.ctx)

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other.__truediv__(self)

    def __neg__(self):
        return CountingScalar(-self.value, self.ctx)

    def __abs__(self):
        return CountingScalar(abs(self.value), self.ctx)

    def __eq__(self, other):
        if isinstance(other, CountingScalar):
            return self.value == other.value
        if isinstance(other, (int, float)):
            return self.value == other
        return NotImplemented

    def __lt__(self, other):
        o = other.value if isinstance(other, CountingScalar) else other
        return self.value < o

    def __le__(self, other):
        o = other.value if isinstance(other, CountingScalar) else other
        return self.value <= o

    def __hash__(self):
        return hash(self.value)

    def __float__(self):
        return self.value

    def __repr__(self):
        return f"CountingScalar({self.value!r})"


def _raw(x) -> float:
    return x.value if isinstance(x, CountingScalar) else float(x)


def _float_scale(ops) -> float:
    scale = 0.0
    for o in ops:
        a = abs(_raw(o))
        if a > scale:
            scale = a
    return scale


class FloatField:
    """Machine double precision.

    Structural divisors (the quotient-difference e-quantities, whose effect
    cancels between numerator tables) are floored rather than refused, so
    the table continues through exactly-degenerate data.  Value-bearing
    divisors are refused (None) when negligible relative to the operands
    that produced them.
    """

    name = "float"
    exact = False

    def convert(self, v: Numeric) -> float:
        if isinstance(v, str):
            return float(Fraction(v))
        return _raw(v)

    def zero(self) -> float:
        return 0.0

    def one(self) -> float:
        return 1.0

    def is_zero(self, v) -> bool:
        return _raw(v) == 0.0

    def is_negligible(self, d, *ops) -> bool:
        dv = _raw(d)
        if dv == 0.0:
            return True
        return abs(dv) <= EPS * _float_scale(ops)

    def value_divisor(self, d, *ops):
        """The divisor for a division whose quotient is a reported value,
        or None to signal breakdown."""
        if self.is_negligible(d, *ops):
            return None
        return d

    def structural_divisor(self, d, *ops):
        """A safe divisor for a division whose quotient only propagates the
        table (never reported directly): floored away from zero."""
        dv = _raw(d)
        floor = max(EPS * _float_scale(ops), FLOOR_MIN)
        if abs(dv) >= floor:
            return d
        return floor if dv >= 0.0 else -floor

    def to_float(self, v) -> float:
        return _raw(v)


class RationalField:
    """Exact rational arithmetic over fractions.Fraction.

    Every result is normalized (reduced, positive denominator), so equality
    is structural.  Both divisor kinds refuse exact zeros; there is no
    notion of "negligible but nonzero" here.
    """

    name = "rational"
    exact = True

    def convert(self, v: Numeric) -> Fraction:
        if isinstance(v, Fraction):
            return v
        if isinstance(v, int):
            return Fraction(v)
        if isinstance(v, str):
            return rational_from_text(v)
        if isinstance(v, float):
            return Fraction(v)
        if isinstance(v, CountingScalar):
            return Fraction(v.value)
        raise ScalarError(f"cannot convert {type(v).__name__} to a rational")

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def is_zero(self, v) -> bool:
        return v == 0

    def is_negligible(self, d, *ops) -> bool:
        return d == 0

    def value_divisor(self, d, *ops):
        return None if d == 0 else d

    def structural_divisor(self, d, *ops):
        return None if d == 0 else d

    def to_float(self, v) -> float:
        return float(v)


class CountingField:
    """FloatField semantics with operation tallying.

    Negligibility and floor decisions are made on the raw doubles and are
    free; only the arithmetic the engine actually performs is counted.
    """

    name = "counting"
    exact = False

    def __init__(self, ctx: Optional[CountingContext] = None):
        self.ctx = ctx if ctx is not None else CountingContext()
        self._plain = FloatField()

    def convert(self, v: Numeric) -> CountingScalar:
        if isinstance(v, CountingScalar):
            return v
        return CountingScalar(self._plain.convert(v), self.ctx)

    def zero(self) -> CountingScalar:
        return CountingScalar(0.0, self.ctx)

    def one(self) -> CountingScalar:
        return CountingScalar(1.0, self.ctx)

    def is_zero(self, v) -> bool:
        return _raw(v) == 0.0

    def is_negligible(self, d, *ops) -> bool:
        return self._plain.is_negligible(d, *ops)

    def value_divisor(self, d, *ops):
        if self._plain.is_negligible(d, *ops):
            return None
        return d

    def structural_divisor(self, d, *ops):
        guarded = self._plain.structural_divisor(_raw(d), *ops)
        if guarded is _raw(d) or guarded == _raw(d):
            return d
        return CountingScalar(guarded, self.ctx)

    def to_float(self, v) -> float:
        return _raw(v)


def with_counting(
    computation: Callable[[CountingField], Numeric],
) -> tuple:
    """Run a scalar-valued computation under counting arithmetic.

    The computation receives a fresh CountingField and must build its
    scalars through it.  Returns (result, counts).  A division by zero
    inside the computation raises BreakdownError carrying the counts
    accumulated so far.
    """
    ctx = CountingContext()
    fld = CountingField(ctx)
    result = computation(fld)
    return result, ctx.counts


def infer_field(values) -> "FloatField | RationalField | CountingField":
    """Choose a field from sample values: counting scalars win, then plain
    floats, otherwise exact rationals (ints and Fractions)."""
    ctx = None
    saw_float = False
    for v in values:
        if isinstance(v, CountingScalar):
            ctx = v.ctx
        elif isinstance(v, float):
            saw_float = True
    if ctx is not None:
        return CountingField(ctx)
    if saw_float:
        return FloatField()
    return RationalField()


def float_is_finite(v) -> bool:
    return math.isfinite(_raw(v))
