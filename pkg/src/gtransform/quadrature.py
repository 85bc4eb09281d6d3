"""Driver for semi-infinite integrals.

Builds samples of the running integral F(x+ih) by cumulative panel
quadrature (or a closed form where one exists), feeds the (F, f) sample
pair to an acceleration engine, and reports the accelerated estimates of
the full integral together with errors against a known reference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from .engines import run_epsilon, run_fs_qd, run_rs
from .tables import (
    ArgumentError,
    ExtrapolationTable,
    InitializationError,
    SequencePair,
)

ENGINES = ("fsqd", "rs", "eps")


@dataclass
class IntegrandSpec:
    """One integrand on [a, infinity): a sampling function, an optional
    closed-form running integral, and an optional known value of the full
    integral."""

    id: str
    a: float
    f: Optional[Callable[[float], float]] = None
    F_closed: Optional[Callable[[float], float]] = None
    reference: Optional[float] = None
    F_samples: Optional[List[float]] = None
    f_samples: Optional[List[float]] = None

    @property
    def tabular(self) -> bool:
        return self.F_samples is not None


def _sinc(t: float) -> float:
    if t == 0.0:
        return 1.0
    return math.sin(t) / t


def make_spec(integrand_id: str, a: float = 0.0) -> IntegrandSpec:
    """Catalog lookup.  Closed forms and references are exact consequences
    of the lower limit a; sinc has a known value only from a = 0."""
    if integrand_id == "exp_decay":
        return IntegrandSpec(
            id="exp_decay",
            a=a,
            f=lambda t: math.exp(-t),
            F_closed=lambda x: math.exp(-a) - math.exp(-x),
            reference=math.exp(-a),
        )
    if integrand_id == "t_exp":
        return IntegrandSpec(
            id="t_exp",
            a=a,
            f=lambda t: t * math.exp(-t),
            F_closed=lambda x: (1.0 + a) * math.exp(-a)
            - (1.0 + x) * math.exp(-x),
            reference=(1.0 + a) * math.exp(-a),
        )
    if integrand_id == "sinc":
        return IntegrandSpec(
            id="sinc",
            a=a,
            f=_sinc,
            F_closed=None,
            reference=(math.pi / 2.0) if a == 0.0 else None,
        )
    raise ArgumentError(
        f"unknown integrand {integrand_id!r}; catalog: "
        f"exp_decay, t_exp, sinc (or build a table spec from samples)"
    )


def spec_from_samples(
    F_samples: List[float],
    f_samples: List[float],
    a: float = 0.0,
    reference: Optional[float] = None,
) -> IntegrandSpec:
    """A spec backed by user-supplied samples already on the x+ih grid."""
    return IntegrandSpec(
        id="table",
        a=a,
        reference=reference,
        F_samples=list(F_samples),
        f_samples=list(f_samples),
    )


@dataclass
class QuadratureConfig:
    """Panel-quadrature parameters.  The rule is composite Simpson; the
    subdivision count must be even and at least 2."""

    subdivisions_per_panel: int = 64
    analytic_F: bool = False
    rule: str = field(default="simpson", init=False)

    def __post_init__(self) -> None:
        n = self.subdivisions_per_panel
        if n < 2 or n % 2 != 0:
            raise ArgumentError(
                f"subdivisions_per_panel must be even and >= 2, got {n}"
            )


def simpson_panel(
    f: Callable[[float], float], lo: float, hi: float, subdivisions: int
) -> float:
    """Composite Simpson over one panel."""
    if hi < lo:
        raise ArgumentError(f"panel [{lo}, {hi}] is reversed")
    if hi == lo:
        return 0.0
    h = (hi - lo) / subdivisions
    total = f(lo) + f(hi)
    for i in range(1, subdivisions):
        weight = 4.0 if i % 2 == 1 else 2.0
        total += weight * f(lo + i * h)
    return total * h / 3.0


def sample_F(
    spec: IntegrandSpec,
    x: float,
    h: float,
    count: int,
    cfg: Optional[QuadratureConfig] = None,
) -> List[float]:
    """F(x), F(x+h), ..., F(x+(count-1)h).

    Quadrature runs cumulatively: one composite panel over [a, x], then
    one per step [x+(i-1)h, x+ih], so no subinterval is integrated twice
    and successive samples differ by exactly one panel integral.
    """
    if cfg is None:
        cfg = QuadratureConfig()
    if count < 1:
        raise ArgumentError(f"count must be >= 1, got {count}")
    if h <= 0:
        raise ArgumentError(f"h must be positive, got {h}")
    if spec.tabular:
        if count > len(spec.F_samples):
            raise ArgumentError(
                f"table spec holds {len(spec.F_samples)} F samples, "
                f"{count} requested"
            )
        return list(spec.F_samples[:count])
    if x < spec.a:
        raise ArgumentError(f"x = {x} lies below the lower limit a = {spec.a}")
    if cfg.analytic_F and spec.F_closed is not None:
        return [spec.F_closed(x + i * h) for i in range(count)]
    nsub = cfg.subdivisions_per_panel
    running = simpson_panel(spec.f, spec.a, x, nsub) if x > spec.a else 0.0
    out = [running]
    for i in range(1, count):
        running += simpson_panel(spec.f, x + (i - 1) * h, x + i * h, nsub)
        out.append(running)
    return out


@dataclass
class GTransformResult:
    """An accelerated integral table at one (x, h).

    errors holds |value - reference| per valid entry when the integral's
    value is known; otherwise diagonal_deltas reports the successive
    diagonal differences |T(0,n) - T(0,n-1)| as a heuristic proxy.
    """

    table: ExtrapolationTable
    x: float
    h: float
    reference: Optional[float]
    errors: Optional[Dict[Tuple[int, int], float]]
    diagonal_deltas: Optional[List[Optional[float]]]

    def diagonal_values(self) -> List[Optional[float]]:
        return [
            (float(e.value) if e.valid else None)
            for e in self.table.diagonal()
        ]


def _f_samples(spec: IntegrandSpec, x: float, h: float, count: int) -> List[float]:
    if spec.tabular:
        if count > len(spec.f_samples):
            raise ArgumentError(
                f"table spec holds {len(spec.f_samples)} f samples, "
                f"{count} requested"
            )
        return list(spec.f_samples[:count])
    return [spec.f(x + i * h) for i in range(count)]


def g_transform(
    spec: IntegrandSpec,
    x: float,
    h: float,
    n_max: int,
    engine: str = "fsqd",
    cfg: Optional[QuadratureConfig] = None,
) -> GTransformResult:
    """Accelerate F(x+jh) toward the full integral.

    Builds the pair A_i = F(x+ih) (i = 0..n_max) and u_i = f(x+ih)
    (i = 0..2 n_max) and runs the chosen engine.  The eps engine ignores
    u entirely and runs on the F samples alone with its depth halved; it
    is exposed for comparison only.
    """
    if n_max < 1:
        raise ArgumentError(f"n_max must be >= 1, got {n_max}")
    if engine not in ENGINES:
        raise ArgumentError(
            f"unknown engine {engine!r}; choose from {', '.join(ENGINES)}"
        )
    if cfg is None:
        cfg = QuadratureConfig()

    F_vals = sample_F(spec, x, h, n_max + 1, cfg)

    if engine == "eps":
        table = run_epsilon(F_vals)
    else:
        u_vals = _f_samples(spec, x, h, 2 * n_max + 1)
        for i, val in enumerate(u_vals):
            if val == 0.0:
                raise InitializationError(
                    f"f(x + {i}h) = f({x + i * h}) is zero; the fsqd and "
                    f"rs engines need nonzero integrand samples"
                )
        seq = SequencePair(A=F_vals, u=u_vals, L=n_max)
        if engine == "fsqd":
            table = run_fs_qd(seq)
        else:
            _, table = run_rs(seq)

    errors: Optional[Dict[Tuple[int, int], float]] = None
    deltas: Optional[List[Optional[float]]] = None
    if spec.reference is not None:
        errors = {}
        for (j, n), entry in table.items():
            if entry.valid:
                errors[(j, n)] = abs(float(entry.value) - spec.reference)
    else:
        deltas = []
        diag = table.diagonal()
        for n in range(1, len(diag)):
            if diag[n].valid and diag[n - 1].valid:
                deltas.append(abs(float(diag[n].value) - float(diag[n - 1].value)))
            else:
                deltas.append(None)
    return GTransformResult(
        table=table,
        x=x,
        h=h,
        reference=spec.reference,
        errors=errors,
        diagonal_deltas=deltas,
    )
