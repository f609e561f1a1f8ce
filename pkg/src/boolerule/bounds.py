"""Six Peano-kernel error bounds for Boole's rule and the monomial study.

Every bound has the shape ``C_n * delta * (b - a)^(n+1)``, where ``C_n`` is
sup|K| of the order-n kernel on [0, 1] and ``delta`` measures how far the
mean of f^(n) sits from its essential infimum (``m`` variants) or supremum
(``M`` variants). ``C_n`` is always read from :mod:`boolerule.kernels`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence

from . import kernels
from .quadrature import Interval, Number, Polynomial, as_rational

MAX_SCAN_K = 200


class Estimate(str, enum.Enum):
    T1m = "T1m"
    T1M = "T1M"
    T2m = "T2m"
    T2M = "T2M"
    T3m = "T3m"
    T3M = "T3M"

    @property
    def order(self) -> int:
        return int(self.value[1])

    @property
    def uses_upper(self) -> bool:
        return self.value[2] == "M"

    @property
    def slug(self) -> str:
        """Lower-case family prefix as used on the command line (t1m, t1M, ...)."""
        return "t" + self.value[1:]

    @classmethod
    def parse(cls, text: str) -> "Estimate":
        text = text.strip()
        if len(text) == 3 and text[0] in "tT":
            try:
                return cls("T" + text[1:])
            except ValueError:
                pass
        raise ValueError(f"unknown estimate {text!r}; expected one of t1m,t1M,t2m,t2M,t3m,t3M")


class Provenance(str, enum.Enum):
    EXACT = "exact"
    SAMPLED = "sampled"


class StatsError(ValueError):
    """Derivative statistics are inconsistent (m <= I <= M violated)."""


class CrossoverNotFound(LookupError):
    pass


@dataclass(frozen=True)
class DerivativeStats:
    """Mean slope and essential bounds for the kernel of a given order.

    ``i_value`` is I(f^(n-1)) = (f^(n-1)(b) - f^(n-1)(a)) / (b - a), and
    ``m_value`` / ``big_m_value`` bound f^(n) from below and above.
    """

    order: int
    i_value: Number
    m_value: Number
    big_m_value: Number
    provenance: Provenance = Provenance.EXACT

    def __post_init__(self) -> None:
        if self.order < 1:
            raise ValueError("stats order must be >= 1")
        if self.provenance is Provenance.EXACT and not (
            self.m_value <= self.i_value <= self.big_m_value
        ):
            raise StatsError(
                f"need m <= I <= M, got m={self.m_value}, I={self.i_value}, M={self.big_m_value}"
            )

    @property
    def certified(self) -> bool:
        return self.provenance is Provenance.EXACT


def sup_constant(order: int) -> Fraction:
    return kernels.unit_sup_constant(order)


def bound(estimate: Estimate, stats: DerivativeStats, iv: Interval) -> Number:
    estimate = Estimate(estimate)
    if stats.order != estimate.order:
        raise ValueError(f"{estimate.value} needs order-{estimate.order} stats, got order {stats.order}")
    if estimate.uses_upper:
        delta = stats.big_m_value - stats.i_value
    else:
        delta = stats.i_value - stats.m_value
    if delta < 0:
        raise StatsError(f"{estimate.value}: negative gap {delta} (inconsistent stats)")
    return sup_constant(estimate.order) * delta * iv.width() ** (estimate.order + 1)


def composite_bound(
    estimate: Estimate,
    per_panel_stats: Sequence[DerivativeStats],
    iv: Interval,
    panels: int,
) -> Number:
    """Sum of single-panel bounds over a uniform partition of ``iv``."""
    if len(per_panel_stats) != panels:
        raise ValueError(f"got {len(per_panel_stats)} panel stats for {panels} panels")
    cells = iv.split(panels)
    total = 0
    for stats, cell in zip(per_panel_stats, cells):
        total = total + bound(estimate, stats, cell)
    return total


def composite_bound_global(
    estimate: Estimate, stats: DerivativeStats, iv: Interval, panels: int
) -> Number:
    """Composite bound when only whole-interval stats are known.

    Global m and M hold on every cell, and the per-cell mean slopes
    telescope back to the global one, so the sum of cell bounds collapses to
    the single-panel bound divided by panels^n.
    """
    if panels < 1:
        raise ValueError("panels must be >= 1")
    return bound(estimate, stats, iv) / panels ** Estimate(estimate).order


def _falling(k: int, j: int) -> int:
    return math.perm(k, j) if j <= k else 0


def monomial_stats(k: int, b: object, order: int) -> DerivativeStats:
    """Exact stats of f(t) = t^k on [0, b]."""
    if order not in kernels.ORDERS:
        raise ValueError(f"order must be one of {kernels.ORDERS}")
    if k < order:
        raise ValueError(f"t^{k} has no informative order-{order} stats (need k >= {order})")
    b = as_rational(b)
    if b <= 0:
        raise ValueError("b must be positive")

    def deriv_at(j: int, t: Fraction) -> Fraction:
        if k - j == 0:
            return Fraction(_falling(k, j))
        return _falling(k, j) * t ** (k - j)

    i_value = (deriv_at(order - 1, b) - deriv_at(order - 1, Fraction(0))) / b
    return DerivativeStats(order, i_value, deriv_at(order, Fraction(0)), deriv_at(order, b))


def polynomial_stats(p: Polynomial, iv: Interval, order: int) -> DerivativeStats:
    """Exact stats of a polynomial; extrema of p^(n) found at rational critical points."""
    g = p.derivative(order)
    g_prev = p.derivative(order - 1)
    dg = g.derivative()
    candidates = [iv.a, iv.b]
    if dg.degree >= 1:
        if dg.coeffs[:-1] == (0,) * dg.degree:
            candidates.append(Fraction(0))
        else:
            candidates.extend(kernels._real_roots(dg))
    values = [g(t) for t in candidates if iv.a <= t <= iv.b]
    i_value = (g_prev(iv.b) - g_prev(iv.a)) / iv.width()
    return DerivativeStats(order, i_value, min(values), max(values))


def stats_from_samples(
    g: Callable[[float], float],
    iv: Interval,
    grid_points: int,
    *,
    order: int,
    endpoint_values: tuple[float, float],
) -> DerivativeStats:
    """Heuristic m/M from a uniform grid; never certified.

    ``g`` is f^(n); ``endpoint_values`` are f^(n-1)(a) and f^(n-1)(b), from
    which the mean slope is formed.
    """
    if grid_points < 2:
        raise ValueError("grid_points must be >= 2")
    a, b = float(iv.a), float(iv.b)
    step = (b - a) / (grid_points - 1)
    samples = []
    for i in range(grid_points):
        t = b if i == grid_points - 1 else a + i * step
        y = float(g(t))
        if not math.isfinite(y):
            raise ValueError(f"non-finite sample {y} at t = {t}")
        samples.append(y)
    lo_val, hi_val = endpoint_values
    i_value = (hi_val - lo_val) / (b - a)
    return DerivativeStats(order, i_value, min(samples), max(samples), Provenance.SAMPLED)


@dataclass
class BoundReport:
    interval: Interval
    bounds: dict[Estimate, Optional[Number]] = field(default_factory=dict)
    classical: Optional[Number] = None
    true_error: Optional[Number] = None
    value: Optional[Number] = None
    panels: int = 1
    provenance: Provenance = Provenance.EXACT

    def __post_init__(self) -> None:
        for est, v in self.bounds.items():
            if v is not None and v < 0:
                raise ValueError(f"bound {est.value} is negative: {v}")

    def present(self) -> dict[Estimate, Number]:
        return {e: v for e, v in self.bounds.items() if v is not None}

    def best(self) -> Optional[tuple[Estimate, Number]]:
        present = self.present()
        if not present:
            return None
        est = min(present, key=lambda e: present[e])
        return est, present[est]

    def guarantee_holds(self) -> Optional[bool]:
        """True error within every bound; None when it cannot be judged."""
        if self.true_error is None or self.provenance is not Provenance.EXACT:
            return None
        return all(abs(self.true_error) <= v for v in self.present().values())

    def to_dict(self) -> dict:
        def num(x):
            return None if x is None else float(x)

        return {
            "value": num(self.value),
            "panels": self.panels,
            "interval": {"a": num(self.interval.a), "b": num(self.interval.b)},
            "bounds": {e.value: num(v) for e, v in self.bounds.items()},
            "classical": num(self.classical),
            "true_error": num(self.true_error),
            "provenance": self.provenance.value,
        }


def report_for(
    stats_by_order: Mapping[int, DerivativeStats],
    iv: Interval,
    estimates: Sequence[Estimate] = tuple(Estimate),
    panels: int = 1,
    **extra,
) -> BoundReport:
    bounds: dict[Estimate, Optional[Number]] = {}
    provenance = Provenance.EXACT
    for est in estimates:
        stats = stats_by_order.get(est.order)
        if stats is None:
            bounds[est] = None
            continue
        if not stats.certified:
            provenance = Provenance.SAMPLED
        bounds[est] = composite_bound_global(est, stats, iv, panels)
    return BoundReport(iv, bounds, panels=panels, provenance=provenance, **extra)


# Error-bound column of the published monomial table (a = 0), evaluated as printed.
_TABLE_EXPRESSIONS: dict[Estimate, Callable[[int], Fraction]] = {
    Estimate.T1m: lambda k: Fraction(11, 6),
    Estimate.T1M: lambda k: Fraction(11, 6) * (k - 1),
    Estimate.T2m: lambda k: Fraction(17, 1440) * k,
    Estimate.T2M: lambda k: Fraction(17, 1440) * k * (k - 2),
    Estimate.T3m: lambda k: Fraction(1, 1620) * k * (k - 1),
    Estimate.T3M: lambda k: Fraction(1, 1620) * k * (k - 1) * (k - 3),
}


@dataclass(frozen=True)
class MonomialBound:
    table_value: Fraction
    theorem_value: Fraction

    @property
    def discrepant(self) -> bool:
        return self.table_value != self.theorem_value


def monomial_bound_value(estimate: Estimate, k: int, b: object) -> MonomialBound:
    estimate = Estimate(estimate)
    b = as_rational(b)
    table = _TABLE_EXPRESSIONS[estimate](k) * b ** (k + 1)
    theorem = bound(estimate, monomial_stats(k, b, estimate.order), Interval(Fraction(0), b))
    return MonomialBound(table, Fraction(theorem))


def classical_monomial_bound(k: int, b: object) -> Fraction:
    """(8/945) h^7 sup|f^(6)| for t^k on [0, b], with h = b/4."""
    b = as_rational(b)
    return b ** (k + 1) * _falling(k, 6) / 1935360


def crossover_threshold(estimate: Estimate, b: object = 1, source: str = "table") -> int:
    """Smallest k >= 6 from which the bound beats the classical one.

    A k is accepted once the bound is strictly smaller for k, k+1 and k+2.
    """
    if source not in ("table", "theorem"):
        raise ValueError("source must be 'table' or 'theorem'")
    estimate = Estimate(estimate)
    b = as_rational(b)

    def better(k: int) -> bool:
        mb = monomial_bound_value(estimate, k, b)
        value = mb.table_value if source == "table" else mb.theorem_value
        return value < classical_monomial_bound(k, b)

    for k in range(6, MAX_SCAN_K + 1):
        if all(better(j) for j in (k, k + 1, k + 2)):
            return k
    raise CrossoverNotFound(f"{estimate.value} ({source}) never beats the classical bound for k <= {MAX_SCAN_K}")
