"""Piecewise-polynomial Peano kernels for Boole's rule, orders 1 to 3.

A kernel of order n is four polynomials of degree n with leading coefficient
1/n!, one per Boole sub-panel. Its (n-1)-th derivative carries the rule's
weights as jumps (scaled by (b - a)/90) and every lower derivative is
continuous and vanishes at both ends. Those conditions fix the kernel, and
the quadrature error of any sufficiently smooth f becomes a weighted
integral of f^(n) against it.

Kernels are built two ways: :func:`solve_kernel_coefficients` solves the
condition chains by forward substitution, :func:`closed_form_kernel` types in
the published closed-form coefficients. They must agree exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .quadrature import (
    BOOLE_WEIGHTS,
    Interval,
    Polynomial,
    boole_exact,
    integral_exact_poly,
)

ORDERS = (1, 2, 3)

# sup|K| on [0, 1] and on the outer panels, as printed with each theorem.
# Used only to certify the computed kernels, never to evaluate bounds.
PUBLISHED_SUP = {1: Fraction(11, 60), 2: Fraction(17, 1440), 3: Fraction(1, 1620)}
PUBLISHED_OUTER_SUP = {1: Fraction(31, 180), 2: Fraction(17, 1440), 3: Fraction(343, 1093500)}


class KernelInconsistencyError(ArithmeticError):
    """A condition left over after forward substitution was not satisfied."""


@dataclass(frozen=True)
class KernelSegment:
    poly: Polynomial
    lo: Fraction
    hi: Fraction
    index: int

    @property
    def order(self) -> int:
        return self.poly.degree

    def __contains__(self, t) -> bool:
        return self.lo <= t <= self.hi


@dataclass(frozen=True)
class PiecewiseKernel:
    order: int
    interval: Interval
    segments: tuple[KernelSegment, KernelSegment, KernelSegment, KernelSegment]

    def __post_init__(self) -> None:
        if self.order not in ORDERS:
            raise ValueError(f"kernel order must be one of {ORDERS}")
        if len(self.segments) != 4:
            raise ValueError("a Boole kernel has exactly four segments")
        lead = Fraction(1, math.factorial(self.order))
        for seg in self.segments:
            if seg.poly.degree != self.order or seg.poly.leading != lead:
                raise ValueError(f"segment {seg.index} is not a monic-by-{lead} poly of degree {self.order}")

    def segment_at(self, t) -> KernelSegment:
        # [a, x1], (x1, x2], (x2, x3], (x3, b]
        if not self.interval.a <= t <= self.interval.b:
            raise ValueError(f"t = {t} outside the kernel's interval")
        for seg in self.segments:
            if t <= seg.hi:
                return seg
        return self.segments[-1]

    def __call__(self, t):
        return self.segment_at(t).poly(t)

    def coefficients(self) -> list[tuple[Fraction, ...]]:
        """Coefficient table, one row per segment, constant term first."""
        return [
            tuple(seg.poly.coefficient(j) for j in range(self.order + 1))
            for seg in self.segments
        ]


def _supports(iv: Interval) -> list[tuple[Fraction, Fraction]]:
    nodes = iv.nodes()
    return list(zip(nodes, nodes[1:]))


def _check_order(order: int) -> None:
    if order not in ORDERS:
        raise ValueError(f"kernel order must be one of {ORDERS}, got {order!r}")


def _assemble(order: int, iv: Interval, rows: list[list[Fraction]]) -> PiecewiseKernel:
    segs = tuple(
        KernelSegment(Polynomial(row), lo, hi, i)
        for i, (row, (lo, hi)) in enumerate(zip(rows, _supports(iv)))
    )
    return PiecewiseKernel(order, iv, segs)  # type: ignore[arg-type]


def condition_targets(iv: Interval, level: int, order: int) -> list[Fraction]:
    """Right-hand sides of the five-equation chain for derivative ``level``.

    Entry 0 is K_1^(level)(a), entries 1..3 are the jumps
    K_i^(level)(x_i) - K_{i+1}^(level)(x_i), entry 4 is K_4^(level)(b).
    """
    if level < order - 1:
        return [Fraction(0)] * 5
    w = iv.width() / 90
    signs = (-1, 1, 1, 1, 1)
    return [s * c * w for s, c in zip(signs, BOOLE_WEIGHTS)]


def solve_kernel_coefficients(order: int, iv: Interval) -> PiecewiseKernel:
    """Solve the jump/boundary chains for the kernel of ``order`` on ``iv``.

    Works from the top derivative down: at derivative level d only the
    coefficient of t^d is still unknown in each segment, the first four
    equations of the chain fix it segment by segment, and the fifth is left
    over as a check.
    """
    _check_order(order)
    if not iv.is_exact:
        raise TypeError("kernels are built on rational intervals only")
    a, b = iv.a, iv.b
    x = iv.breakpoints()
    rows = [[Fraction(0)] * (order + 1) for _ in range(4)]
    for row in rows:
        row[order] = Fraction(1, math.factorial(order))

    def known_part(row: list[Fraction], level: int, t: Fraction) -> Fraction:
        # d-th derivative of the already-fixed terms t^(level+1) .. t^order
        return sum(
            (row[j] * math.perm(j, level) * t ** (j - level) for j in range(level + 1, order + 1)),
            Fraction(0),
        )

    for level in range(order - 1, -1, -1):
        rhs = condition_targets(iv, level, order)
        scale = math.factorial(level)
        rows[0][level] = (rhs[0] - known_part(rows[0], level, a)) / scale
        for i in range(3):
            left = known_part(rows[i], level, x[i]) + rows[i][level] * scale
            rows[i + 1][level] = (left - rhs[i + 1] - known_part(rows[i + 1], level, x[i])) / scale
        residual = known_part(rows[3], level, b) + rows[3][level] * scale - rhs[4]
        if residual != 0:
            raise KernelInconsistencyError(
                f"order {order}, derivative {level}: end condition residual {residual}"
            )
    return _assemble(order, iv, rows)


def closed_form_kernel(order: int, iv: Interval) -> PiecewiseKernel:
    """Kernel built directly from the published closed-form coefficients."""
    _check_order(order)
    if not iv.is_exact:
        raise TypeError("kernels are built on rational intervals only")
    a, b = iv.a, iv.b
    F = Fraction
    if order == 1:
        beta = [-(83 * a + 7 * b) / 90, -(17 * a + 13 * b) / 30,
                -(13 * a + 17 * b) / 30, -(7 * a + 83 * b) / 90]
        rows = [[beta[i], F(1)] for i in range(4)]
        return _assemble(1, iv, rows)

    gamma = [
        F(19, 45) * a**2 + F(7, 90) * a * b,
        F(7, 45) * a**2 + F(23, 90) * a * b + F(4, 45) * b**2,
        (a + 2 * b) * (8 * a + 7 * b) / 90,
        b * (7 * a + 38 * b) / 90,
    ]
    if order == 2:
        beta = [-(83 * a + 7 * b) / 90, -(17 * a + 13 * b) / 30,
                -(13 * a + 17 * b) / 30, -(7 * a + 83 * b) / 90]
        rows = [[gamma[i], beta[i], F(1, 2)] for i in range(4)]
        return _assemble(2, iv, rows)

    beta = [-(83 * a + 7 * b) / 180, -(17 * a + 13 * b) / 60,
            -(13 * a + 17 * b) / 60, -(7 * a + 83 * b) / 180]
    delta = [
        -(a**2) * (23 * a + 7 * b) / 180,
        -(F(1, 36) * a**3 + F(13, 180) * a**2 * b + F(1, 18) * a * b**2 + F(1, 90) * b**3),
        -(F(1, 90) * a**3 + F(1, 18) * a**2 * b + F(13, 180) * a * b**2 + F(1, 36) * b**3),
        -(b**2) * (7 * a + 23 * b) / 180,
    ]
    rows = [[delta[i], gamma[i], beta[i], F(1, 6)] for i in range(4)]
    return _assemble(3, iv, rows)


def kernel_integral(k: PiecewiseKernel) -> Fraction:
    return sum((seg.poly.integrate(seg.lo, seg.hi) for seg in k.segments), Fraction(0))


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    n, d = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Fraction(n, d)
    return None


def _real_roots(p: Polynomial) -> list[Fraction]:
    if p.degree <= 0:
        return []
    if p.degree == 1:
        c0, c1 = p.coeffs
        return [-c0 / c1]
    if p.degree == 2:
        c0, c1, c2 = p.coeffs
        disc = c1 * c1 - 4 * c2 * c0
        if disc < 0:
            return []
        root = _rational_sqrt(disc)
        if root is None:
            raise ArithmeticError(f"irrational critical points for {p}; exact sup unavailable")
        return sorted({(-c1 - root) / (2 * c2), (-c1 + root) / (2 * c2)})
    raise NotImplementedError("critical points only for kernels of order <= 3")


def critical_points(seg: KernelSegment) -> list[Fraction]:
    """Zeros of the segment's derivative that fall inside its closed support."""
    return [t for t in _real_roots(seg.poly.derivative()) if seg.lo <= t <= seg.hi]


def segment_sup_abs(seg: KernelSegment) -> Fraction:
    candidates = [seg.lo, seg.hi, *critical_points(seg)]
    return max(abs(seg.poly(t)) for t in candidates)


def segment_sups(k: PiecewiseKernel) -> list[Fraction]:
    # Each segment is evaluated on its closed support, so both one-sided
    # limits at a breakpoint are covered even where K jumps.
    return [segment_sup_abs(seg) for seg in k.segments]


def kernel_sup_abs(k: PiecewiseKernel) -> Fraction:
    return max(segment_sups(k))


def identity_sign(order: int) -> int:
    """Sign s with  integral of K f^(n) = s * (Boole(f) - integral of f).

    Integrating by parts n times leaves the weighted node sum with sign
    (-1)^(n+1): the order-2 kernel yields the negated error.
    """
    return 1 if order % 2 else -1


def kernel_identity_check(k: PiecewiseKernel, p: Polynomial) -> tuple[Fraction, Fraction]:
    """Return (integral of K p^(n), Boole(p) - integral of p), both exact."""
    dp = p.derivative(k.order)
    lhs = sum(((seg.poly * dp).integrate(seg.lo, seg.hi) for seg in k.segments), Fraction(0))
    rhs = boole_exact(p, k.interval) - integral_exact_poly(p, k.interval)
    return lhs, rhs


def jump_values(k: PiecewiseKernel, level: int) -> list[Fraction]:
    """Observed values of the chain at derivative ``level`` (see condition_targets)."""
    polys = [seg.poly.derivative(level) for seg in k.segments]
    iv = k.interval
    x = iv.breakpoints()
    out = [polys[0](iv.a)]
    out += [polys[i](x[i]) - polys[i + 1](x[i]) for i in range(3)]
    out.append(polys[3](iv.b))
    return out


def unit_interval() -> Interval:
    return Interval(Fraction(0), Fraction(1))


@lru_cache(maxsize=None)
def unit_sup_constant(order: int) -> Fraction:
    """sup|K| of the order-``order`` kernel on [0, 1], computed from scratch."""
    return kernel_sup_abs(solve_kernel_coefficients(order, unit_interval()))
