"""Boole's rule, exact polynomial integration and the classical error bound.

Two numeric modes share one code path: pass ``Fraction`` endpoints and a
function returning ``Fraction`` values and every result is exact; pass floats
and you get ordinary binary floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Sequence, Union

Number = Union[int, float, Fraction]

BOOLE_WEIGHTS = (7, 32, 12, 32, 7)


class NodeEvaluationError(ValueError):
    """The integrand produced a non-finite value at one of the rule's nodes."""

    def __init__(self, index: int, node: Number, value: object):
        self.index = index
        self.node = node
        self.value = value
        super().__init__(f"non-finite value {value!r} at node {index} (t = {node})")


def as_rational(value: object) -> Fraction:
    """Convert ``value`` to a Fraction, refusing floats.

    Strings of the form ``"p/q"`` or integer literals are accepted; decimal
    strings and floats are rejected so that exact computations never pick
    up binary rounding silently.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if any(ch in text for ch in ".eE") or not text:
            raise ValueError(f"not an exact rational literal: {value!r}")
        return Fraction(text)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def _is_exact(x: object) -> bool:
    return isinstance(x, Rational) and not isinstance(x, bool)


@dataclass(frozen=True)
class Interval:
    """Closed integration domain [a, b] with a < b."""

    a: Number
    b: Number

    def __post_init__(self) -> None:
        for name in ("a", "b"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, float, Fraction)):
                raise TypeError(f"endpoint {name} must be a number, got {v!r}")
            if isinstance(v, float) and not math.isfinite(v):
                raise ValueError(f"endpoint {name} must be finite")
            if isinstance(v, int):
                object.__setattr__(self, name, Fraction(v))
        if not self.a < self.b:
            raise ValueError(f"empty interval: need a < b, got [{self.a}, {self.b}]")

    @classmethod
    def exact(cls, a: object, b: object) -> "Interval":
        return cls(as_rational(a), as_rational(b))

    @property
    def is_exact(self) -> bool:
        return _is_exact(self.a) and _is_exact(self.b)

    def width(self) -> Number:
        return self.b - self.a

    @property
    def h(self) -> Number:
        # Node spacing (b - a)/4. The source formula prints (a + b)/4, which
        # fails to integrate constants on any interval with a != 0.
        return (self.b - self.a) / 4

    def nodes(self) -> tuple:
        a, b = self.a, self.b
        return (a, (3 * a + b) / 4, (a + b) / 2, (a + 3 * b) / 4, b)

    def breakpoints(self) -> tuple:
        """The three interior nodes, where the Peano kernels change branch."""
        return self.nodes()[1:4]

    def split(self, panels: int) -> list["Interval"]:
        if panels == 1:
            return [self]
        a, b = self.a, self.b
        w = b - a
        edges = [a] + [a + w * i / panels for i in range(1, panels)] + [b]
        return [Interval(lo, hi) for lo, hi in zip(edges, edges[1:])]

    def __contains__(self, t: object) -> bool:
        return self.a <= t <= self.b  # type: ignore[operator]


class Polynomial:
    """Polynomial with exact rational coefficients, constant term first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[object] = ()):
        cs = [Fraction(c) for c in coeffs]  # type: ignore[arg-type]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def monomial(cls, k: int, scale: object = 1) -> "Polynomial":
        if k < 0:
            raise ValueError("monomial power must be non-negative")
        return cls([0] * k + [scale])

    @classmethod
    def constant(cls, c: object) -> "Polynomial":
        return cls([c])

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coefficient(self, j: int) -> Fraction:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else Fraction(0)

    def __call__(self, t):
        acc = Fraction(0) if _is_exact(t) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def derivative(self, times: int = 1) -> "Polynomial":
        p = self
        for _ in range(times):
            p = Polynomial(j * c for j, c in enumerate(p.coeffs) if j > 0)
        return p

    def antiderivative(self) -> "Polynomial":
        return Polynomial([0] + [c / (j + 1) for j, c in enumerate(self.coeffs)])

    def integrate(self, lo: Fraction, hi: Fraction) -> Fraction:
        anti = self.antiderivative()
        return anti(hi) - anti(lo)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self.coefficient(j) + other.coefficient(j) for j in range(n))

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: object) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return Polynomial(c * other for c in self.coeffs)  # type: ignore[operator]
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return Polynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for j in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[j]
            if c == 0:
                continue
            mag = abs(c)
            body = "t" if j == 1 else f"t^{j}" if j else ""
            if body and mag == 1:
                term = body
            elif body:
                term = f"({mag})*{body}" if mag.denominator != 1 else f"{mag}*{body}"
            else:
                term = str(mag)
            sign = "-" if c < 0 else "+"
            terms.append((sign, term))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, term in terms[1:]:
            out += f" {sign} {term}"
        return out


def _weighted_node_sum(f: Callable, iv: Interval):
    total = None
    for index, (w, node) in enumerate(zip(BOOLE_WEIGHTS, iv.nodes())):
        value = f(node)
        if isinstance(value, float) and not math.isfinite(value):
            raise NodeEvaluationError(index, node, value)
        total = w * value if total is None else total + w * value
    return total


def boole(f: Callable[[Number], Number], iv: Interval) -> Number:
    """Apply Boole's rule to ``f`` on ``iv``.

    Nodes are visited left to right and summed in a single pass; the result
    is exact whenever ``f`` maps exact rationals to exact rationals.
    """
    return 2 * iv.h / 45 * _weighted_node_sum(f, iv)


def boole_exact(p: Polynomial, iv: Interval) -> Fraction:
    if not iv.is_exact:
        raise TypeError("boole_exact needs rational endpoints")
    return Fraction(boole(p, iv))


def integral_exact_poly(p: Polynomial, iv: Interval) -> Fraction:
    if not iv.is_exact:
        raise TypeError("integral_exact_poly needs rational endpoints")
    return p.integrate(iv.a, iv.b)


def composite_boole(f: Callable[[Number], Number], iv: Interval, panels: int) -> Number:
    """Sum of Boole's rule over ``panels`` equal-width cells of ``iv``."""
    if isinstance(panels, bool) or not isinstance(panels, int) or panels < 1:
        raise ValueError(f"panels must be a positive integer, got {panels!r}")
    cells = iv.split(panels)
    total = boole(f, cells[0])
    for cell in cells[1:]:
        total = total + boole(f, cell)
    return total


def classical_error_bound(sup_f6: Number, iv: Interval) -> Number:
    """Textbook bound (8/945) h^7 sup|f^(6)| for a single Boole panel."""
    if sup_f6 < 0:
        raise ValueError("sup |f^(6)| cannot be negative")
    return Fraction(8, 945) * iv.h**7 * sup_f6


def degree_of_exactness(
    rule: Callable[[Polynomial, Interval], Fraction] = boole_exact,
    iv: Interval | None = None,
    max_degree: int = 64,
) -> int:
    """Largest d such that ``rule`` integrates t^0..t^d exactly on ``iv``."""
    iv = iv or Interval(Fraction(0), Fraction(1))
    for j in range(max_degree + 1):
        p = Polynomial.monomial(j)
        if rule(p, iv) != integral_exact_poly(p, iv):
            return j - 1
    raise RuntimeError(f"rule is exact up to degree {max_degree}; raise max_degree")


def boole_error_exact(p: Polynomial, iv: Interval) -> Fraction:
    """Signed quadrature error Boole(p) - integral of p."""
    return boole_exact(p, iv) - integral_exact_poly(p, iv)


def monomials(kmax: int) -> Sequence[Polynomial]:
    return [Polynomial.monomial(k) for k in range(kmax + 1)]
