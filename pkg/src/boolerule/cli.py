"""Command line: kernel certificates, the monomial study table, bounded integration.

Exit codes: 0 success, 1 failed check or evaluation error, 2 usage error.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

import click

from . import kernels
from .bounds import (
    DerivativeStats,
    Estimate,
    Provenance,
    report_for,
    stats_from_samples,
)
from .expression import (
    EvaluationError,
    ExpressionSyntaxError,
    constant_value,
    evaluate,
    parse_expression,
    to_polynomial,
)
from .quadrature import (
    Interval,
    NodeEvaluationError,
    Polynomial,
    as_rational,
    composite_boole,
    integral_exact_poly,
)
from .study import build_study, thresholds, to_csv, to_markdown

IDENTITY_MAX_DEGREE = 10


class RationalParam(click.ParamType):
    name = "rational"

    def convert(self, value, param, ctx):
        if isinstance(value, Fraction):
            return value
        try:
            return as_rational(value)
        except (TypeError, ValueError, ZeroDivisionError):
            self.fail(f"{value!r} is not an exact rational (use p/q or an integer)", param, ctx)


class NumberParam(click.ParamType):
    """Exact rational when written as p/q or an integer, float otherwise."""

    name = "number"

    def convert(self, value, param, ctx):
        if isinstance(value, (int, float, Fraction)):
            return value
        try:
            return as_rational(value)
        except (TypeError, ValueError, ZeroDivisionError):
            pass
        try:
            x = float(value)
        except ValueError:
            self.fail(f"{value!r} is not a number", param, ctx)
        if not math.isfinite(x):
            self.fail(f"{value!r} is not finite", param, ctx)
        return x


RATIONAL = RationalParam()
NUMBER = NumberParam()


def _interval(a, b) -> Interval:
    try:
        return Interval(a, b)
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--a/--b") from None


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def main():
    """Boole's rule with Peano-kernel error bounds."""


# --- verify-kernels ---------------------------------------------------------


class _Certificate:
    def __init__(self):
        self.lines: list[str] = []
        self.failures: list[str] = []

    def check(self, name: str, ok: bool, detail: str = "") -> None:
        self.lines.append(f"  [{'PASS' if ok else 'FAIL'}] {name}" + (f": {detail}" if detail else ""))
        if not ok:
            self.failures.append(name)

    def note(self, text: str) -> None:
        self.lines.append(text)


def _fmt_list(xs) -> str:
    return "(" + ", ".join(str(x) for x in xs) + ")"


def certify_order(cert: _Certificate, order: int, iv: Interval) -> None:
    w = iv.width()
    cert.note(f"order {order}")
    solved = kernels.solve_kernel_coefficients(order, iv)
    closed = kernels.closed_form_kernel(order, iv)
    cert.check(
        "solver == closed form",
        solved.coefficients() == closed.coefficients(),
        "; ".join(f"K{i + 1}(t) = {seg.poly}" for i, seg in enumerate(solved.segments)),
    )

    integral = kernels.kernel_integral(solved)
    cert.check("integral of K over [a, b] = 0", integral == 0, str(integral))

    top = order - 1
    got = kernels.jump_values(solved, top)
    want = kernels.condition_targets(iv, top, order)
    cert.check(
        f"end values and jumps of K^({top}) = (-7, 32, 12, 32, 7)*(b-a)/90",
        got == want,
        _fmt_list(got),
    )
    for level in range(top):
        got = kernels.jump_values(solved, level)
        cert.check(f"K^({level}) continuous and zero at a, b", all(v == 0 for v in got), _fmt_list(got))

    sups = kernels.segment_sups(solved)
    sup = max(sups)
    expected = kernels.PUBLISHED_SUP[order] * w**order
    cert.check(
        f"sup|K| = {kernels.PUBLISHED_SUP[order]}*(b-a)^{order}",
        sup == expected,
        f"{sup}; per segment {_fmt_list(sups)}",
    )
    outer = kernels.PUBLISHED_OUTER_SUP[order] * w**order
    cert.check(
        f"outer-segment sup = {kernels.PUBLISHED_OUTER_SUP[order]}*(b-a)^{order}",
        sups[0] == sups[3] == outer,
        str(sups[0]),
    )
    for seg in solved.segments:
        if order > 1:
            cert.note(f"    critical points K{seg.index + 1}: {_fmt_list(kernels.critical_points(seg))}")

    sign = kernels.identity_sign(order)
    bad = []
    for k in range(IDENTITY_MAX_DEGREE + 1):
        lhs, rhs = kernels.kernel_identity_check(solved, Polynomial.monomial(k))
        if lhs != sign * rhs:
            bad.append(k)
    sign_text = "+" if sign > 0 else "-"
    cert.check(
        f"integral of K*f^({order}) = {sign_text}(Boole(f) - integral of f), f = t^0..t^{IDENTITY_MAX_DEGREE}",
        not bad,
        f"fails for k = {bad}" if bad else "",
    )


@main.command("verify-kernels")
@click.option("--a", "a", type=RATIONAL, default="0", show_default=True)
@click.option("--b", "b", type=RATIONAL, default="1", show_default=True)
@click.option("--order", "orders", type=click.IntRange(1, 3), multiple=True, help="Restrict to these orders.")
@click.pass_context
def verify_kernels(ctx, a, b, orders):
    """Rebuild the Peano kernels exactly and certify their properties."""
    iv = _interval(a, b)
    cert = _Certificate()
    cert.note(f"interval [{a}, {b}], width {iv.width()}")
    cert.note("convention: h = (b - a)/4, nodes a, (3a+b)/4, (a+b)/2, (a+3b)/4, b")
    for order in sorted(set(orders)) or kernels.ORDERS:
        certify_order(cert, order, iv)
    click.echo("\n".join(cert.lines))
    if cert.failures:
        click.echo(f"FAILED: {', '.join(cert.failures)}")
        ctx.exit(1)
    click.echo("all checks passed")


# --- table --------------------------------------------------------------------


@main.command("table")
@click.option("--kmax", type=int, default=30, show_default=True)
@click.option("--b", "b", type=RATIONAL, default="1", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "markdown"]), default="csv", show_default=True)
def table(kmax, b, fmt):
    """Monomial study: bounds for t^k on [0, b] against the classical estimate."""
    if kmax < 6:
        raise click.BadParameter("must be at least 6", param_hint="--kmax")
    if b <= 0:
        raise click.BadParameter("must be positive", param_hint="--b")
    rows = build_study(kmax, b)
    ths = thresholds(b)
    click.echo(to_csv(rows, ths) if fmt == "csv" else to_markdown(rows, ths), nl=False)


# --- integrate ------------------------------------------------------------------


def _parse_stats(entries) -> dict[int, DerivativeStats]:
    out = {}
    for entry in entries:
        parts = entry.split(":")
        if len(parts) != 4:
            raise click.BadParameter(f"{entry!r}: expected order:m:M:I", param_hint="--stats")
        try:
            order = int(parts[0])
            if order not in kernels.ORDERS:
                raise ValueError("order must be 1, 2 or 3")
            m, big_m, i_value = (constant_value(p) for p in parts[1:])
            out[order] = DerivativeStats(order, i_value, m, big_m)
        except (ValueError, ArithmeticError) as exc:
            raise click.BadParameter(f"{entry!r}: {exc}", param_hint="--stats") from None
    return out


def _parse_derivs(entries) -> dict[int, object]:
    out = {}
    for entry in entries:
        order, sep, src = entry.partition(":")
        if not sep or not order.strip().isdigit():
            raise click.BadParameter(f"{entry!r}: expected n:EXPR", param_hint="--deriv")
        try:
            out[int(order)] = parse_expression(src)
        except ExpressionSyntaxError as exc:
            raise click.BadParameter(f"{entry!r}: {exc}", param_hint="--deriv") from None
    return out


def _sampled_stats(derivs, iv: Interval, grid: int) -> dict[int, DerivativeStats]:
    out = {}
    for n in (1, 2, 3):
        if n in derivs and n - 1 in derivs:
            g, prev = derivs[n], derivs[n - 1]
            ends = (evaluate(prev, float(iv.a)), evaluate(prev, float(iv.b)))
            out[n] = stats_from_samples(lambda t: evaluate(g, t), iv, grid, order=n, endpoint_values=ends)
    return out


@main.command("integrate")
@click.option("--expr", "source", required=True, help="Integrand in t, e.g. 'exp(t)*t^2'.")
@click.option("--a", "a", type=NUMBER, required=True)
@click.option("--b", "b", type=NUMBER, required=True)
@click.option("--panels", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--stats", "stats", multiple=True, help="order:m:M:I for f^(order); repeatable.")
@click.option("--deriv", "derivs", multiple=True, help="n:EXPR giving f^(n) for sampled (heuristic) stats.")
@click.option("--grid", type=click.IntRange(min=2), default=1001, show_default=True)
@click.option("--estimates", default="t1m,t1M,t2m,t2M,t3m,t3M", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
@click.pass_context
def integrate(ctx, source, a, b, panels, stats, derivs, grid, estimates, fmt):
    """Composite Boole's rule with optional error bounds and enclosure."""
    try:
        node = parse_expression(source)
    except ExpressionSyntaxError as exc:
        raise click.BadParameter(str(exc), param_hint="--expr") from None
    try:
        wanted = [Estimate.parse(s) for s in estimates.split(",") if s.strip()]
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--estimates") from None
    iv = _interval(a, b)
    if stats and derivs:
        raise click.UsageError("give either --stats or --deriv, not both")
    float_iv = Interval(float(iv.a), float(iv.b))

    try:
        value = composite_boole(lambda t: float(evaluate(node, t)), float_iv, panels)
        derivs_map = _parse_derivs(derivs)
        if derivs_map:
            derivs_map.setdefault(0, node)
            by_order = _sampled_stats(derivs_map, iv, grid)
        else:
            by_order = _parse_stats(stats)
    except (EvaluationError, NodeEvaluationError) as exc:
        click.echo(f"evaluation error: {exc}", err=True)
        ctx.exit(1)

    true_error = None
    poly = to_polynomial(node)
    if poly is not None and iv.is_exact:
        exact_value = composite_boole(poly, iv, panels)
        true_error = abs(exact_value - integral_exact_poly(poly, iv))

    report = report_for(by_order, iv, wanted, panels=panels, value=value, true_error=true_error)
    if not by_order:
        label = "uncertified"
    elif report.provenance is Provenance.SAMPLED:
        label = "heuristic"
    else:
        label = "certified"
    best = report.best()

    if fmt == "json":
        payload = report.to_dict()
        payload["label"] = label
        if best is not None:
            payload["enclosure"] = [value - float(best[1]), value + float(best[1])]
            payload["enclosure_estimate"] = best[0].value
        click.echo(json.dumps(payload, indent=2))
        return

    click.echo(f"value     {value!r}  ({label})")
    click.echo(f"interval  [{iv.a}, {iv.b}], panels {panels}")
    for est, v in report.bounds.items():
        click.echo(f"{est.slug:<9} " + ("n/a (no stats for this order)" if v is None else f"{float(v):.17g}"))
    if true_error is not None:
        click.echo(f"true err  {float(true_error):.17g} (exact, polynomial integrand)")
    if best is not None:
        est, e = best
        click.echo(f"enclosure [{value - float(e)!r}, {value + float(e)!r}] via {est.slug} ({label})")


if __name__ == "__main__":
    main()
