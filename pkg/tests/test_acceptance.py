"""Exit criteria. Run with ``pytest tests/test_acceptance.py`` for the per-criterion summary."""

import math
import random
from fractions import Fraction as F

import pytest
from click.testing import CliRunner

from boolerule import kernels
from boolerule.bounds import (
    DerivativeStats,
    Estimate,
    bound,
    classical_monomial_bound,
    crossover_threshold,
    monomial_bound_value,
    monomial_stats,
    sup_constant,
)
from boolerule.cli import main
from boolerule.kernels import (
    closed_form_kernel,
    kernel_identity_check,
    kernel_integral,
    kernel_sup_abs,
    segment_sups,
    solve_kernel_coefficients,
)
from boolerule.quadrature import (
    Interval,
    Polynomial,
    boole,
    boole_exact,
    classical_error_bound,
    integral_exact_poly,
)
from boolerule.study import flag_columns, parse_csv, study_row, value_columns

from .oracles import crossover_scan

UNIT = Interval(F(0), F(1))
WIDE = Interval(F(-1), F(3))


def random_intervals(n=20, seed=7):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        a = F(rng.randint(-1000, 1000), rng.randint(1, 1000))
        b = F(rng.randint(-1000, 1000), rng.randint(1, 1000))
        if abs(b - a) >= F(1, 100):
            out.append(Interval(min(a, b), max(a, b)))
    return out


RANDOM = random_intervals()


def criterion(number, title):
    return pytest.mark.criterion(number, title)


@criterion(1, "kernel sup constants exact (11/60, 17/1440, 1/1620; outer 31/180, 343/1093500)")
def test_c1_kernel_constants():
    sups = {n: kernel_sup_abs(solve_kernel_coefficients(n, UNIT)) for n in (1, 2, 3)}
    assert sups == {1: F(11, 60), 2: F(17, 1440), 3: F(1, 1620)}
    assert segment_sups(solve_kernel_coefficients(1, UNIT))[0] == F(31, 180)
    assert segment_sups(solve_kernel_coefficients(1, UNIT))[3] == F(31, 180)
    assert segment_sups(solve_kernel_coefficients(3, UNIT))[0] == F(343, 1093500)
    assert segment_sups(solve_kernel_coefficients(3, UNIT))[3] == F(343, 1093500)


@criterion(2, "solver output equals published coefficient solutions; solver == closed form on 20 intervals")
def test_c2_coefficients_at_unit():
    beta = [F(-7, 90), F(-13, 30), F(-17, 30), F(-83, 90)]
    gamma = [F(0), F(4, 45), F(7, 45), F(19, 45)]
    beta3 = [F(-7, 180), F(-13, 60), F(-17, 60), F(-83, 180)]
    delta = [F(0), F(-1, 90), F(-1, 36), F(-23, 180)]
    k1 = solve_kernel_coefficients(1, UNIT).coefficients()
    k2 = solve_kernel_coefficients(2, UNIT).coefficients()
    k3 = solve_kernel_coefficients(3, UNIT).coefficients()
    assert [r[0] for r in k1] == beta and [r[1] for r in k1] == [1] * 4
    assert [r[1] for r in k2] == beta and [r[0] for r in k2] == gamma and [r[2] for r in k2] == [F(1, 2)] * 4
    assert [r[2] for r in k3] == beta3 and [r[1] for r in k3] == gamma and [r[0] for r in k3] == delta
    assert [r[3] for r in k3] == [F(1, 6)] * 4


@criterion(2, "solver output equals published coefficient solutions; solver == closed form on 20 intervals")
@pytest.mark.parametrize("order", [1, 2, 3])
def test_c2_solver_matches_closed_form(order):
    for iv in RANDOM:
        assert solve_kernel_coefficients(order, iv).coefficients() == closed_form_kernel(order, iv).coefficients()


@criterion(3, "integral of K = 0 exactly on [0,1], [-1,3] and 20 random intervals")
@pytest.mark.parametrize("order", [1, 2, 3])
def test_c3_kernel_integral(order):
    for iv in [UNIT, WIDE] + RANDOM:
        assert kernel_integral(solve_kernel_coefficients(order, iv)) == 0


@criterion(4, "integral of K f^(n) = Boole(f) - integral of f, f = t^0..t^10, orders 1-3")
@pytest.mark.parametrize("order", [1, 2, 3])
@pytest.mark.parametrize("iv", [UNIT, WIDE], ids=["0_1", "m1_3"])
def test_c4_kernel_identity(order, iv):
    k = solve_kernel_coefficients(order, iv)
    mismatches = []
    for deg in range(11):
        lhs, rhs = kernel_identity_check(k, Polynomial.monomial(deg))
        if lhs != rhs:
            mismatches.append((deg, lhs, rhs))
    assert not mismatches, f"order {order}: lhs != rhs for (k, lhs, rhs) = {mismatches}"


@criterion(5, "degree of exactness 5, discrepancy 1/2688 at degree 6, classical bound tight")
def test_c5_degree_of_exactness():
    for j in range(6):
        p = Polynomial.monomial(j)
        assert boole_exact(p, UNIT) == integral_exact_poly(p, UNIT)
    p6 = Polynomial.monomial(6)
    assert boole_exact(p6, UNIT) - integral_exact_poly(p6, UNIT) == F(1, 2688)
    assert classical_error_bound(720, UNIT) == F(1, 2688)


@criterion(6, "crossover thresholds (15, 24, 11, 16, 10, 15) under the table reading")
def test_c6_table_thresholds():
    got = tuple(crossover_threshold(e, 1, "table") for e in Estimate)
    assert got == (15, 24, 11, 16, 10, 15)


@criterion(7, "theorem values equal table for T2/T3, T1 ratio exactly 10; T1 theorem thresholds frozen")
def test_c7_theorem_reading():
    for k in range(6, 31):
        for est in (Estimate.T2m, Estimate.T2M, Estimate.T3m, Estimate.T3M):
            mb = monomial_bound_value(est, k, 1)
            assert mb.table_value == mb.theorem_value
        for est in (Estimate.T1m, Estimate.T1M):
            mb = monomial_bound_value(est, k, 1)
            assert mb.table_value / mb.theorem_value == 10
    frozen = {Estimate.T1m: 12, Estimate.T1M: 16}
    assert crossover_scan(lambda k: F(11, 60)) == frozen[Estimate.T1m]
    assert crossover_scan(lambda k: F(11, 60) * (k - 1)) == frozen[Estimate.T1M]
    for est, k in frozen.items():
        assert crossover_threshold(est, 1, "theorem") == k


@criterion(8, "guarantee: true error <= every applicable bound (t^k exact; exp, sin with 1e-12 slack)")
@pytest.mark.parametrize("k", range(1, 11))
def test_c8_monomials(k):
    p = Polynomial.monomial(k)
    err = abs(boole_exact(p, UNIT) - integral_exact_poly(p, UNIT))
    for est in Estimate:
        if k >= est.order:
            assert err <= bound(est, monomial_stats(k, 1, est.order), UNIT)


def _closed_form_stats(name):
    e, s1, c1 = math.e, math.sin(1), math.cos(1)
    if name == "exp":
        return math.exp, e - 1, {n: DerivativeStats(n, e - 1, 1.0, e) for n in (1, 2, 3)}
    return math.sin, 1 - c1, {
        1: DerivativeStats(1, s1, c1, 1.0),
        2: DerivativeStats(2, c1 - 1, -s1, 0.0),
        3: DerivativeStats(3, -s1, -1.0, -c1),
    }


@criterion(8, "guarantee: true error <= every applicable bound (t^k exact; exp, sin with 1e-12 slack)")
@pytest.mark.parametrize("name", ["exp", "sin"])
def test_c8_transcendental(name):
    f, exact, stats = _closed_form_stats(name)
    iv = Interval(0.0, 1.0)
    err = abs(boole(f, iv) - exact)
    for est in Estimate:
        assert err <= bound(est, stats[est.order], iv) + 1e-12


def _bound_values_ok():
    cases = [
        (Estimate.T1m, DerivativeStats(1, 1, 0, 1), F(11, 60)),
        (Estimate.T2m, DerivativeStats(2, 3, 0, 6), F(17, 480)),
        (Estimate.T3M, DerivativeStats(3, 30, 0, 120), F(1, 18)),
    ]
    for est, stats, expected in cases:
        assert bound(est, stats, UNIT) == expected


@criterion(9, "bound constants read from kernel_sup_abs; perturbing the kernel breaks the bound test")
def test_c9_linkage_and_mutation():
    for n in (1, 2, 3):
        assert sup_constant(n) == kernel_sup_abs(solve_kernel_coefficients(n, UNIT))
    _bound_values_ok()

    original = kernels.solve_kernel_coefficients

    def perturbed(order, iv):
        rows = [list(r) for r in original(order, iv).coefficients()]
        for row in rows:
            row[0] += F(1, 1000)
        return kernels._assemble(order, iv, rows)

    kernels.solve_kernel_coefficients = perturbed
    kernels.unit_sup_constant.cache_clear()
    try:
        assert sup_constant(1) != F(11, 60)
        with pytest.raises(AssertionError):
            _bound_values_ok()
    finally:
        kernels.solve_kernel_coefficients = original
        kernels.unit_sup_constant.cache_clear()
    _bound_values_ok()


@criterion(10, "CLI: verify-kernels exit 0; table --kmax 30 gives 25 rows, flags recomputed, CSV round-trips")
def test_c10_cli():
    runner = CliRunner()
    res = runner.invoke(main, ["verify-kernels", "--a", "0", "--b", "1"])
    assert res.exit_code == 0, res.output

    res = runner.invoke(main, ["table", "--kmax", "30", "--b", "1", "--format", "csv"])
    assert res.exit_code == 0
    rows = parse_csv(res.output)
    assert [int(r["k"]) for r in rows] == list(range(6, 31))

    value_col = {}
    for name, est, reading in value_columns():
        value_col[(est, reading)] = name
    for row in rows:
        classical = F(row["classical"])
        for name, est, reading in flag_columns():
            col = value_col.get((est, reading)) or value_col[(est, "theorem")]
            assert (row[name] == "true") == (F(row[col]) < classical)
        fresh = study_row(int(row["k"]), F(1))
        assert F(row["classical"]) == fresh.classical == classical_monomial_bound(int(row["k"]), 1)
        for name, est, reading in value_columns():
            cell = row[name]
            q = F(cell)
            assert f"{q.numerator}/{q.denominator}" == cell
            assert q == fresh.value(est, reading)
