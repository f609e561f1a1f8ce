"""Monomial comparison study: novel bounds against the classical estimate for t^k on [0, b]."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

from .bounds import (
    Estimate,
    classical_monomial_bound,
    crossover_threshold,
    monomial_bound_value,
)

READINGS = ("table", "theorem")


@dataclass(frozen=True)
class StudyRow:
    k: int
    table_values: dict[Estimate, Fraction]
    theorem_values: dict[Estimate, Fraction]
    classical: Fraction

    def value(self, estimate: Estimate, reading: str) -> Fraction:
        return (self.table_values if reading == "table" else self.theorem_values)[estimate]

    def better(self, estimate: Estimate, reading: str) -> bool:
        return self.value(estimate, reading) < self.classical

    @property
    def flags(self) -> dict[tuple[Estimate, str], bool]:
        return {(e, r): self.better(e, r) for e in Estimate for r in READINGS}


def study_row(k: int, b: Fraction) -> StudyRow:
    table, theorem = {}, {}
    for est in Estimate:
        mb = monomial_bound_value(est, k, b)
        table[est] = mb.table_value
        theorem[est] = mb.theorem_value
    return StudyRow(k, table, theorem, classical_monomial_bound(k, b))


def build_study(kmax: int, b: Fraction) -> list[StudyRow]:
    if kmax < 6:
        raise ValueError("kmax must be at least 6")
    return [study_row(k, b) for k in range(6, kmax + 1)]


def thresholds(b: Fraction) -> dict[str, dict[Estimate, int]]:
    return {r: {e: crossover_threshold(e, b, r) for e in Estimate} for r in READINGS}


def value_columns() -> list[tuple[str, Estimate, str]]:
    cols = []
    for est in Estimate:
        if est.order == 1:
            cols += [(f"{est.slug}_table", est, "table"), (f"{est.slug}_theorem", est, "theorem")]
        else:
            # the two readings coincide from order 2 on
            cols.append((est.slug, est, "theorem"))
    return cols


def flag_columns() -> list[tuple[str, Estimate, str]]:
    return [(f"{e.slug}_{r}_better", e, r) for e in Estimate for r in READINGS]


def header() -> list[str]:
    return ["k"] + [c[0] for c in value_columns()] + ["classical"] + [c[0] for c in flag_columns()]


def _rational_text(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _decimal_text(x: Fraction, digits: int = 15) -> str:
    with localcontext() as ctx:
        ctx.prec = digits
        return format(Decimal(x.numerator) / Decimal(x.denominator), f".{digits}g")


def _cells(row: StudyRow, fmt) -> list[str]:
    cells = [str(row.k)]
    cells += [fmt(row.value(e, r)) for _, e, r in value_columns()]
    cells.append(fmt(row.classical))
    cells += ["true" if row.better(e, r) else "false" for _, e, r in flag_columns()]
    return cells


def discrepancy_note(rows: list[StudyRow]) -> str | None:
    """Describe table/theorem disagreement, if any row has one."""
    ratios = {
        row.table_values[e] / row.theorem_values[e]
        for row in rows
        for e in Estimate
        if row.table_values[e] != row.theorem_values[e] and row.theorem_values[e] != 0
    }
    if not ratios:
        return None
    return "discrepancy: table/theorem ratio " + ", ".join(str(r) for r in sorted(ratios)) + " for t1m, t1M"


def _footer_lines(rows: list[StudyRow], ths: dict[str, dict[Estimate, int]]) -> list[str]:
    lines = [
        f"crossover ({reading}): " + ", ".join(f"{e.slug}={k}" for e, k in ths[reading].items())
        for reading in READINGS
    ]
    note = discrepancy_note(rows)
    return lines + ([note] if note else [])


def to_csv(rows: list[StudyRow], ths: dict[str, dict[Estimate, int]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header())
    for row in rows:
        writer.writerow(_cells(row, _rational_text))
    for line in _footer_lines(rows, ths):
        buf.write(f"# {line}\n")
    return buf.getvalue()


def to_markdown(rows: list[StudyRow], ths: dict[str, dict[Estimate, int]]) -> str:
    cols = header()
    lines = ["| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
    for row in rows:
        lines.append("| " + " | ".join(_cells(row, _decimal_text)) + " |")
    lines.append("")
    lines.append("| reading | " + " | ".join(e.slug for e in Estimate) + " |")
    lines.append("|" + "---|" * (len(Estimate) + 1))
    for reading in READINGS:
        lines.append(f"| {reading} | " + " | ".join(str(ths[reading][e]) for e in Estimate) + " |")
    note = discrepancy_note(rows)
    if note:
        lines += ["", note]
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> list[dict[str, str]]:
    """Read back the data rows of :func:`to_csv` output, skipping footer comments."""
    body = [line for line in text.splitlines() if line and not line.startswith("#")]
    return list(csv.DictReader(body))
