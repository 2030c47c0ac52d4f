"""Report assembly and rendering: text table, summaries, JSON document.

All rendering is deterministic: identical inputs produce byte-identical
output. The JSON document uses a fixed key order:

    block, signals[], rules[] (label, counts{}, delta), rule_total,
    punctures[] (name, statements[], pressure), puncture_total,
    residual, verdict, uncovered_signals[], unknown_atoms[], warnings[]

where counts{} maps each boundary signal (inputs first, declaration
order) to {"asserted": n, "negated": m}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .formula import count_occurrences
from .interface import (
    BalanceReport,
    BlockInterface,
    RuleVarianceRow,
    block_balance,
    set_variance,
)
from .model import PunctureEntry, PunctureReport, model_puncture_total


def check_signal_coverage(ruleset, iface) -> tuple[str, ...]:
    """Boundary signals that never occur, asserted or negated, in any rule."""
    seen: set[str] = set()
    for rule in ruleset:
        seen.update(count_occurrences(rule.body))
    return tuple(name for name in iface.ordered_signals if name not in seen)


@dataclass(frozen=True)
class AnalysisReport:
    """Everything one block analysis produced, ready to render."""

    iface: BlockInterface
    rows: tuple[RuleVarianceRow, ...]
    rule_total: int
    punctures: PunctureReport
    balance: BalanceReport
    uncovered_signals: tuple[str, ...]
    unknown_atoms: tuple[str, ...]
    warnings: tuple[str, ...]


def rule_warnings(rows, iface) -> list[str]:
    """Coverage and unknown-atom findings for a computed rule table."""
    warnings = []
    for row in rows:
        for atom in row.unknown_atoms:
            warnings.append(f"rule '{row.label}': unknown atom '{atom}'")
        for atom in row.puncture_atoms:
            warnings.append(
                f"rule '{row.label}': atom '{atom}' names a puncture and contributes nothing"
            )
    return warnings


def model_warnings(model, iface, punctures) -> list[str]:
    """Mismatches between the interface declaration and the model."""
    warnings = []
    model_names = set(model.declared_names)
    for name in iface.ordered_signals:
        if name not in model_names:
            warnings.append(f"interface signal '{name}' does not appear in the model")
    discovered = {entry.name for entry in punctures.entries}
    for name in iface.punctures:
        if name not in discovered:
            warnings.append(f"declared puncture '{name}' not found in the model")
    for entry in punctures.entries:
        if entry.name not in iface.punctures:
            warnings.append(
                f"model variable '{entry.name}' treated as an undeclared puncture"
            )
    return warnings


def analyze(ruleset, iface, model=None) -> AnalysisReport:
    """Run the full block analysis.

    Puncture pressures come from the model when one is given, otherwise
    from the interface's manual `pressure` declarations (missing ones
    default to 0 with a warning).
    """
    rows, rule_total = set_variance(ruleset, iface)
    warnings: list[str] = []
    if model is not None:
        punctures = model_puncture_total(model, iface)
        warnings.extend(model_warnings(model, iface, punctures))
    else:
        entries = []
        for name in iface.punctures:
            if name in iface.manual_pressures:
                entries.append(PunctureEntry(name, (), iface.manual_pressures[name]))
            else:
                entries.append(PunctureEntry(name, (), 0))
                warnings.append(
                    f"puncture '{name}' has no declared pressure; assuming 0"
                )
        punctures = PunctureReport(
            tuple(entries), sum(e.pressure for e in entries)
        )
    uncovered = check_signal_coverage(ruleset, iface)
    for name in uncovered:
        warnings.append(f"signal '{name}' is not covered by any rule")
    warnings.extend(rule_warnings(rows, iface))
    unknown = tuple(sorted({atom for row in rows for atom in row.unknown_atoms}))
    balance = block_balance(rule_total, (e.pressure for e in punctures.entries))
    return AnalysisReport(
        iface=iface,
        rows=rows,
        rule_total=rule_total,
        punctures=punctures,
        balance=balance,
        uncovered_signals=uncovered,
        unknown_atoms=unknown,
        warnings=tuple(warnings),
    )


def _signed(value: int) -> str:
    return f"{value:+d}" if value else "0"


def render_table(rows, total) -> str:
    """Fixed-width rule-variance table with a trailing total line."""
    if rows:
        signals = list(rows[0].asserted_inputs) + list(rows[0].asserted_outputs)
    else:
        signals = []
    header = ["rule", *signals, "delta"]
    body = []
    for row in rows:
        counts = {**row.asserted_inputs, **row.asserted_outputs}
        body.append(
            [row.label, *(str(counts[s]) for s in signals), _signed(row.delta)]
        )
    body.append(["total", *("" for _ in signals), _signed(total)])
    widths = [
        max(len(line[i]) for line in [header, *body]) for i in range(len(header))
    ]

    def fmt(cells):
        first = cells[0].ljust(widths[0])
        rest = (cell.rjust(width) for cell, width in zip(cells[1:], widths[1:]))
        return "  ".join([first, *rest]).rstrip()

    header_line = fmt(header)
    lines = [header_line, "-" * len(header_line), *(fmt(cells) for cells in body)]
    return "\n".join(lines) + "\n"


def render_puncture_text(punctures) -> str:
    lines = ["punctures:" if punctures.entries else "punctures: none"]
    for entry in punctures.entries:
        refs = f"  ({', '.join(entry.statements)})" if entry.statements else ""
        lines.append(f"  {entry.name}  {_signed(entry.pressure)}{refs}")
    lines.append(f"puncture total {_signed(punctures.total)}")
    return "\n".join(lines) + "\n"


def render_report_text(report) -> str:
    """Human-readable analysis report."""
    parts = [
        f"block {report.iface.block_name}",
        "",
        render_table(report.rows, report.rule_total).rstrip("\n"),
        "",
        render_puncture_text(report.punctures).rstrip("\n"),
        "",
        f"residual {_signed(report.balance.residual)}",
        f"verdict  {report.balance.verdict.value}",
    ]
    if report.warnings:
        parts.append("")
        parts.append("warnings:")
        parts.extend(f"  - {w}" for w in report.warnings)
    return "\n".join(parts) + "\n"


def _rule_entry(row, ordered):
    asserted = {**row.asserted_inputs, **row.asserted_outputs}
    return {
        "label": row.label,
        "counts": {
            name: {"asserted": asserted[name], "negated": row.negated[name]}
            for name in ordered
        },
        "delta": row.delta,
    }


def render_structured(report) -> str:
    """Machine-readable JSON document; see the module docstring for keys."""
    iface = report.iface
    ordered = iface.ordered_signals
    document = {
        "block": iface.block_name,
        "signals": [
            {"name": name, "direction": iface.signals[name].value}
            for name in ordered
        ],
        "rules": [_rule_entry(row, ordered) for row in report.rows],
        "rule_total": report.rule_total,
        "punctures": [
            {
                "name": entry.name,
                "statements": list(entry.statements),
                "pressure": entry.pressure,
            }
            for entry in report.punctures.entries
        ],
        "puncture_total": report.punctures.total,
        "residual": report.balance.residual,
        "verdict": report.balance.verdict.value,
        "uncovered_signals": list(report.uncovered_signals),
        "unknown_atoms": list(report.unknown_atoms),
        "warnings": list(report.warnings),
    }
    return json.dumps(document, indent=2) + "\n"
