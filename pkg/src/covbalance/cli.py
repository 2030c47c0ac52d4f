"""Command-line front end.

Subcommands:
    analyze  full block analysis with a balance verdict
    rules    rule-variance table only
    model    puncture report only
    hier     hierarchical aggregation over a design tree

Exit codes: 0 balanced / checks pass, 10 positive imbalance, 11 negative
imbalance, 2 on parse or validation errors (and on usage errors).
Reports go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import report as report_mod
from .errors import AnalyzerError
from .formula import parse_rules
from .hierarchy import aggregate_hierarchy, parse_hierarchy
from .interface import BalanceVerdict, parse_interface, set_variance
from .model import model_puncture_total, parse_model

EXIT_OK = 0
EXIT_ERROR = 2
EXIT_POSITIVE = 10
EXIT_NEGATIVE = 11

_VERDICT_EXIT = {
    BalanceVerdict.BALANCED: EXIT_OK,
    BalanceVerdict.POSITIVE_IMBALANCE: EXIT_POSITIVE,
    BalanceVerdict.NEGATIVE_IMBALANCE: EXIT_NEGATIVE,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="covbalance",
        description="Coverage-balance linter for rule sets over block interfaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser(
        "analyze", help="full block analysis with balance verdict (exit 0/10/11)"
    )
    analyze.add_argument("--rules", required=True, metavar="FILE")
    analyze.add_argument("--iface", required=True, metavar="FILE")
    analyze.add_argument("--model", metavar="FILE")
    analyze.add_argument(
        "--format", choices=("table", "json", "both"), default="table"
    )
    analyze.add_argument(
        "--strict", action="store_true", help="treat warnings as errors (exit 2)"
    )

    rules = sub.add_parser("rules", help="rule-variance table only (exit 0/2)")
    rules.add_argument("--rules", required=True, metavar="FILE")
    rules.add_argument("--iface", required=True, metavar="FILE")

    model = sub.add_parser("model", help="puncture report only (exit 0/2)")
    model.add_argument("--model", required=True, metavar="FILE")
    model.add_argument("--iface", required=True, metavar="FILE")

    hier = sub.add_parser(
        "hier", help="aggregate a design tree; exit 10/11 when an expect fails"
    )
    hier.add_argument("--tree", required=True, metavar="FILE")
    return parser


def _parse_file(path, parse_fn):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise AnalyzerError(f"{path}: {exc.strerror or exc}") from exc
    try:
        return parse_fn(text)
    except AnalyzerError as exc:
        raise AnalyzerError(f"{path}: {exc}") from exc


def _load_analysis(rules_path, iface_path, model_path):
    ruleset = _parse_file(rules_path, parse_rules)
    iface = _parse_file(iface_path, parse_interface)
    model = _parse_file(model_path, parse_model) if model_path else None
    return report_mod.analyze(ruleset, iface, model)


def _cmd_analyze(args, out):
    report = _load_analysis(args.rules, args.iface, args.model)
    if args.format in ("table", "both"):
        out.write(report_mod.render_report_text(report))
    if args.format in ("json", "both"):
        out.write(report_mod.render_structured(report))
    if args.strict and report.warnings:
        print(
            f"strict mode: {len(report.warnings)} warning(s) treated as errors",
            file=sys.stderr,
        )
        return EXIT_ERROR
    return _VERDICT_EXIT[report.balance.verdict]


def _cmd_rules(args, out):
    ruleset = _parse_file(args.rules, parse_rules)
    iface = _parse_file(args.iface, parse_interface)
    rows, total = set_variance(ruleset, iface)
    out.write(report_mod.render_table(rows, total))
    warnings = [
        f"signal '{name}' is not covered by any rule"
        for name in report_mod.check_signal_coverage(ruleset, iface)
    ]
    warnings.extend(report_mod.rule_warnings(rows, iface))
    if warnings:
        out.write("\nwarnings:\n")
        out.writelines(f"  - {w}\n" for w in warnings)
    return EXIT_OK


def _cmd_model(args, out):
    model = _parse_file(args.model, parse_model)
    iface = _parse_file(args.iface, parse_interface)
    punctures = model_puncture_total(model, iface)
    out.write(f"block {iface.block_name}\n")
    out.write(report_mod.render_puncture_text(punctures))
    warnings = report_mod.model_warnings(model, iface, punctures)
    if warnings:
        out.write("\nwarnings:\n")
        out.writelines(f"  - {w}\n" for w in warnings)
    return EXIT_OK


def _signed(value: int) -> str:
    return f"{value:+d}" if value else "0"


def _cmd_hier(args, out):
    tree_path = Path(args.tree)
    try:
        text = tree_path.read_text(encoding="utf-8")
    except OSError as exc:
        raise AnalyzerError(f"{args.tree}: {exc.strerror or exc}") from exc

    base = tree_path.parent

    def resolve(source):
        model = str(base / source.model_path) if source.model_path else None
        report = _load_analysis(
            str(base / source.rules_path), str(base / source.iface_path), model
        )
        return report.balance.residual

    try:
        root = parse_hierarchy(text, resolve=resolve)
    except AnalyzerError as exc:
        raise AnalyzerError(f"{args.tree}: {exc}") from exc
    result = aggregate_hierarchy(root)
    for node in result.nodes:
        line = f"{'  ' * node.level}{node.name}  {_signed(node.value)}"
        if node.external_delta is not None:
            status = "ok" if node.matches_external else "MISMATCH"
            line += f"  expect {_signed(node.external_delta)}  {status}"
        out.write(line + "\n")
    out.write(f"root value {_signed(result.root_value)}\n")
    if result.mismatches:
        print(
            f"{len(result.mismatches)} expectation(s) violated", file=sys.stderr
        )
        return EXIT_NEGATIVE if result.root_value < 0 else EXIT_POSITIVE
    return EXIT_OK


def run(argv=None) -> int:
    """Parse arguments and dispatch; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse has already printed its message
        code = exc.code
        if code in (0, None):
            return EXIT_OK
        return code if isinstance(code, int) else EXIT_ERROR
    handlers = {
        "analyze": _cmd_analyze,
        "rules": _cmd_rules,
        "model": _cmd_model,
        "hier": _cmd_hier,
    }
    try:
        return handlers[args.command](args, sys.stdout)
    except AnalyzerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    raise SystemExit(run())
