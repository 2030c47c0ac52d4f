"""Coverage-balance linter for temporal-logic rule sets.

Counts asserted signal occurrences in a rule set (outputs +, inputs -),
derives puncture pressures from a block's state-machine model, checks
that the two sides cancel, and aggregates block variances over a design
hierarchy. Everything is syntactic counting; no formula is ever
evaluated on a model.
"""

from .errors import AnalyzerError, ParseError, ValidationError
from .formula import (
    AF,
    AG,
    AX,
    And,
    Atom,
    AWeakUntil,
    Formula,
    Implies,
    Not,
    Or,
    PolarityCount,
    Rule,
    RuleSet,
    count_occurrences,
    parse_formula,
    parse_rules,
    pretty_print,
)
from .hierarchy import (
    AggregationResult,
    BlockSource,
    UnitNode,
    aggregate_hierarchy,
    parse_hierarchy,
    unit_variance,
)
from .interface import (
    BalanceReport,
    BalanceVerdict,
    BlockInterface,
    Direction,
    Message,
    Orientation,
    RuleVarianceRow,
    Variance,
    VarianceTable,
    block_balance,
    message_measure,
    parse_interface,
    puncture_measure,
    rule_variance,
    set_variance,
)
from .model import (
    Classification,
    ModelAst,
    PunctureEntry,
    PunctureReport,
    classify_variables,
    model_puncture_total,
    parse_model,
    pretty_print_model,
    puncture_pressure,
)
from .report import (
    AnalysisReport,
    analyze,
    check_signal_coverage,
    render_report_text,
    render_structured,
    render_table,
)

__version__ = "0.1.0"

__all__ = [
    "AF",
    "AG",
    "AX",
    "AggregationResult",
    "AnalysisReport",
    "AnalyzerError",
    "And",
    "Atom",
    "AWeakUntil",
    "BalanceReport",
    "BalanceVerdict",
    "BlockInterface",
    "BlockSource",
    "Classification",
    "Direction",
    "Formula",
    "Implies",
    "Message",
    "ModelAst",
    "Not",
    "Or",
    "Orientation",
    "ParseError",
    "PolarityCount",
    "PunctureEntry",
    "PunctureReport",
    "Rule",
    "RuleSet",
    "RuleVarianceRow",
    "UnitNode",
    "ValidationError",
    "Variance",
    "VarianceTable",
    "aggregate_hierarchy",
    "analyze",
    "block_balance",
    "check_signal_coverage",
    "classify_variables",
    "count_occurrences",
    "message_measure",
    "model_puncture_total",
    "parse_formula",
    "parse_hierarchy",
    "parse_interface",
    "parse_model",
    "parse_rules",
    "pretty_print",
    "pretty_print_model",
    "puncture_measure",
    "puncture_pressure",
    "render_report_text",
    "render_structured",
    "render_table",
    "rule_variance",
    "set_variance",
    "unit_variance",
]
