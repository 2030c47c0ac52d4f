"""Block interfaces, signed message measures, and rule-variance tables.

Sign convention used throughout: traffic leaving the block (outputs,
sink-bound messages) counts positive, traffic entering it (inputs,
source-emitted messages) counts negative. An asserted occurrence of an
output signal in a rule therefore contributes +1 to the rule's variance
and an asserted input occurrence contributes -1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, NamedTuple

from .errors import ParseError, ValidationError
from .formula import count_occurrences

# Signed information-pressure units; contributions are additive.
Variance = int


class Direction(Enum):
    INPUT = "input"
    OUTPUT = "output"


class Orientation(Enum):
    """Which way a message crosses the block boundary."""

    OUTWARD = "+n"  # leaving the block: outputs, sink-bound traffic
    INWARD = "-n"  # entering the block: inputs, source-emitted traffic


_ID_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


@dataclass(frozen=True)
class BlockInterface:
    """Declared boundary of one block; the ground truth for directions."""

    block_name: str
    signals: Mapping[str, Direction]  # declaration order preserved
    punctures: tuple[str, ...] = ()
    manual_pressures: Mapping[str, Variance] = field(default_factory=dict)

    def __post_init__(self):
        if not self.signals:
            raise ValidationError(
                f"block {self.block_name!r} declares no boundary signals"
            )
        seen = set(self.signals)
        for name in self.punctures:
            if name in seen:
                raise ValidationError(f"duplicate name {name!r} in interface")
            seen.add(name)
        for name in self.manual_pressures:
            if name not in self.punctures:
                raise ValidationError(
                    f"pressure declared for {name!r}, which is not a puncture"
                )

    @property
    def inputs(self) -> tuple[str, ...]:
        return tuple(n for n, d in self.signals.items() if d is Direction.INPUT)

    @property
    def outputs(self) -> tuple[str, ...]:
        return tuple(n for n, d in self.signals.items() if d is Direction.OUTPUT)

    @property
    def ordered_signals(self) -> tuple[str, ...]:
        """All signals, inputs first then outputs, declaration order."""
        return self.inputs + self.outputs


def _split_names(body, line_no):
    if not body.strip():
        return []
    names = [part.strip() for part in body.split(",")]
    for name in names:
        if not _ID_RE.fullmatch(name):
            raise ParseError(f"invalid identifier {name!r}", line_no)
    return names


def parse_interface(text) -> BlockInterface:
    """Parse an interface file.

    Directives, one per line (`--` comments ignored):
        block <name>
        inputs  <id> [, <id>]*
        outputs <id> [, <id>]*
        punctures [<id> [, <id>]*]
        pressure <puncture-id> = <signed integer>
    """
    block_name = None
    signals: dict[str, Direction] = {}
    punctures: list[str] = []
    pressures: dict[str, int] = {}
    declared: set[str] = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("--", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 1)
        word = parts[0]
        body = parts[1] if len(parts) == 2 else ""
        if word == "block":
            if block_name is not None:
                raise ParseError("duplicate 'block' line", line_no)
            name = body.strip()
            if not _ID_RE.fullmatch(name):
                raise ParseError(f"invalid block name {name!r}", line_no)
            block_name = name
            continue
        if block_name is None:
            raise ParseError("'block <name>' must be the first directive", line_no)
        if word in ("inputs", "outputs"):
            direction = Direction.INPUT if word == "inputs" else Direction.OUTPUT
            for name in _split_names(body, line_no):
                if name in declared:
                    raise ParseError(f"duplicate name {name!r}", line_no)
                declared.add(name)
                signals[name] = direction
        elif word == "punctures":
            for name in _split_names(body, line_no):
                if name in declared:
                    raise ParseError(f"duplicate name {name!r}", line_no)
                declared.add(name)
                punctures.append(name)
        elif word == "pressure":
            match = re.fullmatch(
                r"([A-Za-z][A-Za-z0-9_]*)\s*=\s*([+-]?\d+)", body.strip()
            )
            if not match:
                raise ParseError("expected 'pressure <name> = <integer>'", line_no)
            name, value = match.group(1), int(match.group(2))
            if name in pressures:
                raise ParseError(f"duplicate pressure for {name!r}", line_no)
            pressures[name] = value
        else:
            raise ParseError(f"unknown directive {word!r}", line_no)
    if block_name is None:
        raise ParseError("missing 'block <name>' line")
    return BlockInterface(block_name, signals, tuple(punctures), pressures)


@dataclass(frozen=True)
class Message:
    """A bundle of signals crossing the boundary in one direction."""

    orientation: Orientation
    signals: tuple[str, ...]

    def __post_init__(self):
        if not self.signals:
            raise ValidationError("a message must carry at least one signal")


def message_measure(message) -> Variance:
    """Signed signal count: positive leaving the block, negative entering."""
    size = len(message.signals)
    return size if message.orientation is Orientation.OUTWARD else -size


def puncture_measure(messages) -> Variance:
    """Net pressure of one puncture: the sum over its (possibly mixed) messages."""
    return sum(message_measure(message) for message in messages)


@dataclass(frozen=True)
class RuleVarianceRow:
    """One table row: asserted counts per boundary signal plus the rule's delta."""

    label: str
    asserted_inputs: Mapping[str, int]
    asserted_outputs: Mapping[str, int]
    negated: Mapping[str, int]  # kept for structured output only
    delta: Variance
    unknown_atoms: tuple[str, ...]
    puncture_atoms: tuple[str, ...]


def rule_variance(rule, iface) -> RuleVarianceRow:
    """Compute one rule's row: delta = asserted outputs - asserted inputs.

    Atoms naming punctures or undeclared signals contribute nothing and
    are carried on the row as warnings-in-waiting.
    """
    counts = count_occurrences(rule.body)
    asserted_inputs = {name: 0 for name in iface.inputs}
    asserted_outputs = {name: 0 for name in iface.outputs}
    negated = {name: 0 for name in iface.ordered_signals}
    unknown = []
    puncture_atoms = []
    for name, count in counts.items():
        if name in asserted_inputs:
            asserted_inputs[name] = count.asserted
            negated[name] = count.negated
        elif name in asserted_outputs:
            asserted_outputs[name] = count.asserted
            negated[name] = count.negated
        elif name in iface.punctures:
            puncture_atoms.append(name)
        else:
            unknown.append(name)
    delta = sum(asserted_outputs.values()) - sum(asserted_inputs.values())
    return RuleVarianceRow(
        label=rule.label,
        asserted_inputs=asserted_inputs,
        asserted_outputs=asserted_outputs,
        negated=negated,
        delta=delta,
        unknown_atoms=tuple(sorted(unknown)),
        puncture_atoms=tuple(sorted(puncture_atoms)),
    )


class VarianceTable(NamedTuple):
    rows: tuple[RuleVarianceRow, ...]
    total: Variance


def set_variance(ruleset, iface) -> VarianceTable:
    """Per-rule rows in file order and their summed delta."""
    rows = tuple(rule_variance(rule, iface) for rule in ruleset)
    return VarianceTable(rows, sum(row.delta for row in rows))


class BalanceVerdict(Enum):
    BALANCED = "balanced"
    POSITIVE_IMBALANCE = "positive_imbalance"  # redundancy-style evidence
    NEGATIVE_IMBALANCE = "negative_imbalance"  # incompleteness-style evidence


@dataclass(frozen=True)
class BalanceReport:
    rule_total: Variance
    puncture_total: Variance
    residual: Variance
    verdict: BalanceVerdict


def block_balance(rule_total, puncture_totals) -> BalanceReport:
    """Check the balance identity: rule and puncture pressures should cancel.

    A nonzero residual is advisory evidence only; a zero residual never
    certifies the rule set complete or non-redundant.
    """
    puncture_total = sum(puncture_totals)
    residual = rule_total + puncture_total
    if residual > 0:
        verdict = BalanceVerdict.POSITIVE_IMBALANCE
    elif residual < 0:
        verdict = BalanceVerdict.NEGATIVE_IMBALANCE
    else:
        verdict = BalanceVerdict.BALANCED
    return BalanceReport(rule_total, puncture_total, residual, verdict)
