"""Report records and their JSON-lines and table renderings."""

from __future__ import annotations

import dataclasses
import json
import logging
import time
import typing as typ

from .log_context import run_id_var

if typ.TYPE_CHECKING:
    import collections.abc as cabc
    import pathlib

logger = logging.getLogger(__name__)

type Provenance = typ.Literal["paper", "derived-oracle", "trivial"]
type Value = float | tuple[float, ...]


def _as_tuple(value: Value) -> tuple[float, ...]:
    return value if isinstance(value, tuple) else (value,)


def _distance(first: Value, second: Value) -> float:
    left, right = _as_tuple(first), _as_tuple(second)
    if len(left) != len(right):
        msg = f"cannot compare values of length {len(left)} and {len(right)}"
        raise ValueError(msg)
    return max((abs(a - b) for a, b in zip(left, right, strict=True)), default=0.0)


@dataclasses.dataclass(frozen=True)
class ReportRecord:
    """One check of one experiment.

    ``oracle`` is the independently computed expectation and ``reference``
    the closed-form published value, when there is one. A record without
    either is informational and always passes.
    """

    experiment: str
    check: str
    parameters: cabc.Mapping[str, object]
    value: Value
    provenance: Provenance
    tolerance: float
    oracle: Value | None = None
    reference: Value | None = None
    wall_time: float = 0.0
    run_id: str | None = None

    @property
    def abs_error(self) -> float | None:
        """Largest deviation from the oracle or the reference."""
        errors = [
            _distance(self.value, expected)
            for expected in (self.oracle, self.reference)
            if expected is not None
        ]
        return max(errors) if errors else None

    @property
    def passed(self) -> bool:
        """Whether every error is within tolerance."""
        error = self.abs_error
        return error is None or error <= self.tolerance

    def to_json(self) -> dict[str, object]:
        """Serialize with the derived fields included."""
        return {
            "run_id": self.run_id,
            "experiment": self.experiment,
            "check": self.check,
            "parameters": dict(self.parameters),
            "value": self.value,
            "oracle": self.oracle,
            "reference": self.reference,
            "abs_error": self.abs_error,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "provenance": self.provenance,
            "wall_time": self.wall_time,
        }


@dataclasses.dataclass
class Recorder:
    """Collects records for one experiment, stamping the time between them."""

    experiment: str
    tolerance: float
    run_id: str | None = None
    records: list[ReportRecord] = dataclasses.field(default_factory=list)
    _mark: float = dataclasses.field(default_factory=time.perf_counter)

    @classmethod
    def for_current_run(cls, experiment: str, tolerance: float) -> Recorder:
        """Start a recorder stamped with the run identifier in context."""
        return cls(experiment, tolerance, run_id=run_id_var.get())

    def add(  # noqa: PLR0913 -- one keyword per record field.
        self,
        check: str,
        *,
        parameters: cabc.Mapping[str, object],
        value: Value,
        provenance: Provenance,
        oracle: Value | None = None,
        reference: Value | None = None,
        tolerance: float | None = None,
    ) -> ReportRecord:
        """Append a record and return it."""
        now = time.perf_counter()
        record = ReportRecord(
            experiment=self.experiment,
            check=check,
            parameters=dict(parameters),
            value=value,
            provenance=provenance,
            tolerance=self.tolerance if tolerance is None else tolerance,
            oracle=oracle,
            reference=reference,
            wall_time=now - self._mark,
            run_id=self.run_id,
        )
        self._mark = now
        self.records.append(record)
        if not record.passed:
            logger.warning(
                "check failed",
                extra={"check": check, "abs_error": record.abs_error},
            )
        return record


def write_jsonl(records: cabc.Iterable[ReportRecord], path: pathlib.Path) -> None:
    """Write one JSON object per line."""
    with path.open("w", encoding="utf-8") as stream:
        for record in records:
            stream.write(json.dumps(record.to_json(), sort_keys=True))
            stream.write("\n")


def _format_value(value: Value | None) -> str:
    if value is None:
        return "-"
    return ", ".join(f"{v:.6g}" for v in _as_tuple(value))


def _format_parameters(parameters: cabc.Mapping[str, object]) -> str:
    return " ".join(f"{key}={value}" for key, value in parameters.items())


_HEADER = ("experiment", "check", "parameters", "value", "expected", "error", "status")


def render_table(records: cabc.Sequence[ReportRecord]) -> str:
    """Aligned plain-text table, one row per record."""
    rows = [_HEADER]
    for record in records:
        expected = record.oracle if record.oracle is not None else record.reference
        error = record.abs_error
        rows.append((
            record.experiment,
            record.check,
            _format_parameters(record.parameters),
            _format_value(record.value),
            _format_value(expected),
            "-" if error is None else f"{error:.2e}",
            "PASS" if record.passed else "FAIL",
        ))
    widths = [max(len(row[i]) for row in rows) for i in range(len(_HEADER))]
    lines = [
        "  ".join(cell.ljust(w) for cell, w in zip(row, widths, strict=True))
        for row in rows
    ]
    return "\n".join(line.rstrip() for line in lines)


def summarize(records: cabc.Sequence[ReportRecord]) -> str:
    """One-line pass count."""
    passed = sum(record.passed for record in records)
    return f"{passed}/{len(records)} checks passed"
