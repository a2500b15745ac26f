"""Optical circuits and their JSON description.

An ``OpticalCircuit`` is an ordered list of elements over a fixed set of
modes. ``sink_modes`` are vacuum inputs that must stay empty for a run to
be accepted; once the last element touching a sink has acted, terms with
photons in that sink are discarded early.

The JSON form is::

    {"modes": [...],
     "elements": [{"kind": "beam_splitter", "modes": [a, b], "R": 0.5},
                  {"kind": "phase_shift", "modes": [a], "phase": "theta"},
                  {"kind": "logical_cnot", "control": [...], "target": [...],
                   "control_level": 1, "levels": [0, 1]}],
     "sinks": [...],
     "postselect": {"blocks": [[...], ...], "vacuum": [...]}}

Numeric fields accept numbers or named constants: ``pi``, ``theta`` and
``phi``, optionally negated with a leading ``-`` and divided by an integer
with a trailing ``/n``.
"""

from __future__ import annotations

import dataclasses
import json
import logging
import math
import re
import typing as typ

import numpy as np

from .errors import CircuitParseError, RegisterError
from .optics_codecs import PostSelectionPattern
from .optics_elements import BeamSplitter, LogicalCnot, PhaseShift

if typ.TYPE_CHECKING:
    import collections.abc as cabc

    from ._protocols import _ElementLike
    from .optics import FockVector

logger = logging.getLogger(__name__)

THETA = math.asin(10 / math.sqrt(247))
"""Phase angle of the optimized preparation circuit."""

PHI = math.asin((7 + math.sqrt(3)) / (2 * math.sqrt(26))) - math.pi / 4
"""Second phase angle of the optimized preparation circuit."""

NAMED_VALUES: dict[str, float] = {"pi": math.pi, "theta": THETA, "phi": PHI}
_NAMED_PATTERN = re.compile(
    r"^(?P<sign>-?)(?P<name>[a-z]+)(?:/(?P<divisor>[1-9]\d*))?$"
)


@dataclasses.dataclass(frozen=True)
class OpticalCircuit:
    """Elements applied first to last on ``modes``.

    Raises
    ------
    RegisterError
        If an element or sink refers to a mode outside ``modes``.

    """

    modes: tuple[str, ...]
    elements: tuple[_ElementLike, ...]
    sink_modes: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        """Check that every referenced mode exists."""
        object.__setattr__(self, "modes", tuple(self.modes))
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "sink_modes", frozenset(self.sink_modes))
        known = set(self.modes)
        for index, element in enumerate(self.elements):
            unknown = set(element.modes) - known
            if unknown:
                msg = f"element {index} uses unknown modes {sorted(unknown)}"
                raise RegisterError(msg)
        if not self.sink_modes <= known:
            msg = f"sink modes {sorted(self.sink_modes - known)} are not circuit modes"
            raise RegisterError(msg)

    def __len__(self) -> int:
        """Number of elements."""
        return len(self.elements)

    @property
    def beam_splitter_count(self) -> int:
        """Number of beam splitters, mode swaps included."""
        return sum(1 for element in self.elements if element.kind == "beam_splitter")

    def _retirements(self) -> dict[int, tuple[str, ...]]:
        last_use: dict[str, int] = {}
        for index, element in enumerate(self.elements):
            for mode in element.modes:
                if mode in self.sink_modes:
                    last_use[mode] = index
        retired: dict[int, list[str]] = {}
        for mode, index in last_use.items():
            retired.setdefault(index, []).append(mode)
        return {index: tuple(modes) for index, modes in retired.items()}

    def apply(self, state: FockVector) -> FockVector:
        """Run the circuit, padding ``state`` with any missing circuit modes."""
        current = state.with_modes(self.modes)
        retirements = self._retirements()
        for index, element in enumerate(self.elements):
            current = element.apply(current)
            if index in retirements:
                sinks = current.modes.indices(retirements[index])
                current = current.filtered(
                    lambda occ, sinks=sinks: not any(occ[i] for i in sinks)
                )
        logger.debug(
            "circuit applied",
            extra={"elements": len(self.elements), "support": len(current.amplitudes)},
        )
        return current

    def then(self, other: OpticalCircuit) -> OpticalCircuit:
        """Run ``other`` after this circuit."""
        modes = self.modes + tuple(m for m in other.modes if m not in self.modes)
        return OpticalCircuit(
            modes, self.elements + other.elements, self.sink_modes | other.sink_modes
        )

    def inverse(self) -> OpticalCircuit:
        """Elements undoing the circuit, in reverse order."""
        undone = tuple(
            step for element in reversed(self.elements) for step in element.inverse()
        )
        return OpticalCircuit(self.modes, undone, self.sink_modes)

    def mode_matrix(self) -> np.ndarray:
        """Single-photon transfer matrix over ``modes``.

        Raises
        ------
        ValueError
            If the circuit contains a non-linear element.

        """
        matrix = np.eye(len(self.modes), dtype=complex)
        for element in self.elements:
            if not isinstance(element, BeamSplitter | PhaseShift):
                msg = f"{element.kind} has no single-photon transfer matrix"
                raise ValueError(msg)  # noqa: TRY004 -- an unsupported element value.
            idx = [self.modes.index(m) for m in element.modes]
            step = np.eye(len(self.modes), dtype=complex)
            step[np.ix_(idx, idx)] = element.mode_matrix()
            matrix = step @ matrix
        return matrix

    def to_json(self) -> dict[str, object]:
        """Serialize modes, elements and sinks."""
        return {
            "modes": list(self.modes),
            "elements": [element.to_json() for element in self.elements],
            "sinks": sorted(self.sink_modes),
        }


@dataclasses.dataclass(frozen=True)
class CircuitDocument:
    """A parsed circuit file: the circuit and its optional post-selection."""

    circuit: OpticalCircuit
    pattern: PostSelectionPattern | None = None


def resolve_value(value: object, *, index: int, field: str) -> float:
    """Turn a number or named constant into a float.

    Raises
    ------
    CircuitParseError
        If the value is neither a number nor a known constant expression.

    """
    if isinstance(value, bool):
        msg = "expected a number, got a boolean"
        raise CircuitParseError(msg, index=index, field=field)
    if isinstance(value, int | float):
        return float(value)
    match = _NAMED_PATTERN.match(value) if isinstance(value, str) else None
    if match is None or match["name"] not in NAMED_VALUES:
        msg = (
            f"unknown value {value!r}; expected a number or one of "
            f"{sorted(NAMED_VALUES)}"
        )
        raise CircuitParseError(msg, index=index, field=field)
    result = NAMED_VALUES[match["name"]] / int(match["divisor"] or 1)
    return -result if match["sign"] else result


def _string_list(
    item: cabc.Mapping[str, typ.Any], field: str, index: int
) -> tuple[str, ...]:
    value = item.get(field)
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        msg = "expected a list of mode names"
        raise CircuitParseError(msg, index=index, field=field)
    return tuple(value)


def _parse_element(index: int, item: object) -> _ElementLike:
    if not isinstance(item, dict):
        msg = "element must be an object"
        raise CircuitParseError(msg, index=index)
    item = typ.cast("dict[str, typ.Any]", item)
    kind = item.get("kind")
    try:
        match kind:
            case "beam_splitter":
                first, second = _string_list(item, "modes", index)
                reflectivity = resolve_value(item.get("R"), index=index, field="R")
                return BeamSplitter(first, second, reflectivity)
            case "phase_shift":
                (mode,) = _string_list(item, "modes", index)
                angle = resolve_value(item.get("phase"), index=index, field="phase")
                return PhaseShift(mode, angle)
            case "logical_cnot":
                return LogicalCnot(
                    _string_list(item, "control", index),
                    _string_list(item, "target", index),
                    int(item["control_level"]),
                    tuple(int(level) for level in item["levels"]),
                )
    except CircuitParseError:
        raise
    except (KeyError, TypeError, ValueError) as err:
        raise CircuitParseError(str(err), index=index, field="kind") from err
    msg = f"unknown element kind {kind!r}"
    raise CircuitParseError(msg, index=index, field="kind")


def _parse_pattern(payload: object) -> PostSelectionPattern:
    if not isinstance(payload, dict):
        msg = "postselect must be an object"
        raise CircuitParseError(msg, field="postselect")
    payload = typ.cast("dict[str, typ.Any]", payload)
    blocks = payload.get("blocks", [])
    if not isinstance(blocks, list) or not all(isinstance(b, list) for b in blocks):
        msg = "blocks must be a list of mode lists"
        raise CircuitParseError(msg, field="postselect")
    return PostSelectionPattern(
        tuple(tuple(block) for block in blocks), tuple(payload.get("vacuum", ()))
    )


def parse_circuit(text: str) -> CircuitDocument:
    """Parse a circuit description.

    Raises
    ------
    CircuitParseError
        If the JSON is malformed or an element is invalid; the message names
        the element index and field.

    """
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as err:
        msg = f"invalid JSON: {err.msg}"
        raise CircuitParseError(msg) from err
    if not isinstance(payload, dict) or not isinstance(payload.get("elements"), list):
        msg = "circuit must be an object with an 'elements' list"
        raise CircuitParseError(msg, field="elements")
    elements = tuple(
        _parse_element(index, item) for index, item in enumerate(payload["elements"])
    )
    modes = payload.get("modes")
    if modes is None:
        modes = list(dict.fromkeys(m for element in elements for m in element.modes))
    try:
        circuit = OpticalCircuit(
            tuple(modes), elements, frozenset(payload.get("sinks", ()))
        )
    except RegisterError as err:
        raise CircuitParseError(str(err), field="modes") from err
    pattern = _parse_pattern(payload["postselect"]) if "postselect" in payload else None
    return CircuitDocument(circuit, pattern)
