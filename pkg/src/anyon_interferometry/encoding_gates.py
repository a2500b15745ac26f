"""Primitive encoded gates and the gate sequences realizing ``T_g``.

Four primitives act on the encoded register:

``perm3``
    permute the three levels of a qutrit (``params["mapping"][j]`` is the
    image of level ``j``);
``swap2``
    exchange two qutrit levels (``params["levels"]``);
``not``
    flip a qubit;
``cnot2lvl``
    exchange two qutrit levels when a control qubit holds
    ``params["active"]`` (default 1); ``sites`` is ``(control, target)``.

Any primitive may also carry an ancilla ``control`` site and
``control_value``; it then acts only on that ancilla level.
"""

from __future__ import annotations

import dataclasses
import functools
import itertools
import json
import typing as typ

import numpy as np

from .encoding import DEFAULT_CONFIGURATION, QUBIT_DIM, QUTRIT_DIM, ChargeConfiguration
from .errors import CircuitParseError
from .group_core import GroupElement
from .hilbert import LocalOperator, QuditRegister, StateVector, apply_local, controlled

if typ.TYPE_CHECKING:
    import collections.abc as cabc

    from .plaquette import Vertex

type GateKind = typ.Literal["perm3", "swap2", "not", "cnot2lvl"]
GATE_KINDS: frozenset[str] = frozenset({"perm3", "swap2", "not", "cnot2lvl"})

C_PLUS_MAPPING = (2, 0, 1)
C_MINUS_MAPPING = (1, 2, 0)
REFLECTION_LEVELS: dict[GroupElement, tuple[int, int]] = {
    GroupElement.T0: (1, 2),
    GroupElement.T1: (0, 1),
    GroupElement.T2: (0, 2),
}


@dataclasses.dataclass(frozen=True)
class Gate:
    """One primitive gate on named encoded sites."""

    kind: GateKind
    sites: tuple[str, ...]
    params: cabc.Mapping[str, typ.Any] = dataclasses.field(default_factory=dict)
    control: str | None = None
    control_value: int = 1

    def __post_init__(self) -> None:
        """Freeze parameters and check the site count for the gate kind.

        Raises
        ------
        ValueError
            If the kind is unknown or the site count is wrong.

        """
        object.__setattr__(self, "sites", tuple(self.sites))
        frozen = {
            key: tuple(value) if isinstance(value, list) else value
            for key, value in dict(self.params).items()
        }
        object.__setattr__(self, "params", frozen)
        if self.kind not in GATE_KINDS:
            msg = f"unknown gate kind '{self.kind}'"
            raise ValueError(msg)
        expected = 2 if self.kind == "cnot2lvl" else 1
        if len(self.sites) != expected:
            msg = f"{self.kind} acts on {expected} site(s), got {self.sites}"
            raise ValueError(msg)

    def __hash__(self) -> int:
        """Hash on the identifying fields."""
        params = tuple(sorted(self.params.items()))
        return hash((self.kind, self.sites, params, self.control, self.control_value))

    def core_matrix(self) -> np.ndarray:
        """Matrix of the gate without its ancilla control."""
        match self.kind:
            case "perm3":
                return _level_permutation(tuple(self.params["mapping"]))
            case "swap2":
                return _level_swap(tuple(self.params["levels"]))
            case "not":
                return _level_swap((0, 1), dim=QUBIT_DIM)
            case "cnot2lvl":
                active = int(self.params.get("active", 1))
                swap = _level_swap(tuple(self.params["levels"]))
                blocks = [
                    swap if a == active else np.eye(QUTRIT_DIM)
                    for a in range(QUBIT_DIM)
                ]
                matrix = np.zeros((QUBIT_DIM * QUTRIT_DIM,) * 2)
                for a, block in enumerate(blocks):
                    span = slice(a * QUTRIT_DIM, (a + 1) * QUTRIT_DIM)
                    matrix[span, span] = block
                return matrix
        msg = f"unknown gate kind '{self.kind}'"
        raise ValueError(msg)

    def operator(self, register: QuditRegister) -> LocalOperator:
        """Return the gate as a ``LocalOperator`` on ``register``."""
        dims = tuple(register.dim_of(site) for site in self.sites)
        core = LocalOperator(self.sites, dims, self.core_matrix())
        if self.control is None:
            return core
        return controlled(
            core,
            self.control,
            control_dim=register.dim_of(self.control),
            control_value=self.control_value,
        )

    def to_json(self) -> dict[str, object]:
        """Serialize to ``{gate, sites, params, control, control_value}``."""
        payload: dict[str, object] = {
            "gate": self.kind,
            "sites": list(self.sites),
            "params": {
                key: list(value) if isinstance(value, tuple) else value
                for key, value in self.params.items()
            },
        }
        if self.control is not None:
            payload["control"] = self.control
            payload["control_value"] = self.control_value
        return payload


def _level_permutation(mapping: tuple[int, ...]) -> np.ndarray:
    if sorted(mapping) != list(range(QUTRIT_DIM)):
        msg = f"{mapping} is not a permutation of the qutrit levels"
        raise ValueError(msg)
    matrix = np.zeros((QUTRIT_DIM, QUTRIT_DIM))
    for level, image in enumerate(mapping):
        matrix[image, level] = 1.0
    return matrix


def _level_swap(levels: tuple[int, ...], dim: int = QUTRIT_DIM) -> np.ndarray:
    first, second = levels
    if first == second or not {first, second} <= set(range(dim)):
        msg = f"invalid level pair {levels} for dimension {dim}"
        raise ValueError(msg)
    mapping = list(range(dim))
    mapping[first], mapping[second] = second, first
    matrix = np.zeros((dim, dim))
    for level, image in enumerate(mapping):
        matrix[image, level] = 1.0
    return matrix


def transpositions(mapping: cabc.Sequence[int]) -> tuple[tuple[int, int], ...]:
    """Level swaps, in application order, whose product is ``mapping``."""
    seen: set[int] = set()
    swaps: list[tuple[int, int]] = []
    for start in range(len(mapping)):
        if start in seen:
            continue
        cycle = [start]
        while mapping[cycle[-1]] != start:
            cycle.append(mapping[cycle[-1]])
        seen.update(cycle)
        swaps.extend((cycle[0], member) for member in cycle[1:])
    return tuple(swaps)


@dataclasses.dataclass(frozen=True)
class GateSequence:
    """An ordered tuple of gates, applied first to last."""

    gates: tuple[Gate, ...] = ()

    def __iter__(self) -> cabc.Iterator[Gate]:
        """Iterate over the gates in application order."""
        return iter(self.gates)

    def __len__(self) -> int:
        """Number of gates."""
        return len(self.gates)

    def then(self, other: GateSequence) -> GateSequence:
        """Concatenate ``other`` after this sequence."""
        return GateSequence(self.gates + other.gates)

    def sites(self) -> frozenset[str]:
        """Every site a gate touches, controls included."""
        touched = {site for gate in self.gates for site in gate.sites}
        touched.update(gate.control for gate in self.gates if gate.control is not None)
        return frozenset(touched)

    def apply(self, state: StateVector) -> StateVector:
        """Apply the sequence to an encoded state."""
        return functools.reduce(
            lambda current, gate: apply_local(gate.operator(current.register), current),
            self.gates,
            state,
        )

    def to_json(self) -> str:
        """Serialize to a JSON array of gate objects."""
        return json.dumps([gate.to_json() for gate in self.gates])

    @classmethod
    def from_json(cls, text: str) -> GateSequence:
        """Parse the output of ``to_json``.

        Raises
        ------
        CircuitParseError
            If the text is not a list of well-formed gate objects.

        """
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as err:
            msg = f"invalid JSON: {err.msg}"
            raise CircuitParseError(msg) from err
        if not isinstance(payload, list):
            msg = "gate sequence must be a JSON array"
            raise CircuitParseError(msg)
        return cls(tuple(itertools.starmap(_parse_gate, enumerate(payload))))


def _parse_gate(index: int, item: object) -> Gate:
    if not isinstance(item, dict):
        msg = "gate must be an object"
        raise CircuitParseError(msg, index=index)
    item = typ.cast("dict[str, typ.Any]", item)
    for field in ("gate", "sites"):
        if field not in item:
            msg = "missing required field"
            raise CircuitParseError(msg, index=index, field=field)
    try:
        return Gate(
            kind=item["gate"],
            sites=tuple(item["sites"]),
            params=item.get("params", {}),
            control=item.get("control"),
            control_value=int(item.get("control_value", 1)),
        )
    except (TypeError, ValueError) as err:
        raise CircuitParseError(str(err), index=index, field="gate") from err


def _pair_sites(qudit: str) -> tuple[str, str]:
    return f"{qudit}a", f"{qudit}b"


def _qudit_gates(
    g: GroupElement, qudit: str, control: str | None
) -> tuple[Gate, ...]:
    qubit, qutrit = _pair_sites(qudit)
    match g:
        case GroupElement.E:
            return ()
        case GroupElement.C_PLUS | GroupElement.C_MINUS:
            mapping = C_PLUS_MAPPING if g is GroupElement.C_PLUS else C_MINUS_MAPPING
            return (Gate("perm3", (qutrit,), {"mapping": mapping}, control=control),)
        case _:
            cnot = Gate("cnot2lvl", (qubit, qutrit), {"levels": REFLECTION_LEVELS[g]})
            return (cnot, Gate("not", (qubit,), control=control), cnot)


def encoded_T(  # noqa: N802 -- mirrors the gauge operator name.
    g: GroupElement,
    vertex: Vertex | None = None,
    *,
    controlled_by: str | None = None,
    assignment: ChargeConfiguration = DEFAULT_CONFIGURATION,
) -> GateSequence:
    """Gate sequence realizing ``T_g`` at ``vertex`` on the encoded register.

    Rotations permute the qutrit levels; reflections run CNOT, NOT, CNOT
    with the CNOT acting on the reflection's level pair. With
    ``controlled_by`` set, the permutation or the middle NOT is conditioned
    on that ancilla being ``|1⟩``.

    Raises
    ------
    UnsupportedVertexError
        If the configuration cannot encode the vertex's edge actions.

    """  # noqa: DOC502 -- raised by ChargeConfiguration.operated_qudits.
    qudits = assignment.operated_qudits(vertex)
    gates = tuple(
        gate for qudit in qudits for gate in _qudit_gates(g, qudit, controlled_by)
    )
    return GateSequence(gates)


def deterministic_T(  # noqa: N802 -- mirrors the gauge operator name.
    g: GroupElement,
    vertex: Vertex | None = None,
    *,
    assignment: ChargeConfiguration = DEFAULT_CONFIGURATION,
) -> GateSequence:
    """Ancilla-free ``T_g``: a level permutation, or NOT plus a level swap."""
    qudits = assignment.operated_qudits(vertex)
    gates: list[Gate] = []
    for qudit in qudits:
        qubit, qutrit = _pair_sites(qudit)
        if g in REFLECTION_LEVELS:
            gates.append(Gate("not", (qubit,)))
            gates.append(Gate("swap2", (qutrit,), {"levels": REFLECTION_LEVELS[g]}))
        else:
            gates.extend(_qudit_gates(g, qudit, None))
    return GateSequence(tuple(gates))


def decode_basis_action(
    sequence: GateSequence, qudit: str, levels: tuple[int, int]
) -> tuple[int, int]:
    """Image of one encoded basis pair under a single-pair gate sequence."""
    qubit, qutrit = _pair_sites(qudit)
    register = QuditRegister((QUBIT_DIM, QUTRIT_DIM), (qubit, qutrit))
    result = sequence.apply(StateVector.basis(register, levels))
    flat = int(np.argmax(np.abs(result.amplitudes)))
    a, b = np.unravel_index(flat, register.dims)
    return int(a), int(b)
