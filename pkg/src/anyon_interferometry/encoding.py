"""Qubit-qutrit encoding of the six-level edge qudits.

Each edge qudit ``j`` becomes a qubit ``ja`` and a qutrit ``jb``; a group
label maps to a level pair ``(a, b)`` whose combined index ``3a + b`` keeps
the row-major convention of ``hilbert``. Two encodings exist and differ only
in the codes of ``c+`` and ``c-``. A ``ChargeConfiguration`` fixes which
edge carries the charge, which vertex is operated on and which encoding
each qudit uses.
"""

from __future__ import annotations

import dataclasses
import enum
import functools
import typing as typ

import numpy as np

from .errors import RegisterError, UnsupportedVertexError
from .group_core import ELEMENTS, GROUP_ORDER, TWO_DIM, GroupElement
from .hilbert import LocalOperator, QuditRegister, StateVector, apply_local
from .plaquette import (
    EDGES,
    TOPOLOGY,
    ChargeSpec,
    Vertex,
    charge_pair_state,
)

if typ.TYPE_CHECKING:
    import collections.abc as cabc

QUBIT_DIM = 2
QUTRIT_DIM = 3
QUDITS: tuple[str, ...] = ("1", "2", "3")
ENCODED_LABELS: tuple[str, ...] = ("1a", "1b", "2a", "2b", "3a", "3b")
ENCODED_REGISTER = QuditRegister((QUBIT_DIM, QUTRIT_DIM) * 3, ENCODED_LABELS)


class Encoding(enum.Enum):
    """The two group-label to ``(qubit, qutrit)`` maps."""

    ENC1 = "enc1"
    ENC2 = "enc2"

    @property
    def codes(self) -> cabc.Mapping[GroupElement, tuple[int, int]]:
        """Element to ``(a, b)`` levels."""
        return _CODES[self]

    def encode_label(self, g: GroupElement) -> tuple[int, int]:
        """Return the ``(a, b)`` code of ``g``."""
        return self.codes[g]

    def decode_levels(self, a: int, b: int) -> GroupElement:
        """Return the element with code ``(a, b)``."""
        return _DECODES[self][a, b]

    def permutation(self) -> np.ndarray:
        """6x6 matrix sending ``|g⟩`` to ``|3a + b⟩``."""
        matrix = np.zeros((GROUP_ORDER, GROUP_ORDER))
        for g in ELEMENTS:
            a, b = self.codes[g]
            matrix[a * QUTRIT_DIM + b, g.index] = 1.0
        return matrix


_ENC1_CODES: dict[GroupElement, tuple[int, int]] = {
    GroupElement.E: (1, 0),
    GroupElement.T0: (0, 0),
    GroupElement.T1: (0, 1),
    GroupElement.T2: (0, 2),
    GroupElement.C_PLUS: (1, 2),
    GroupElement.C_MINUS: (1, 1),
}
_CODES: dict[Encoding, dict[GroupElement, tuple[int, int]]] = {
    Encoding.ENC1: _ENC1_CODES,
    Encoding.ENC2: _ENC1_CODES
    | {GroupElement.C_PLUS: (1, 1), GroupElement.C_MINUS: (1, 2)},
}
_DECODES: dict[Encoding, dict[tuple[int, int], GroupElement]] = {
    enc: {code: g for g, code in codes.items()} for enc, codes in _CODES.items()
}

type ConfigurationPair = typ.Literal["v1-v3", "v1-v2", "v2-v3"]


@dataclasses.dataclass(frozen=True)
class ChargeConfiguration:
    """Placement of the charge pair and the encodings that suit it.

    Parameters
    ----------
    pair : tuple[Vertex, Vertex]
        The two charged vertices.
    vertex : Vertex
        Vertex at which gauge transformations are performed.
    encodings : tuple[Encoding, Encoding, Encoding]
        Encoding of qudits 1, 2 and 3.

    """

    pair: tuple[Vertex, Vertex]
    vertex: Vertex
    encodings: tuple[Encoding, Encoding, Encoding]

    @property
    def name(self) -> str:
        """Short form such as ``"v1-v3"``."""
        return "-".join(self.pair)

    @property
    def charged_edge(self) -> str:
        """Edge carrying the charge."""
        return TOPOLOGY.edge_between(*self.pair)

    @property
    def charged_qudit(self) -> str:
        """Qudit number of the charged edge."""
        return qudit_of(self.charged_edge)

    def encoding_of(self, qudit: str) -> Encoding:
        """Encoding assigned to qudit ``"1"``, ``"2"`` or ``"3"``."""
        return self.encodings[QUDITS.index(qudit)]

    def operated_qudits(self, vertex: Vertex | None = None) -> tuple[str, ...]:
        """Qudits touched by a gauge transformation at ``vertex``.

        Raises
        ------
        UnsupportedVertexError
            If some touched edge uses an encoding under which the required
            left or right action differs from the ``enc1`` left action.

        """
        target = self.vertex if vertex is None else vertex
        touched: list[str] = []
        for edge, action in TOPOLOGY.star(target):
            qudit = qudit_of(edge)
            encoding = self.encoding_of(qudit)
            supported = (encoding, action) in {
                (Encoding.ENC1, "left"),
                (Encoding.ENC2, "right"),
            }
            if not supported:
                msg = (
                    f"vertex {target} needs the {action} action on qudit {qudit}, "
                    f"which {encoding.value} does not realize as the shared gate "
                    f"table in configuration {self.name}"
                )
                raise UnsupportedVertexError(msg)
            touched.append(qudit)
        return tuple(touched)


DEFAULT_CONFIGURATION = ChargeConfiguration(
    ("v1", "v3"), "v1", (Encoding.ENC1, Encoding.ENC1, Encoding.ENC2)
)
"""Charges on ``v1`` and ``v3`` with ``v1`` as the probed vertex."""

CONFIGURATIONS: dict[str, ChargeConfiguration] = {
    "v1-v3": DEFAULT_CONFIGURATION,
    "v1-v2": ChargeConfiguration(
        ("v1", "v2"), "v1", (Encoding.ENC1, Encoding.ENC1, Encoding.ENC1)
    ),
    "v2-v3": ChargeConfiguration(
        ("v2", "v3"), "v2", (Encoding.ENC2, Encoding.ENC2, Encoding.ENC1)
    ),
}


def qudit_of(edge: str) -> str:
    """Qudit number carried by plaquette edge ``edge``."""
    return QUDITS[EDGES.index(edge)]


def configuration(pair: str) -> ChargeConfiguration:
    """Look up a configuration by ``"v1-v3"`` style name.

    Raises
    ------
    ValueError
        If the name is unknown.

    """
    try:
        return CONFIGURATIONS[pair]
    except KeyError:
        msg = (
            f"unknown charge configuration '{pair}'; "
            f"expected one of {sorted(CONFIGURATIONS)}"
        )
        raise ValueError(msg) from None


def _split_register(register: QuditRegister) -> QuditRegister:
    dims: list[int] = []
    labels: list[str] = []
    for dim, label in zip(register.dims, register.labels, strict=True):
        if label in EDGES:
            qudit = qudit_of(label)
            dims.extend((QUBIT_DIM, QUTRIT_DIM))
            labels.extend((f"{qudit}a", f"{qudit}b"))
        else:
            dims.append(dim)
            labels.append(label)
    return QuditRegister(tuple(dims), tuple(labels))


def _merge_register(register: QuditRegister) -> QuditRegister:
    dims: list[int] = []
    labels: list[str] = []
    skip_next = False
    for dim, label in zip(register.dims, register.labels, strict=True):
        if skip_next:
            skip_next = False
            continue
        if label in {f"{q}a" for q in QUDITS}:
            dims.append(GROUP_ORDER)
            labels.append(EDGES[QUDITS.index(label[0])])
            skip_next = True
        else:
            dims.append(dim)
            labels.append(label)
    return QuditRegister(tuple(dims), tuple(labels))


def encode(
    state: StateVector,
    assignment: ChargeConfiguration = DEFAULT_CONFIGURATION,
) -> StateVector:
    """Relabel plaquette edges into encoded ``(ja, jb)`` site pairs.

    Sites other than ``e1``, ``e2`` and ``e3`` keep their place.

    Raises
    ------
    RegisterError
        If the state lacks a plaquette edge.

    """
    missing = [edge for edge in EDGES if edge not in state.register.labels]
    if missing:
        msg = f"state has no sites {missing} to encode"
        raise RegisterError(msg)
    current = state
    for edge in EDGES:
        permutation = assignment.encoding_of(qudit_of(edge)).permutation()
        operator = LocalOperator((edge,), (GROUP_ORDER,), permutation)
        current = apply_local(operator, current)
    return StateVector(
        _split_register(state.register), current.amplitudes, normalized=state.normalized
    )


def decode(
    state: StateVector,
    assignment: ChargeConfiguration = DEFAULT_CONFIGURATION,
) -> StateVector:
    """Inverse of ``encode``.

    Raises
    ------
    RegisterError
        If an encoded qubit is not immediately followed by its qutrit.

    """
    labels = state.register.labels
    for qudit in QUDITS:
        position = labels.index(f"{qudit}a") if f"{qudit}a" in labels else -1
        if position < 0 or labels[position + 1 : position + 2] != (f"{qudit}b",):
            msg = f"encoded sites {qudit}a, {qudit}b missing or out of order"
            raise RegisterError(msg)
    merged = StateVector(
        _merge_register(state.register), state.amplitudes, normalized=state.normalized
    )
    current = merged
    for edge in EDGES:
        permutation = assignment.encoding_of(qudit_of(edge)).permutation()
        operator = LocalOperator((edge,), (GROUP_ORDER,), permutation.T)
        current = apply_local(operator, current)
    return current


@functools.cache
def build_initial_encoded_state(
    assignment: ChargeConfiguration = DEFAULT_CONFIGURATION,
) -> StateVector:
    """Encoded vacuum-channel pair ``|1_{R2}⟩`` for a configuration."""
    spec = ChargeSpec.identity(TWO_DIM, assignment.pair)
    return encode(charge_pair_state(spec), assignment)
