"""Three-qutrit state preparation for the encoded charge pair.

The preparation takes a maximally entangled qutrit pair on ``1b`` and
``3b`` and a single photon in rail ``2b0``. Three passive elements turn
qutrit ``2b`` into ``-(2, -1, -1)/√6``; a ternary subtractor
``|x⟩₂|y⟩₃ → |x⟩₂|y - x⟩₃`` built from four two-level CNOTs then yields
``Σ_{k,x} u_x/√3 |k⟩|x⟩|k - x⟩``.

An optimized fourteen-splitter circuit reaching the same state with
probability ``9/55`` is known; its layout is not reproduced here but can
be supplied as a circuit file and run through ``run_prep_circuit``.
"""

from __future__ import annotations

import dataclasses
import itertools
import logging
import math
import typing as typ

import numpy as np

from .encoding_gates import (
    C_MINUS_MAPPING,
    C_PLUS_MAPPING,
    Gate,
    GateSequence,
    transpositions,
)
from .hilbert import QuditRegister, StateVector
from .hilbert_measure import fidelity
from .optics import FockVector, ModeSet, fock_tensor
from .optics_circuit import OpticalCircuit
from .optics_cnot import cnot_model
from .optics_codecs import PostSelectionPattern, RailLayout, encode_logical, postselect
from .optics_elements import BeamSplitter, PhaseShift
from .optics_protocols import CompiledSequence, compile_sequence
from .optics_sources import three_crystal_state

if typ.TYPE_CHECKING:
    from ._protocols import _ElementLike

logger = logging.getLogger(__name__)

PREP_REGISTER = QuditRegister((3, 3, 3), ("1b", "2b", "3b"))
PREP_LAYOUT = RailLayout.for_register(PREP_REGISTER)
PREP_REFERENCE_PROBABILITY = 9 / 55
"""Success probability of the optimized preparation circuit."""
REFERENCE_BEAM_SPLITTERS = 14

_SEED_AMPLITUDES = np.array([2.0, -1.0, -1.0]) / math.sqrt(6)


def prep_target_state() -> StateVector:
    """Return ``Σ_{k,x} u_x/√3 |k⟩₁|x⟩₂|k - x⟩₃`` with ``u = (2, -1, -1)/√6``."""
    amplitudes = np.zeros(PREP_REGISTER.dims, dtype=complex)
    for k, x in itertools.product(range(3), repeat=2):
        amplitudes[k, x, (k - x) % 3] = _SEED_AMPLITUDES[x] / math.sqrt(3)
    return StateVector(PREP_REGISTER, amplitudes.reshape(-1), normalized=True)


def prep_input_state() -> StateVector:
    """Return ``Σ_k |k⟩₁|0⟩₂|k⟩₃ / √3``."""
    amplitudes = np.zeros(PREP_REGISTER.dims, dtype=complex)
    for k in range(3):
        amplitudes[k, 0, k] = 1 / math.sqrt(3)
    return StateVector(PREP_REGISTER, amplitudes.reshape(-1), normalized=True)


def seed_elements() -> tuple[_ElementLike, ...]:
    """Passive elements mapping ``|0⟩`` on ``2b`` to ``-(2, -1, -1)/√6``."""
    return (
        BeamSplitter("2b0", "2b1", 5 / 6),
        BeamSplitter("2b0", "2b2", 4 / 5),
        PhaseShift("2b2", -math.pi / 2),
    )


def subtractor_sequence() -> GateSequence:
    """Level swaps on ``3b`` controlled by the level of ``2b``.

    Control level 1 shifts ``3b`` down by one and level 2 shifts it down by
    two, so ``|x⟩|y⟩ → |x⟩|y - x⟩``.
    """
    gates = [
        Gate("swap2", ("3b",), {"levels": levels}, control="2b", control_value=value)
        for value, mapping in ((1, C_PLUS_MAPPING), (2, C_MINUS_MAPPING))
        for levels in transpositions(mapping)
    ]
    return GateSequence(tuple(gates))


def synthesize_prep_circuit(model: str = "logical") -> CompiledSequence:
    """Seed elements followed by the compiled subtractor."""
    seed = OpticalCircuit(PREP_LAYOUT.mode_labels, seed_elements())
    subtractor = compile_sequence(subtractor_sequence(), PREP_LAYOUT, cnot_model(model))
    return CompiledSequence(seed.then(subtractor.circuit), subtractor.cnot_count)


@dataclasses.dataclass(frozen=True, eq=False)
class PrepResult:
    """Post-selected outcome of a preparation circuit."""

    success_probability: float
    fidelity: float
    state: StateVector | None
    element_count: int
    beam_splitter_count: int
    nominal_success: float | None = None
    reference_probability: float = PREP_REFERENCE_PROBABILITY


def run_prep_circuit(
    circuit: OpticalCircuit,
    input_state: FockVector | None = None,
    pattern: PostSelectionPattern | None = None,
) -> PrepResult:
    """Run a preparation circuit and compare its output with the target.

    ``input_state`` defaults to the rail-encoded ``prep_input_state`` and
    ``pattern`` to one photon per qutrit with every other mode empty.
    """
    if input_state is None:
        input_state = encode_logical(prep_input_state(), PREP_LAYOUT)
    output = circuit.apply(input_state)
    if pattern is None:
        pattern = PostSelectionPattern.for_layout(PREP_LAYOUT, output.modes)
    selection = postselect(output, PREP_LAYOUT, pattern)
    overlap = (
        0.0
        if selection.state is None
        else fidelity(selection.state, prep_target_state())
    )
    logger.info(
        "preparation circuit run",
        extra={"success_probability": selection.probability, "fidelity": overlap},
    )
    return PrepResult(
        success_probability=selection.probability,
        fidelity=overlap,
        state=selection.state,
        element_count=len(circuit),
        beam_splitter_count=circuit.beam_splitter_count,
    )


def run_synthesized_prep(model: str = "logical") -> PrepResult:
    """Run the synthesized circuit on the ideal input."""
    compiled = synthesize_prep_circuit(model)
    result = run_prep_circuit(compiled.circuit)
    return dataclasses.replace(result, nominal_success=compiled.nominal_success)


def run_prep_from_spdc(
    strength: float, n_max: int, model: str = "logical"
) -> PrepResult:
    """Feed three truncated sources and a single ``2b`` photon to the circuit.

    Raises
    ------
    ValueError
        If ``strength`` is not in ``(0, 1)`` or ``n_max`` is below one.

    """  # noqa: DOC502 -- raised by the source constructor.
    seed_photon = FockVector.basis(ModeSet(("2b0", "2b1", "2b2"), 1, 1), {"2b0": 1})
    sources = fock_tensor(three_crystal_state(strength, n_max), seed_photon)
    compiled = synthesize_prep_circuit(model)
    result = run_prep_circuit(compiled.circuit, sources)
    return dataclasses.replace(result, nominal_success=compiled.nominal_success)
