"""Encoded gate sequences compiled to optical circuits and run photonically.

Uncontrolled level permutations become mode swaps (``R = 0`` splitters).
Every controlled operation becomes one or more CNOT fragments from the
chosen model, each with its own vacuum modes, which double as sinks.
"""

from __future__ import annotations

import dataclasses
import logging
import typing as typ

from .encoding import DEFAULT_CONFIGURATION, build_initial_encoded_state
from .encoding_gates import deterministic_T, transpositions
from .encoding_protocols import (
    ANCILLA,
    ProbeOutcome,
    ancilla_labels,
    charged_label_distribution,
    fig4_sequence,
    fig5_sequence,
    ghz_ancillas,
    plus_ancilla,
)
from .group_core import GroupElement
from .hilbert import StateVector, tensor
from .hilbert_measure import (
    ghz_basis_probabilities,
    qubit_basis_probabilities,
    reduced_density,
    reduced_density_sites,
)
from .optics_circuit import OpticalCircuit
from .optics_cnot import (
    NOMINAL_CNOT_SUCCESS,
    CnotRequest,
    cnot_model,
    vacuum_namer,
)
from .optics_codecs import PostSelection, RailLayout, encode_logical, postselect
from .optics_elements import BeamSplitter

if typ.TYPE_CHECKING:
    import collections.abc as cabc

    from ._protocols import _CnotModelLike, _ElementLike
    from .encoding_gates import Gate, GateSequence

logger = logging.getLogger(__name__)


def _rail_swaps(
    rails: tuple[str, ...], swaps: cabc.Iterable[tuple[int, int]]
) -> list[_ElementLike]:
    return [BeamSplitter(rails[a], rails[b], 0.0) for a, b in swaps]


def _level_swaps(gate: Gate) -> tuple[tuple[int, int], ...]:
    match gate.kind:
        case "perm3":
            return transpositions(gate.params["mapping"])
        case "swap2":
            return (tuple(gate.params["levels"]),)
        case _:
            return ((0, 1),)


@dataclasses.dataclass
class _Compiler:
    layout: RailLayout
    model: _CnotModelLike
    fresh_mode: cabc.Callable[[], str] = dataclasses.field(default_factory=vacuum_namer)
    elements: list[_ElementLike] = dataclasses.field(default_factory=list)
    vacuum: list[str] = dataclasses.field(default_factory=list)
    cnots: int = 0

    def cnot(self, request: CnotRequest) -> None:
        fragment = self.model.fragment(request, self.fresh_mode)
        self.elements.extend(fragment.elements)
        self.vacuum.extend(fragment.vacuum_modes)
        self.cnots += 1

    def add(self, gate: Gate) -> None:
        if gate.kind == "cnot2lvl":
            if gate.control is not None:
                msg = "ancilla-controlled two-level CNOTs have no optical compilation"
                raise ValueError(msg)
            control, target = (self.layout.rails(site) for site in gate.sites)
            active = int(gate.params.get("active", 1))
            self.cnot(CnotRequest(control, target, active, gate.params["levels"]))
            return
        rails = self.layout.rails(gate.sites[0])
        if gate.control is None:
            self.elements.extend(_rail_swaps(rails, _level_swaps(gate)))
            return
        control = self.layout.rails(gate.control)
        for levels in _level_swaps(gate):
            self.cnot(CnotRequest(control, rails, gate.control_value, levels))


@dataclasses.dataclass(frozen=True)
class CompiledSequence:
    """An optical circuit plus the number of CNOT fragments it contains."""

    circuit: OpticalCircuit
    cnot_count: int

    @property
    def nominal_success(self) -> float:
        """Photonic success probability ``(1/9)^cnots`` on valid inputs."""
        return NOMINAL_CNOT_SUCCESS**self.cnot_count


def compile_sequence(
    sequence: GateSequence, layout: RailLayout, model: _CnotModelLike
) -> CompiledSequence:
    """Translate an encoded gate sequence into an optical circuit.

    Raises
    ------
    ValueError
        If the sequence contains an ancilla-controlled two-level CNOT.

    """  # noqa: DOC502 -- raised while adding gates.
    compiler = _Compiler(layout, model)
    for gate in sequence:
        compiler.add(gate)
    circuit = OpticalCircuit(
        layout.mode_labels + tuple(compiler.vacuum),
        tuple(compiler.elements),
        frozenset(compiler.vacuum),
    )
    return CompiledSequence(circuit, compiler.cnots)


@dataclasses.dataclass(frozen=True)
class ProtocolResult:
    """Conditional ancilla statistics of a photonic run."""

    p_plus: float
    p_minus: float
    success_probability: float
    nominal_success: float


def _run_compiled(
    sequence: GateSequence, initial: StateVector, model: str
) -> tuple[PostSelection, CompiledSequence]:
    layout = RailLayout.for_register(initial.register)
    compiled = compile_sequence(sequence, layout, cnot_model(model))
    output = compiled.circuit.apply(encode_logical(initial, layout))
    selection = postselect(output, layout)
    logger.debug(
        "photonic protocol",
        extra={
            "model": model,
            "cnots": compiled.cnot_count,
            "success": selection.probability,
        },
    )
    return selection, compiled


def _run_single_ancilla(sequence: GateSequence, model: str) -> ProtocolResult:
    initial = tensor([build_initial_encoded_state(), plus_ancilla()])
    selection, compiled = _run_compiled(sequence, initial, model)
    if selection.state is None:
        return ProtocolResult(0.0, 0.0, 0.0, compiled.nominal_success)
    p_plus, p_minus = qubit_basis_probabilities(
        reduced_density(selection.state, ANCILLA), "x"
    )
    return ProtocolResult(
        p_plus, p_minus, selection.probability, compiled.nominal_success
    )


def run_fig5_protocol(
    reflection: int, model: str = "logical", *, include_step6: bool = False
) -> ProtocolResult:
    """Run the reduced reflection protocol through the optical layer.

    Returns
    -------
    ProtocolResult
        Ancilla ``±`` probabilities in the x basis conditioned on acceptance,
        the simulated acceptance probability and the nominal photonic one.

    Raises
    ------
    ValueError
        If ``reflection`` is not 0, 1 or 2.

    """  # noqa: DOC502 -- raised by fig5_sequence.
    sequence = fig5_sequence(reflection, include_step6=include_step6)
    return _run_single_ancilla(sequence, model)


def run_identity_protocol(model: str = "logical") -> ProtocolResult:
    """Run the controlled ``T_e`` through the optical layer.

    ``T_e`` compiles to an empty circuit, so the ``|+x⟩`` ancilla is read
    back unchanged and every run is accepted.
    """
    return _run_single_ancilla(deterministic_T(GroupElement.E), model)


def run_fig4_protocol(
    g: GroupElement, ancillas: int = 2, model: str = "logical"
) -> ProtocolResult:
    """Run the entangled-ancilla rotation protocol through the optical layer."""
    sequence = fig4_sequence(g, ancillas)
    initial = tensor([build_initial_encoded_state(), ghz_ancillas(ancillas)])
    selection, compiled = _run_compiled(sequence, initial, model)
    if selection.state is None:
        return ProtocolResult(0.0, 0.0, 0.0, compiled.nominal_success)
    density = reduced_density_sites(selection.state, ancilla_labels(ancillas))
    p_plus, p_minus = ghz_basis_probabilities(density, ancillas)
    return ProtocolResult(
        p_plus, p_minus, selection.probability, compiled.nominal_success
    )


def run_probe_protocol(g: GroupElement, model: str = "logical") -> ProbeOutcome:
    """Run the ancilla-free ``T_g`` as rail swaps and read the charged qudit.

    The deterministic sequence holds no CNOTs, so every run is accepted.
    """
    initial = build_initial_encoded_state()
    selection, _ = _run_compiled(deterministic_T(g), initial, model)
    if selection.state is None:
        return ProbeOutcome(0.0, 0.0, 0.0)
    labels = charged_label_distribution(selection.state, DEFAULT_CONFIGURATION)
    return ProbeOutcome(
        labels[GroupElement.E],
        labels[GroupElement.C_PLUS],
        labels[GroupElement.C_MINUS],
    )
