"""anyon-interferometry package."""

from __future__ import annotations

from .cli_config import ExperimentConfig
from .cli_report import ReportRecord
from .encoding import (
    DEFAULT_CONFIGURATION,
    ChargeConfiguration,
    Encoding,
    build_initial_encoded_state,
    configuration,
    decode,
    encode,
)
from .encoding_gates import Gate, GateSequence, deterministic_T, encoded_T
from .encoding_protocols import (
    ProbeOutcome,
    alternative_configuration,
    run_ancilla_free_probe,
    run_controlled_tt_protocol,
    run_encoded_controlled_experiment,
    run_entangled_control_protocol,
)
from .errors import (
    AnyonSimulationError,
    CircuitParseError,
    NormalizationError,
    RegisterError,
    TruncationOverflowError,
    UnsupportedVertexError,
)
from .group_core import (
    ELEMENTS,
    IRREPS,
    GroupElement,
    Irrep,
    character,
    inverse,
    irrep,
    multiply,
    parse_element,
)
from .hilbert import LocalOperator, QuditRegister, StateVector, apply_local, tensor
from .hilbert_measure import fidelity, qubit_basis_probabilities, reduced_density
from .log_context import (
    RECOMMENDED_LOG_FORMAT,
    ContextualLogFilter,
    default_run_id_generator,
    experiment_var,
    run_id_var,
)
from .optics import FockVector, ModeSet
from .optics_circuit import OpticalCircuit, parse_circuit
from .optics_codecs import RailLayout, dualrail_encode, postselect, trirail_encode
from .optics_elements import BeamSplitter, PhaseShift
from .optics_prep import run_prep_circuit, run_synthesized_prep
from .optics_protocols import (
    run_fig4_protocol,
    run_fig5_protocol,
    run_identity_protocol,
)
from .optics_sources import spdc_state, three_crystal_postselect
from .plaquette import (
    ChargeSpec,
    charge_pair_state,
    gauge_transform,
    ground_state,
    ribbon_operator,
)
from .plaquette_fusion import (
    controlled_gauge_experiment,
    fusion_amplitude,
    fusion_probe,
    fusion_probe_oracle,
)

__all__ = [
    "DEFAULT_CONFIGURATION",
    "ELEMENTS",
    "IRREPS",
    "RECOMMENDED_LOG_FORMAT",
    "AnyonSimulationError",
    "BeamSplitter",
    "ChargeConfiguration",
    "ChargeSpec",
    "CircuitParseError",
    "ContextualLogFilter",
    "Encoding",
    "ExperimentConfig",
    "FockVector",
    "Gate",
    "GateSequence",
    "GroupElement",
    "Irrep",
    "LocalOperator",
    "ModeSet",
    "NormalizationError",
    "OpticalCircuit",
    "PhaseShift",
    "ProbeOutcome",
    "QuditRegister",
    "RailLayout",
    "RegisterError",
    "ReportRecord",
    "StateVector",
    "TruncationOverflowError",
    "UnsupportedVertexError",
    "alternative_configuration",
    "apply_local",
    "build_initial_encoded_state",
    "character",
    "charge_pair_state",
    "configuration",
    "controlled_gauge_experiment",
    "decode",
    "default_run_id_generator",
    "deterministic_T",
    "dualrail_encode",
    "encode",
    "encoded_T",
    "experiment_var",
    "fidelity",
    "fusion_amplitude",
    "fusion_probe",
    "fusion_probe_oracle",
    "gauge_transform",
    "ground_state",
    "inverse",
    "irrep",
    "multiply",
    "parse_circuit",
    "parse_element",
    "postselect",
    "qubit_basis_probabilities",
    "reduced_density",
    "ribbon_operator",
    "run_ancilla_free_probe",
    "run_controlled_tt_protocol",
    "run_encoded_controlled_experiment",
    "run_entangled_control_protocol",
    "run_fig4_protocol",
    "run_fig5_protocol",
    "run_id_var",
    "run_identity_protocol",
    "run_prep_circuit",
    "run_synthesized_prep",
    "spdc_state",
    "tensor",
    "three_crystal_postselect",
    "trirail_encode",
]
