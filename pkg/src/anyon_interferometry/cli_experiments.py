"""Experiment commands run by the command-line driver.

Each command takes an ``ExperimentConfig`` and returns its report records in
a fixed order. Records compare a computed value with an independent oracle,
with the published closed form, or with both.
"""

from __future__ import annotations

import typing as typ

import numpy as np

from .cli_optics import cmd_optics
from .cli_report import Recorder
from .encoding import ENCODED_LABELS
from .encoding_protocols import (
    alternative_configuration,
    relabelled_default_order,
    run_ancilla_free_probe,
    run_encoded_controlled_experiment,
)
from .group_core import ELEMENTS, IRREPS, TWO_DIM, GroupElement, multiplicity_of_trivial
from .hilbert import expectation
from .hilbert_measure import permute_sites, relabel_sites
from .optics_protocols import (
    run_fig4_protocol,
    run_fig5_protocol,
    run_identity_protocol,
    run_probe_protocol,
)
from .plaquette import ChargeSpec, charge_pair_state, gauge_transform
from .plaquette_fusion import (
    CHARGED_EDGE,
    braided_pair,
    controlled_gauge_experiment,
    fusion_amplitude,
    fusion_amplitude_paths,
    fusion_probe,
    fusion_probe_paths,
    matrix_unit_sweep,
    random_charge_matrix,
    site_label_distribution,
    w_expectation_after,
    w_expectation_paths,
)

if typ.TYPE_CHECKING:
    import collections.abc as cabc

    from .cli_config import ExperimentConfig
    from .cli_report import ReportRecord
    from .encoding_protocols import ConfigurationBundle
    from .group_core import Irrep

PUBLISHED_FUSION: dict[GroupElement, float] = {
    GroupElement.E: 1.0,
    GroupElement.T0: 0.0,
    GroupElement.T1: 0.0,
    GroupElement.T2: 0.0,
    GroupElement.C_PLUS: -0.5,
    GroupElement.C_MINUS: -0.5,
}
"""Vacuum-channel fusion amplitudes of the two-dimensional charge."""

_REFLECTED = (0.0, 0.0, 0.0, 0.0)
PUBLISHED_PROBE: dict[GroupElement, tuple[float, ...]] = {
    GroupElement.E: (2 / 3, 1 / 6, 1 / 6, 1.0),
    GroupElement.C_PLUS: (1 / 6, 2 / 3, 1 / 6, -0.5),
    GroupElement.T0: _REFLECTED,
    GroupElement.T1: _REFLECTED,
    GroupElement.T2: _REFLECTED,
}
"""``(P_e, P_c+, P_c-, ⟨W⟩)`` on the charged edge after ``T_g``."""

RANDOM_CHARGE_DRAWS = 2


def _reflection_index(g: GroupElement) -> int:
    return int(g.token[1])


def _ancilla_outcome(
    g: GroupElement, config: ExperimentConfig, recorder: Recorder
) -> tuple[float, float]:
    match config.layer:
        case "abstract":
            paths = fusion_amplitude_paths(TWO_DIM, g)
            recorder.add(
                "fusion-paths",
                parameters={"element": g.token},
                value=paths.discrepancy,
                oracle=0.0,
                provenance="derived-oracle",
            )
            return controlled_gauge_experiment(g, config.vertex, config.basis)
        case "encoded":
            return run_encoded_controlled_experiment(g, config.basis)
        case _:
            if g is GroupElement.E:
                result = run_identity_protocol(config.cnot_model)
            elif g.is_rotation:
                # Reused photonic controls admit photon transfer.
                ancillas = 2 if config.cnot_model == "logical" else 4
                result = run_fig4_protocol(g, ancillas, config.cnot_model)
            else:
                result = run_fig5_protocol(_reflection_index(g), config.cnot_model)
            recorder.add(
                "photonic-success",
                parameters={"element": g.token, "nominal": result.nominal_success},
                value=result.success_probability,
                provenance="trivial",
            )
            return result.p_plus, result.p_minus


def cmd_fusion(config: ExperimentConfig) -> list[ReportRecord]:
    """Fusion amplitudes and ancilla interferometry for each element.

    The first record compares the computed amplitudes of ``e``, ``t0`` and
    ``c+`` with ``(1, 0, -1/2)``. Each element then yields ``P+ - P-``,
    which equals ``Re F`` in the x basis and ``Im F`` in the y basis.
    """
    recorder = Recorder.for_current_run("fusion", config.tolerance)
    shown = (GroupElement.E, GroupElement.T0, GroupElement.C_PLUS)
    recorder.add(
        "fusion-reference",
        parameters={"elements": ",".join(g.token for g in shown)},
        value=tuple(fusion_amplitude(TWO_DIM, g).real for g in shown),
        reference=tuple(PUBLISHED_FUSION[g] for g in shown),
        provenance="paper",
    )
    for g in config.elements:
        p_plus, p_minus = _ancilla_outcome(g, config, recorder)
        amplitude = fusion_amplitude(TWO_DIM, g)
        in_x = config.basis == "x"
        recorder.add(
            "ancilla-interference",
            parameters={"element": g.token, **config.parameters()},
            value=p_plus - p_minus,
            oracle=amplitude.real if in_x else amplitude.imag,
            reference=PUBLISHED_FUSION[g] if in_x else 0.0,
            provenance="paper",
        )
    return recorder.records


def _abstract_probe(g: GroupElement) -> tuple[float, ...]:
    labels = site_label_distribution(braided_pair(g), CHARGED_EDGE)
    return (
        labels[GroupElement.E],
        labels[GroupElement.C_PLUS],
        labels[GroupElement.C_MINUS],
        w_expectation_after(g),
    )


def _probe_matrices(rep: Irrep, rng: np.random.Generator) -> list[np.ndarray]:
    draws = [random_charge_matrix(rep, rng) for _ in range(RANDOM_CHARGE_DRAWS)]
    return [*matrix_unit_sweep(rep), *draws]


def _record_q_matrix(config: ExperimentConfig, recorder: Recorder) -> None:
    rng = np.random.default_rng(config.seed)
    for rep in IRREPS:
        matrices = _probe_matrices(rep, rng)
        for probe in IRREPS:
            parameters = {"R": str(rep), "R'": str(probe), "seed": config.seed}
            discrepancy = max(
                fusion_probe_paths(rep, probe, g, m).discrepancy
                for g in ELEMENTS
                for m in matrices
            )
            recorder.add(
                "q-matrix-oracle",
                parameters=parameters,
                value=discrepancy,
                oracle=0.0,
                provenance="derived-oracle",
            )
            if multiplicity_of_trivial(rep, probe.dual(), rep.dual()) == 0:
                largest = max(
                    abs(fusion_probe(rep, probe, g, m))
                    for g in ELEMENTS
                    for m in matrices
                )
                recorder.add(
                    "q-matrix-vanishing",
                    parameters=parameters,
                    value=largest,
                    oracle=0.0,
                    provenance="paper",
                )


def cmd_probe(config: ExperimentConfig) -> list[ReportRecord]:
    """Charged-edge label statistics after ``T_g`` and the Q-matrix sweep."""
    recorder = Recorder.for_current_run("probe", config.tolerance)
    for g in config.elements:
        oracle = _abstract_probe(g)
        match config.layer:
            case "abstract":
                value = oracle
                recorder.add(
                    "w-paths",
                    parameters={"element": g.token},
                    value=w_expectation_paths(g).discrepancy,
                    oracle=0.0,
                    provenance="derived-oracle",
                )
            case "encoded":
                value = run_ancilla_free_probe(g).as_tuple()
            case _:
                value = run_probe_protocol(g, config.cnot_model).as_tuple()
        recorder.add(
            "label-distribution",
            parameters={"element": g.token, "layer": config.layer},
            value=value,
            oracle=oracle,
            reference=PUBLISHED_PROBE.get(g),
            provenance="paper" if g in PUBLISHED_PROBE else "derived-oracle",
        )
    _record_q_matrix(config, recorder)
    return recorder.records


def _largest_gap(
    first: cabc.Iterable[tuple[float, ...]], second: cabc.Iterable[tuple[float, ...]]
) -> float:
    return max(
        (
            abs(a - b)
            for left, right in zip(first, second, strict=True)
            for a, b in zip(left, right, strict=True)
        ),
        default=0.0,
    )


def _state_gap(default: ConfigurationBundle, bundle: ConfigurationBundle) -> float:
    order = relabelled_default_order(bundle.configuration.name)
    moved = relabel_sites(permute_sites(default.encoded_state, order), ENCODED_LABELS)
    return float(np.max(np.abs(moved.amplitudes - bundle.encoded_state.amplitudes)))


def _tables_match(default: ConfigurationBundle, bundle: ConfigurationBundle) -> bool:
    pairs = zip(
        default.configuration.operated_qudits(),
        bundle.configuration.operated_qudits(),
        strict=True,
    )
    return all(
        default.qudit_table(g, mine) == bundle.qudit_table(g, theirs)
        for mine, theirs in pairs
        for g in ELEMENTS
    )


def _fusion_overlaps(bundle: ConfigurationBundle) -> list[tuple[float, ...]]:
    assignment = bundle.configuration
    pair = charge_pair_state(ChargeSpec.identity(TWO_DIM, assignment.pair))
    overlaps = []
    for g in ELEMENTS:
        value = expectation(gauge_transform(g, assignment.vertex), pair)
        overlaps.append((value.real, value.imag))
    return overlaps


def _statistics(bundle: ConfigurationBundle) -> dict[str, list[tuple[float, ...]]]:
    assignment = bundle.configuration
    return {
        "abstract-fusion": _fusion_overlaps(bundle),
        "probe-statistics": [
            run_ancilla_free_probe(g, assignment).as_tuple() for g in ELEMENTS
        ],
        "controlled-statistics": [
            run_encoded_controlled_experiment(g, "x", assignment) for g in ELEMENTS
        ],
    }


def cmd_equivalence(config: ExperimentConfig) -> list[ReportRecord]:
    """Compare the two alternative charge placements with ``(v1, v3)``."""
    recorder = Recorder.for_current_run("equivalence", config.tolerance)
    default = alternative_configuration("v1-v3")
    baseline = _statistics(default)
    for pair in ("v1-v2", "v2-v3"):
        bundle = alternative_configuration(pair)
        parameters = {"configuration": pair}
        recorder.add(
            "encoded-state",
            parameters=parameters,
            value=_state_gap(default, bundle),
            oracle=0.0,
            provenance="paper",
        )
        recorder.add(
            "gate-tables",
            parameters=parameters,
            value=float(_tables_match(default, bundle)),
            oracle=1.0,
            provenance="paper",
        )
        for check, values in _statistics(bundle).items():
            recorder.add(
                check,
                parameters=parameters,
                value=_largest_gap(values, baseline[check]),
                oracle=0.0,
                provenance="paper",
            )
    recorder.add(
        "all-configurations",
        parameters={"configurations": 3},
        value=float(all(record.passed for record in recorder.records)),
        oracle=1.0,
        provenance="trivial",
    )
    return recorder.records


COMMANDS: dict[str, cabc.Callable[[ExperimentConfig], list[ReportRecord]]] = {
    "fusion": cmd_fusion,
    "probe": cmd_probe,
    "optics": cmd_optics,
    "equivalence": cmd_equivalence,
}
