"""Measurement protocols run on the encoded register.

The ancilla-free probe, the single-ancilla controlled ``T_g`` interferometer,
the reduced six-step reflection protocol and the entangled-ancilla rotation
protocol all start from ``build_initial_encoded_state`` and read either the
charged qudit or the ancillas. ``alternative_configuration`` bundles the
state and gate tables for each placement of the charge pair.
"""

from __future__ import annotations

import dataclasses
import logging
import math
import typing as typ

import numpy as np

from .encoding import (
    DEFAULT_CONFIGURATION,
    QUDITS,
    ChargeConfiguration,
    build_initial_encoded_state,
    configuration,
)
from .encoding_gates import (
    C_MINUS_MAPPING,
    C_PLUS_MAPPING,
    REFLECTION_LEVELS,
    Gate,
    GateSequence,
    deterministic_T,
    encoded_T,
    transpositions,
)
from .group_core import ELEMENTS, GroupElement
from .hilbert import QuditRegister, StateVector, tensor
from .hilbert_measure import (
    ghz_basis_probabilities,
    joint_distribution,
    qubit_basis_probabilities,
    reduced_density,
    reduced_density_sites,
)

if typ.TYPE_CHECKING:
    from .hilbert_measure import QubitBasis

logger = logging.getLogger(__name__)

ANCILLA = "anc"
_SQRT_HALF = 1.0 / math.sqrt(2.0)


@dataclasses.dataclass(frozen=True)
class ProbeOutcome:
    """Group-label statistics of the charged qudit after an ancilla-free ``T_g``."""

    p_e: float
    p_cplus: float
    p_cminus: float

    @property
    def w_expectation(self) -> float:
        """``⟨W_{R2}⟩ = 2 P_e - P_{c+} - P_{c-}``."""
        return 2 * self.p_e - self.p_cplus - self.p_cminus

    def as_tuple(self) -> tuple[float, float, float, float]:
        """``(P_e, P_c+, P_c-, W)``."""
        return (self.p_e, self.p_cplus, self.p_cminus, self.w_expectation)


def charged_label_distribution(
    state: StateVector, assignment: ChargeConfiguration
) -> dict[GroupElement, float]:
    """Decode the charged qudit's ``(a, b)`` statistics into group labels."""
    qudit = assignment.charged_qudit
    joint = joint_distribution(state, [f"{qudit}a", f"{qudit}b"])
    encoding = assignment.encoding_of(qudit)
    return {g: float(joint[encoding.encode_label(g)]) for g in ELEMENTS}


def run_ancilla_free_probe(
    g: GroupElement, assignment: ChargeConfiguration = DEFAULT_CONFIGURATION
) -> ProbeOutcome:
    """Apply the deterministic ``T_g`` and read the charged qudit.

    Returns
    -------
    ProbeOutcome
        Probabilities of ``e``, ``c+`` and ``c-`` and the implied ``⟨W⟩``.

    """
    state = deterministic_T(g, assignment=assignment).apply(
        build_initial_encoded_state(assignment)
    )
    labels = charged_label_distribution(state, assignment)
    return ProbeOutcome(
        labels[GroupElement.E],
        labels[GroupElement.C_PLUS],
        labels[GroupElement.C_MINUS],
    )


def _with_ancillas(state: StateVector, ancillas: StateVector) -> StateVector:
    return tensor([state, ancillas])


def plus_ancilla(label: str = ANCILLA) -> StateVector:
    """Single ancilla qubit in ``(|0⟩ + |1⟩)/√2``."""
    return StateVector.single_site(label, [_SQRT_HALF, _SQRT_HALF])


def run_encoded_controlled_experiment(
    g: GroupElement,
    basis: QubitBasis,
    assignment: ChargeConfiguration = DEFAULT_CONFIGURATION,
) -> tuple[float, float]:
    """Ancilla interferometry of ``T_g`` with the controlled encoded sequence."""
    state = _with_ancillas(build_initial_encoded_state(assignment), plus_ancilla())
    evolved = encoded_T(g, controlled_by=ANCILLA, assignment=assignment).apply(state)
    return qubit_basis_probabilities(reduced_density(evolved, ANCILLA), basis)


def fig5_sequence(reflection: int, *, include_step6: bool = False) -> GateSequence:
    """Reduced controlled-``T_{t_i}`` sequence with one ancilla.

    The qubit-qutrit CNOT on pair 1 is followed by a plain level swap on
    ``2b`` (qubit ``2a`` is known to be ``|1⟩``) and by NOTs on ``1a`` and
    ``2a`` conditioned on the ancilla being ``|0⟩``. The optional final
    CNOTs do not change the ancilla statistics.

    Raises
    ------
    ValueError
        If ``reflection`` is not 0, 1 or 2.

    """
    if reflection not in {0, 1, 2}:
        msg = f"reflection index must be 0, 1 or 2, got {reflection}"
        raise ValueError(msg)
    levels = REFLECTION_LEVELS[GroupElement(f"t{reflection}")]
    gates = [
        Gate("cnot2lvl", ("1a", "1b"), {"levels": levels}),
        Gate("swap2", ("2b",), {"levels": levels}),
        Gate("not", ("1a",), control=ANCILLA, control_value=0),
        Gate("not", ("2a",), control=ANCILLA, control_value=0),
    ]
    if include_step6:
        gates.extend(
            Gate("cnot2lvl", (f"{q}a", f"{q}b"), {"levels": levels}) for q in ("1", "2")
        )
    return GateSequence(tuple(gates))


def run_controlled_tt_protocol(
    reflection: int, *, include_step6: bool = False
) -> tuple[float, float]:
    """Run the reduced reflection protocol and read the ancilla in the x basis."""
    state = _with_ancillas(build_initial_encoded_state(), plus_ancilla())
    evolved = fig5_sequence(reflection, include_step6=include_step6).apply(state)
    outcome = qubit_basis_probabilities(reduced_density(evolved, ANCILLA), "x")
    logger.debug(
        "reflection protocol",
        extra={"reflection": reflection, "include_step6": include_step6},
    )
    return outcome


def ancilla_labels(count: int) -> tuple[str, ...]:
    """Labels ``a4, a5, …`` for an entangled ancilla register."""
    return tuple(f"a{4 + i}" for i in range(count))


def ghz_ancillas(count: int) -> StateVector:
    """``(|0…0⟩ + |1…1⟩)/√2`` on ``count`` ancilla qubits."""
    register = QuditRegister((2,) * count, ancilla_labels(count))
    amplitudes = np.zeros(register.total_dim, dtype=complex)
    amplitudes[0] = amplitudes[-1] = _SQRT_HALF
    return StateVector(register, amplitudes, normalized=True)


def fig4_sequence(g: GroupElement, ancillas: int = 2) -> GateSequence:
    """Entangled-ancilla controlled rotation on qutrits ``1b`` and ``2b``.

    The rotation is split into two level swaps. Qutrit ``1b`` receives them
    conditioned on ancillas being ``|1⟩``; qutrit ``2b`` receives the inverse
    order conditioned on ``|0⟩`` and then the rotation unconditionally. With
    two ancillas each one controls a swap on both qutrits; with four every
    swap has its own ancilla.

    Raises
    ------
    ValueError
        If ``g`` is not a rotation or ``ancillas`` is not 2 or 4.

    """
    if g not in {GroupElement.C_PLUS, GroupElement.C_MINUS}:
        msg = f"entangled-ancilla protocol needs c+ or c-, got {g.token}"
        raise ValueError(msg)
    if ancillas not in {2, 4}:
        msg = f"ancillas must be 2 or 4, got {ancillas}"
        raise ValueError(msg)
    mapping = C_PLUS_MAPPING if g is GroupElement.C_PLUS else C_MINUS_MAPPING
    first, second = transpositions(mapping)
    labels = ancilla_labels(ancillas)
    if ancillas == 2:
        a4, a5 = labels
        controls = (a5, a4, a5, a4)
    else:
        controls = labels
    return GateSequence((
        Gate("swap2", ("1b",), {"levels": first}, control=controls[0]),
        Gate("swap2", ("1b",), {"levels": second}, control=controls[1]),
        Gate(
            "swap2",
            ("2b",),
            {"levels": second},
            control=controls[2],
            control_value=0,
        ),
        Gate(
            "swap2",
            ("2b",),
            {"levels": first},
            control=controls[3],
            control_value=0,
        ),
        Gate("perm3", ("2b",), {"mapping": mapping}),
    ))


def run_entangled_control_protocol(
    g: GroupElement, ancillas: int = 2
) -> tuple[float, float]:
    """Run the entangled-ancilla protocol and read the GHZ ``±`` outcomes."""
    state = _with_ancillas(build_initial_encoded_state(), ghz_ancillas(ancillas))
    evolved = fig4_sequence(g, ancillas).apply(state)
    density = reduced_density_sites(evolved, ancilla_labels(ancillas))
    return ghz_basis_probabilities(density, ancillas)


@dataclasses.dataclass(frozen=True, eq=False)
class ConfigurationBundle:
    """Encoded state and per-qudit gate tables of a charge configuration."""

    configuration: ChargeConfiguration
    encoded_state: StateVector
    gate_tables: dict[GroupElement, GateSequence]

    def qudit_table(self, g: GroupElement, qudit: str) -> tuple[Gate, ...]:
        """Gates of ``T_g`` on one qudit with sites renamed to ``a``/``b``."""
        renamed = []
        for gate in self.gate_tables[g]:
            if gate.sites[0][0] != qudit:
                continue
            sites = tuple(site[1:] for site in gate.sites)
            renamed.append(dataclasses.replace(gate, sites=sites))
        return tuple(renamed)


def alternative_configuration(pair: str) -> ConfigurationBundle:
    """Encoding assignment, encoded pair state and ``T_g`` tables for ``pair``."""
    assignment = configuration(pair)
    tables = {g: encoded_T(g, assignment=assignment) for g in ELEMENTS}
    state = build_initial_encoded_state(assignment)
    return ConfigurationBundle(assignment, state, tables)


def relabelled_default_order(pair: str) -> tuple[str, ...]:
    """Site order that maps the default encoded state onto ``pair``'s state."""
    swaps = {"v1-v3": {}, "v1-v2": {"1": "2", "2": "1"}, "v2-v3": {"2": "3", "3": "2"}}
    mapping = swaps[configuration(pair).name]
    return tuple(
        f"{mapping.get(q, q)}{part}" for q in QUDITS for part in ("a", "b")
    )
