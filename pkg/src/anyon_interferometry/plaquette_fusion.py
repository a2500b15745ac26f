"""Fusion amplitudes and fusion-rule probes on a charge pair.

Braiding a flux ``h`` around one charge of a pair acts as the gauge
transformation ``T_h`` at that charge's vertex, so every quantity here is
computed from ``plaquette`` states and operators. Each quantity offers a
closed-form path and a direct state-vector path; ``*_paths`` helpers return
both so callers can compare them.
"""

from __future__ import annotations

import dataclasses
import functools
import logging
import math
import typing as typ

import numpy as np
from scipy import linalg

from .group_core import (
    ELEMENTS,
    GROUP_ORDER,
    TWO_DIM,
    GroupElement,
    Irrep,
    character,
    inverse,
    regular_matrix,
)
from .hilbert import (
    StateVector,
    apply_local,
    controlled,
    expectation,
    inner,
    tensor,
)
from .hilbert_measure import qubit_basis_probabilities, reduced_density
from .plaquette import (
    ChargeSpec,
    Vertex,
    charge_pair_state,
    gauge_transform,
    ribbon_operator,
)

if typ.TYPE_CHECKING:
    from .hilbert_measure import QubitBasis

logger = logging.getLogger(__name__)

ANCILLA = "anc"
CHARGED_EDGE = "e2"


@dataclasses.dataclass(frozen=True)
class PathComparison:
    """Values of one quantity computed along independent paths."""

    values: tuple[complex, ...]

    @property
    def discrepancy(self) -> float:
        """Largest absolute difference between any two paths."""
        return max(abs(a - b) for a in self.values for b in self.values)


def fusion_amplitude(rep: Irrep, h: GroupElement) -> complex:
    """Return the vacuum-channel fusion amplitude ``tr{R(h)}/|R|``."""
    return character(rep, h) / rep.dim


def _ribbon_matrix(rep: Irrep) -> np.ndarray:
    return np.diag([np.conj(character(rep, g)) for g in ELEMENTS])


def _left_conjugated(matrix: np.ndarray, h: GroupElement) -> np.ndarray:
    left = regular_matrix("left", h)
    return left @ matrix @ left.T


def fusion_amplitude_paths(rep: Irrep, h: GroupElement) -> PathComparison:
    """Compute the fusion amplitude three ways.

    The paths are the character formula, the ground-state trace
    ``(1/6) tr{W† W^h}`` with ``W^h = L_h W L_h†``, and the explicit overlap
    ``⟨1_R|T_h(v1)|1_R⟩``.
    """
    ribbon = _ribbon_matrix(rep)
    trace_path = np.trace(ribbon.conj().T @ _left_conjugated(ribbon, h)) / GROUP_ORDER
    pair = charge_pair_state(ChargeSpec.identity(rep))
    overlap = expectation(gauge_transform(h, "v1"), pair)
    return PathComparison((fusion_amplitude(rep, h), complex(trace_path), overlap))


def controlled_gauge_experiment(
    h: GroupElement,
    vertex: Vertex,
    basis: QubitBasis,
    *,
    rep: Irrep = TWO_DIM,
) -> tuple[float, float]:
    """Interfere ``T_h(vertex)`` against the identity through an ancilla qubit.

    The pair ``|1_R;(v1, v3)⟩`` is joined by an ancilla in ``|+x⟩`` on site
    ``"anc"``, ``T_h(vertex)`` is applied when the ancilla is ``|1⟩``, and the
    ancilla is read in the requested basis.

    Returns
    -------
    tuple[float, float]
        ``(P_plus, P_minus)``; their difference is ``Re F`` in the x basis
        and ``Im F`` in the y basis.

    """
    ancilla = StateVector.single_site(ANCILLA, [1 / math.sqrt(2), 1 / math.sqrt(2)])
    state = tensor([charge_pair_state(ChargeSpec.identity(rep)), ancilla])
    evolved = apply_local(controlled(gauge_transform(h, vertex), ANCILLA), state)
    outcome = qubit_basis_probabilities(reduced_density(evolved, ANCILLA), basis)
    logger.debug(
        "controlled gauge experiment",
        extra={"element": h.token, "vertex": vertex, "basis": basis},
    )
    return outcome


def site_label_distribution(state: StateVector, edge: str) -> dict[GroupElement, float]:
    """Probability of each group label on ``edge``."""
    tensor_probabilities = np.abs(state.as_tensor()) ** 2
    axis = state.register.position(edge)
    others = tuple(i for i in range(tensor_probabilities.ndim) if i != axis)
    marginal = tensor_probabilities.sum(axis=others)
    return {g: float(marginal[g.index]) for g in ELEMENTS}


def braided_pair(h: GroupElement, rep: Irrep = TWO_DIM) -> StateVector:
    """Return ``T_h(v1) |1_R;(v1, v3)⟩``, the pair ``|R(h)⟩``."""
    pair = charge_pair_state(ChargeSpec.identity(rep))
    return apply_local(gauge_transform(h, "v1"), pair)


def w_expectation_after(h: GroupElement) -> float:
    """Return ``⟨R2(h)| W_{R2}(e2) |R2(h)⟩``."""
    ribbon = ribbon_operator(TWO_DIM, CHARGED_EDGE)
    return float(expectation(ribbon, braided_pair(h)).real)


def w_expectation_paths(h: GroupElement) -> PathComparison:
    """Compare the trace formula ``(1/6) tr{W² W^{h⁻¹}}`` with the state value."""
    ribbon = _ribbon_matrix(TWO_DIM)
    conjugated = _left_conjugated(ribbon, inverse(h))
    trace = np.trace(ribbon @ ribbon @ conjugated) / GROUP_ORDER
    return PathComparison((complex(trace.real), complex(w_expectation_after(h))))


@functools.cache
def _q_projector_cached(reps: tuple[Irrep, ...]) -> np.ndarray:
    total = sum(
        functools.reduce(np.kron, (rep.matrix(g) for rep in reps)) for g in ELEMENTS
    )
    projector = np.asarray(total, dtype=complex) / GROUP_ORDER
    projector.setflags(write=False)
    return projector


def q_projector(first: Irrep, second: Irrep, third: Irrep) -> np.ndarray:
    """Return ``Q = (1/|G|) Σ_g R1(g) ⊗ R2(g) ⊗ R3(g)``.

    ``Q`` projects onto the trivial-irrep subspace of the triple product, so
    its rank counts vacuum fusion channels.
    """
    return np.array(_q_projector_cached((first, second, third)))


def q_rank(projector: np.ndarray) -> int:
    """Rank of a projector, read from its trace."""
    return round(float(np.trace(projector).real))


def three_j_basis(first: Irrep, second: Irrep, third: Irrep) -> np.ndarray:
    """Orthonormal columns spanning the invariant subspace of the triple product."""
    projector = q_projector(first, second, third)
    if q_rank(projector) == 0:
        return np.zeros((projector.shape[0], 0), dtype=complex)
    return linalg.orth(projector)


def _default_probe_matrix(
    rep: Irrep, h: GroupElement, matrix: np.ndarray | None
) -> np.ndarray:
    return rep.matrix(h) if matrix is None else np.asarray(matrix, dtype=complex)


def fusion_probe(
    rep: Irrep,
    probe: Irrep,
    h: GroupElement,
    matrix: np.ndarray | None = None,
) -> float:
    """Return ``⟨M_R| W_{R′} |M_R⟩`` from Q-matrix components.

    ``M`` defaults to ``R(h)``, the pair after braiding ``h``. The value is
    ``Σ conj(M_ab) M_de Q_{acd,bce}`` with ``Q`` built from
    ``(R, R′*, R*)``, and vanishes whenever ``R* ⊗ R`` lacks ``R′``.
    """
    charge = _default_probe_matrix(rep, h, matrix)
    projector = q_projector(rep, probe.dual(), rep.dual())
    n, m = rep.dim, probe.dim
    components = projector.reshape(n, m, n, n, m, n)
    return float(np.einsum("ab,de,acdbce->", charge.conj(), charge, components).real)


def fusion_probe_oracle(
    rep: Irrep,
    probe: Irrep,
    h: GroupElement,
    matrix: np.ndarray | None = None,
) -> float:
    """Evaluate the same expectation directly on the plaquette state."""
    charge = _default_probe_matrix(rep, h, matrix)
    pair = charge_pair_state(ChargeSpec(rep, charge))
    probed = apply_local(ribbon_operator(probe, CHARGED_EDGE), pair)
    return float(inner(pair, probed).real)


def fusion_probe_paths(
    rep: Irrep,
    probe: Irrep,
    h: GroupElement,
    matrix: np.ndarray | None = None,
) -> PathComparison:
    """Q-matrix value against the state-vector oracle."""
    return PathComparison(
        (
            complex(fusion_probe(rep, probe, h, matrix)),
            complex(fusion_probe_oracle(rep, probe, h, matrix)),
        )
    )


def matrix_unit_sweep(rep: Irrep) -> tuple[np.ndarray, ...]:
    """Charge matrices ``√|R| E_ab`` for every matrix unit."""
    scale = math.sqrt(rep.dim)
    units = []
    for a in range(rep.dim):
        for b in range(rep.dim):
            unit = np.zeros((rep.dim, rep.dim), dtype=complex)
            unit[a, b] = scale
            units.append(unit)
    return tuple(units)


def random_charge_matrix(rep: Irrep, rng: np.random.Generator) -> np.ndarray:
    """Draw a Gaussian charge matrix rescaled to ``Σ|M|² = |R|``."""
    shape = (rep.dim, rep.dim)
    raw = rng.normal(size=shape) + 1j * rng.normal(size=shape)
    return raw * math.sqrt(rep.dim) / np.linalg.norm(raw)
