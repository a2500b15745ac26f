"""Measurement statistics and reductions of ``StateVector`` values."""

from __future__ import annotations

import math
import typing as typ

import numpy as np

from .errors import NormalizationError, RegisterError
from .hilbert import NORM_TOLERANCE, QuditRegister, StateVector

if typ.TYPE_CHECKING:
    import collections.abc as cabc

type QubitBasis = typ.Literal["x", "y"]

_SQRT_HALF = 1.0 / math.sqrt(2.0)
_QUBIT_PLUS: dict[str, np.ndarray] = {
    "x": np.array([_SQRT_HALF, _SQRT_HALF], dtype=complex),
    "y": np.array([_SQRT_HALF, 1j * _SQRT_HALF], dtype=complex),
}
_QUBIT_MINUS: dict[str, np.ndarray] = {
    "x": np.array([_SQRT_HALF, -_SQRT_HALF], dtype=complex),
    "y": np.array([_SQRT_HALF, -1j * _SQRT_HALF], dtype=complex),
}


def _require_normalized(state: StateVector) -> None:
    if not state.is_normalized():
        msg = f"state has norm {state.norm():.12g}; normalize before measuring"
        raise NormalizationError(msg)


def _axes(state: StateVector, sites: cabc.Sequence[str]) -> list[int]:
    axes = [state.register.position(site) for site in sites]
    if len(set(axes)) != len(axes):
        msg = f"repeated site in {tuple(sites)}"
        raise RegisterError(msg)
    return axes


def joint_distribution(state: StateVector, sites: cabc.Sequence[str]) -> np.ndarray:
    """Born probabilities of the listed sites, one array axis per site.

    Raises
    ------
    NormalizationError
        If the state is not normalized.

    """  # noqa: DOC502 -- raised by the shared normalization guard.
    _require_normalized(state)
    axes = _axes(state, sites)
    probabilities = np.abs(state.as_tensor()) ** 2
    others = tuple(i for i in range(len(state.register.dims)) if i not in axes)
    marginal = probabilities.sum(axis=others)
    kept = sorted(axes)
    return np.transpose(marginal, [kept.index(axis) for axis in axes])


def site_distribution(state: StateVector, site: str) -> np.ndarray:
    """Marginal Born probabilities of one site."""
    return joint_distribution(state, [site])


def reduced_density_sites(
    state: StateVector, sites: cabc.Sequence[str]
) -> np.ndarray:
    """Reduced density matrix of ``sites`` with the rest traced out.

    The matrix is indexed row-major over ``sites`` in the order given.

    Raises
    ------
    NormalizationError
        If the state is not normalized.

    """  # noqa: DOC502 -- raised by the shared normalization guard.
    _require_normalized(state)
    axes = _axes(state, sites)
    kept_dim = math.prod(state.register.dims[a] for a in axes)
    moved = np.moveaxis(state.as_tensor(), axes, list(range(len(axes))))
    flat = moved.reshape(kept_dim, -1)
    return flat @ flat.conj().T


def reduced_density(state: StateVector, site: str) -> np.ndarray:
    """Reduced density matrix of a single site."""
    return reduced_density_sites(state, [site])


def permute_sites(state: StateVector, order: cabc.Sequence[str]) -> StateVector:
    """Reorder the register so its sites appear in ``order``.

    Raises
    ------
    RegisterError
        If ``order`` is not a permutation of the register labels.

    """
    if sorted(order) != sorted(state.register.labels):
        msg = f"{tuple(order)} is not a permutation of {state.register.labels}"
        raise RegisterError(msg)
    axes = [state.register.position(site) for site in order]
    register = QuditRegister(
        tuple(state.register.dims[a] for a in axes), tuple(order)
    )
    amplitudes = np.transpose(state.as_tensor(), axes).reshape(-1)
    return StateVector(register, amplitudes, normalized=state.normalized)


def relabel_sites(state: StateVector, labels: cabc.Sequence[str]) -> StateVector:
    """Rename the sites positionally, keeping amplitudes in place."""
    register = QuditRegister(state.register.dims, tuple(labels))
    return StateVector(register, state.amplitudes, normalized=state.normalized)


def qubit_basis_probabilities(
    density: np.ndarray, basis: QubitBasis
) -> tuple[float, float]:
    """Return ``(P_plus, P_minus)`` for a single-qubit density matrix.

    The bases are ``(|0⟩ ± |1⟩)/√2`` for ``"x"`` and ``(|0⟩ ± i|1⟩)/√2``
    for ``"y"``.

    Raises
    ------
    ValueError
        If ``basis`` is unknown or ``density`` is not 2x2.

    """
    if basis not in _QUBIT_PLUS:
        msg = f"basis must be 'x' or 'y', got {basis!r}"
        raise ValueError(msg)
    if density.shape != (2, 2):
        msg = f"expected a qubit density matrix, got shape {density.shape}"
        raise ValueError(msg)
    plus, minus = _QUBIT_PLUS[basis], _QUBIT_MINUS[basis]
    return (
        float(np.real(plus.conj() @ density @ plus)),
        float(np.real(minus.conj() @ density @ minus)),
    )


def ghz_basis_probabilities(density: np.ndarray, qubits: int) -> tuple[float, float]:
    """Return ``(P_plus, P_minus)`` in the ``(|0…0⟩ ± |1…1⟩)/√2`` basis."""
    size = 2**qubits
    plus = np.zeros(size, dtype=complex)
    plus[0] = plus[-1] = _SQRT_HALF
    minus = plus.copy()
    minus[-1] = -_SQRT_HALF
    return (
        float(np.real(plus.conj() @ density @ plus)),
        float(np.real(minus.conj() @ density @ minus)),
    )


def fidelity(a: StateVector, b: StateVector) -> float:
    """Squared overlap of the normalized directions of ``a`` and ``b``.

    Raises
    ------
    NormalizationError
        If either state is the zero vector.
    RegisterError
        If the registers have different dimensions.

    """
    norm_a, norm_b = a.norm(), b.norm()
    if norm_a < NORM_TOLERANCE or norm_b < NORM_TOLERANCE:
        msg = "fidelity is undefined for the zero vector"
        raise NormalizationError(msg)
    if a.register.dims != b.register.dims:
        msg = f"dimension mismatch: {a.register.dims} vs {b.register.dims}"
        raise RegisterError(msg)
    overlap = np.vdot(a.amplitudes, b.amplitudes)
    return float(abs(overlap) ** 2 / (norm_a**2 * norm_b**2))
