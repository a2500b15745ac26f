"""Truncated parametric down-conversion sources and three-crystal heralding."""

from __future__ import annotations

import dataclasses
import functools
import logging
import math

import numpy as np

from .hilbert import QuditRegister, StateVector
from .hilbert_measure import fidelity
from .optics import FockVector, ModeSet, fock_tensor
from .optics_codecs import RailLayout, postselect

logger = logging.getLogger(__name__)

CRYSTALS = 3
HERALD_LAYOUT = RailLayout((
    ("1b", tuple(f"1b{k}" for k in range(CRYSTALS))),
    ("3b", tuple(f"3b{k}" for k in range(CRYSTALS))),
))


def _check_source(strength: float, n_max: int) -> None:
    if not 0.0 < strength < 1.0:
        msg = f"lambda must lie strictly between 0 and 1, got {strength}"
        raise ValueError(msg)
    if n_max < 1:
        msg = f"n_max must be at least 1, got {n_max}"
        raise ValueError(msg)


def spdc_state(
    strength: float, n_max: int, modes: tuple[str, str] = ("a", "b")
) -> FockVector:
    """Return ``√(1-λ²) Σ_{n≤n_max} λⁿ |n, n⟩`` without renormalizing.

    Raises
    ------
    ValueError
        If ``strength`` is not in ``(0, 1)`` or ``n_max`` is below one.

    """
    _check_source(strength, n_max)
    prefactor = math.sqrt(1.0 - strength**2)
    mode_set = ModeSet(modes, n_max, 2 * n_max)
    return FockVector(
        mode_set, {(n, n): prefactor * strength**n for n in range(n_max + 1)}
    )


def spdc_truncation_deficit(strength: float, n_max: int) -> float:
    """Probability weight of the terms above ``n_max``: ``λ^{2(n_max+1)}``.

    Raises
    ------
    ValueError
        If ``strength`` is not in ``(0, 1)`` or ``n_max`` is below one.

    """  # noqa: DOC502 -- raised by the shared argument check.
    _check_source(strength, n_max)
    return strength ** (2 * (n_max + 1))


def three_crystal_state(strength: float, n_max: int) -> FockVector:
    """Product of three sources; crystal ``k`` feeds rails ``1b{k}`` and ``3b{k}``."""
    return functools.reduce(
        fock_tensor,
        (spdc_state(strength, n_max, (f"1b{k}", f"3b{k}")) for k in range(CRYSTALS)),
    )


def maximally_entangled_qutrits() -> StateVector:
    """``(|00⟩ + |11⟩ + |22⟩)/√3`` on sites ``1b`` and ``3b``."""
    register = QuditRegister((3, 3), ("1b", "3b"))
    amplitudes = np.eye(3, dtype=complex).reshape(-1) / math.sqrt(3)
    return StateVector(register, amplitudes, normalized=True)


@dataclasses.dataclass(frozen=True, eq=False)
class HeraldResult:
    """Outcome of conditioning three sources on a single photon per qutrit.

    ``probability`` counts a pair from any of the crystals;
    ``per_crystal_probability`` is one crystal's share, ``λ²(1-λ²)³``.
    """

    probability: float
    per_crystal_probability: float
    state: StateVector | None
    fidelity: float
    truncation_deficit: float


def three_crystal_postselect(strength: float, n_max: int) -> HeraldResult:
    """Herald one photon in each tri-rail block from three truncated sources.

    Raises
    ------
    ValueError
        If ``strength`` is not in ``(0, 1)`` or ``n_max`` is below one.

    """  # noqa: DOC502 -- raised by the shared argument check.
    selection = postselect(three_crystal_state(strength, n_max), HERALD_LAYOUT)
    per_crystal_deficit = spdc_truncation_deficit(strength, n_max)
    deficit = 1.0 - (1.0 - per_crystal_deficit) ** CRYSTALS
    overlap = (
        0.0
        if selection.state is None
        else fidelity(selection.state, maximally_entangled_qutrits())
    )
    logger.debug(
        "three-crystal herald",
        extra={
            "lambda": strength,
            "n_max": n_max,
            "probability": selection.probability,
        },
    )
    return HeraldResult(
        probability=selection.probability,
        per_crystal_probability=selection.probability / CRYSTALS,
        state=selection.state,
        fidelity=overlap,
        truncation_deficit=deficit,
    )
