"""Rail encodings between logical registers and Fock states.

A logical site of dimension ``d`` is carried by one photon spread over
``d`` rails named ``<site>0 … <site>{d-1}``; level ``k`` is the photon in
rail ``k``. Qubits use two rails and qutrits three. Decoding post-selects
on one photon per block and an empty remainder, and returns an
unnormalized ``StateVector`` whose squared norm is the success
probability. Rejected occupations are dropped, never raised.
"""

from __future__ import annotations

import dataclasses
import typing as typ

import numpy as np

from .errors import RegisterError
from .hilbert import QuditRegister, StateVector
from .optics import AMPLITUDE_CUTOFF, FockVector, ModeSet

if typ.TYPE_CHECKING:
    import collections.abc as cabc

    from .optics import Occupation


@dataclasses.dataclass(frozen=True)
class RailLayout:
    """Logical sites and the rails that carry them, in register order."""

    blocks: tuple[tuple[str, tuple[str, ...]], ...]

    @classmethod
    def for_register(cls, register: QuditRegister) -> RailLayout:
        """One rail per level, named after the site."""
        return cls(
            tuple(
                (label, tuple(f"{label}{k}" for k in range(dim)))
                for dim, label in zip(register.dims, register.labels, strict=True)
            )
        )

    @property
    def register(self) -> QuditRegister:
        """The logical register the layout encodes."""
        return QuditRegister(
            tuple(len(rails) for _, rails in self.blocks),
            tuple(site for site, _ in self.blocks),
        )

    @property
    def mode_labels(self) -> tuple[str, ...]:
        """Every rail, block by block."""
        return tuple(rail for _, rails in self.blocks for rail in rails)

    def rails(self, site: str) -> tuple[str, ...]:
        """Rails of one logical site.

        Raises
        ------
        RegisterError
            If the site is not in the layout.

        """
        for label, rails in self.blocks:
            if label == site:
                return rails
        msg = f"site '{site}' has no rails in this layout"
        raise RegisterError(msg)

    def mode_set(self, extra: cabc.Iterable[str] = ()) -> ModeSet:
        """Modes for one photon per block plus empty ``extra`` modes."""
        photons = len(self.blocks)
        return ModeSet(self.mode_labels + tuple(extra), photons, photons)


@dataclasses.dataclass(frozen=True)
class PostSelectionPattern:
    """Accept occupations with one photon per block and none in ``vacuum``."""

    blocks: tuple[tuple[str, ...], ...]
    vacuum: tuple[str, ...] = ()

    @classmethod
    def for_layout(
        cls, layout: RailLayout, modes: ModeSet | None = None
    ) -> PostSelectionPattern:
        """Layout blocks, with every other mode of ``modes`` required empty."""
        rails = set(layout.mode_labels)
        labels = () if modes is None else modes.labels
        vacuum = tuple(m for m in labels if m not in rails)
        return cls(tuple(block for _, block in layout.blocks), vacuum)

    def accepts(self, occupation: Occupation, modes: ModeSet) -> bool:
        """Whether a basis occupation passes."""
        for block in self.blocks:
            if sum(occupation[i] for i in modes.indices(block)) != 1:
                return False
        return all(occupation[i] == 0 for i in modes.indices(self.vacuum))

    def probability(self, state: FockVector) -> float:
        """Weight of the accepted occupations."""
        return float(
            sum(
                abs(amplitude) ** 2
                for occupation, amplitude in state.amplitudes.items()
                if self.accepts(occupation, state.modes)
            )
        )


def decode_occupation(occupation: cabc.Sequence[int]) -> int | None:
    """Level carried by one block, or ``None`` unless it holds a single photon."""
    if sum(occupation) != 1:
        return None
    return list(occupation).index(1)


def encode_logical(
    state: StateVector, layout: RailLayout, extra: cabc.Iterable[str] = ()
) -> FockVector:
    """Rail-encode a logical state; ``extra`` modes start empty.

    Raises
    ------
    RegisterError
        If the layout does not match the state's register.

    """
    if layout.register != state.register:
        msg = f"layout register {layout.register} does not match {state.register}"
        raise RegisterError(msg)
    modes = layout.mode_set(extra)
    offsets = np.cumsum((0, *state.register.dims[:-1]))
    amplitudes: dict[Occupation, complex] = {}
    for flat in np.flatnonzero(np.abs(state.amplitudes) >= AMPLITUDE_CUTOFF):
        levels = np.unravel_index(flat, state.register.dims)
        occupation = [0] * len(modes)
        for offset, level in zip(offsets, levels, strict=True):
            occupation[int(offset + level)] = 1
        amplitudes[tuple(occupation)] = complex(state.amplitudes[flat])
    return FockVector(modes, amplitudes)


def decode_logical(
    state: FockVector,
    layout: RailLayout,
    pattern: PostSelectionPattern | None = None,
) -> StateVector:
    """Project onto the accepted occupations and read the logical amplitudes.

    ``pattern`` defaults to one photon per layout block with every other
    mode of ``state`` empty.
    """
    if pattern is None:
        pattern = PostSelectionPattern.for_layout(layout, state.modes)
    register = layout.register
    block_indices = [state.modes.indices(rails) for _, rails in layout.blocks]
    amplitudes = np.zeros(register.total_dim, dtype=complex)
    for occupation, amplitude in state.amplitudes.items():
        if not pattern.accepts(occupation, state.modes):
            continue
        levels = [
            decode_occupation([occupation[i] for i in idx]) for idx in block_indices
        ]
        if any(level is None for level in levels):
            continue
        amplitudes[register.flat_index(typ.cast("list[int]", levels))] += amplitude
    return StateVector(register, amplitudes)


@dataclasses.dataclass(frozen=True, eq=False)
class PostSelection:
    """Outcome of post-selecting a Fock state onto a logical register."""

    probability: float
    state: StateVector | None


def postselect(
    state: FockVector,
    layout: RailLayout,
    pattern: PostSelectionPattern | None = None,
) -> PostSelection:
    """Success probability and normalized conditional logical state."""
    decoded = decode_logical(state, layout, pattern)
    probability = decoded.norm() ** 2
    if probability < AMPLITUDE_CUTOFF:
        return PostSelection(0.0, None)
    return PostSelection(probability, decoded.normalized_copy())


def _single_block(amplitudes: cabc.Sequence[complex], label: str) -> FockVector:
    logical = StateVector.single_site(label, amplitudes)
    return encode_logical(logical, RailLayout.for_register(logical.register))


def dualrail_encode(amplitudes: cabc.Sequence[complex], label: str = "q") -> FockVector:
    """Qubit amplitudes on rails ``<label>0``, ``<label>1``.

    Raises
    ------
    RegisterError
        If two amplitudes are not given.

    """
    if len(amplitudes) != 2:
        msg = f"a dual-rail qubit takes 2 amplitudes, got {len(amplitudes)}"
        raise RegisterError(msg)
    return _single_block(amplitudes, label)


def trirail_encode(amplitudes: cabc.Sequence[complex], label: str = "q") -> FockVector:
    """Qutrit amplitudes on rails ``<label>0`` to ``<label>2``.

    Raises
    ------
    RegisterError
        If three amplitudes are not given.

    """
    if len(amplitudes) != 3:
        msg = f"a tri-rail qutrit takes 3 amplitudes, got {len(amplitudes)}"
        raise RegisterError(msg)
    return _single_block(amplitudes, label)


def rail_decode(state: FockVector, label: str = "q") -> StateVector | None:
    """Normalized logical state of a single rail block, or ``None`` on failure."""
    layout = RailLayout(((label, state.modes.labels),))
    return postselect(state, layout).state
