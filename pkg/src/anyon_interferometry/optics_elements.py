"""Passive optical elements and the idealized post-selected CNOT.

Beam splitters follow the symmetric convention ``a† → i√R a† + √(1-R) b†``
and ``b† → i√R b† + √(1-R) a†``; a reflectivity of zero is therefore an
exact mode swap. ``LogicalCnot`` keeps only terms with one photon in each
of its blocks.
"""

from __future__ import annotations

import collections
import dataclasses
import functools
import math
import typing as typ

import numpy as np

from .optics import FockVector

if typ.TYPE_CHECKING:
    from ._protocols import _ElementLike
    from .optics import Occupation


@functools.lru_cache(maxsize=4096)
def _beam_splitter_block(
    first: int, second: int, reflectivity: float
) -> tuple[tuple[int, complex], ...]:
    """Image of ``|first, second⟩`` as ``(photons in first mode, amplitude)`` pairs."""
    reflect = 1j * math.sqrt(reflectivity)
    transmit = math.sqrt(1.0 - reflectivity)
    total = first + second
    coefficients = np.zeros(total + 1, dtype=complex)
    for j in range(first + 1):
        from_first = math.comb(first, j) * reflect**j * transmit ** (first - j)
        for k in range(second + 1):
            from_second = math.comb(second, k) * transmit**k * reflect ** (second - k)
            coefficients[j + k] += from_first * from_second
    scale = math.sqrt(math.factorial(first) * math.factorial(second))
    image = []
    for photons, coefficient in enumerate(coefficients):
        if abs(coefficient) == 0:
            continue
        weight = math.sqrt(math.factorial(photons) * math.factorial(total - photons))
        image.append((photons, complex(coefficient) * weight / scale))
    return tuple(image)


@dataclasses.dataclass(frozen=True)
class BeamSplitter:
    """Symmetric beam splitter of reflectivity ``R`` on two modes.

    Raises
    ------
    ValueError
        If ``reflectivity`` lies outside ``[0, 1]`` or the modes coincide.

    """

    first: str
    second: str
    reflectivity: float

    def __post_init__(self) -> None:
        """Validate the reflectivity and the mode pair."""
        if not 0.0 <= self.reflectivity <= 1.0:
            msg = f"reflectivity must lie in [0, 1], got {self.reflectivity}"
            raise ValueError(msg)
        if self.first == self.second:
            msg = f"beam splitter needs two distinct modes, got {self.first!r} twice"
            raise ValueError(msg)

    @property
    def kind(self) -> str:
        """``"beam_splitter"``."""
        return "beam_splitter"

    @property
    def modes(self) -> tuple[str, ...]:
        """The two coupled modes."""
        return (self.first, self.second)

    def mode_matrix(self) -> np.ndarray:
        """Single-photon unitary on ``(first, second)``; column ``j`` is input ``j``."""
        reflect = 1j * math.sqrt(self.reflectivity)
        transmit = math.sqrt(1.0 - self.reflectivity)
        return np.array([[reflect, transmit], [transmit, reflect]])

    def apply(self, state: FockVector) -> FockVector:
        """Return the image of ``state``."""
        i, j = state.modes.indices(self.modes)
        image: collections.defaultdict[Occupation, complex] = (
            collections.defaultdict(complex)
        )
        for occupation, amplitude in state.amplitudes.items():
            pair_total = occupation[i] + occupation[j]
            for photons, coefficient in _beam_splitter_block(
                occupation[i], occupation[j], self.reflectivity
            ):
                moved = list(occupation)
                moved[i], moved[j] = photons, pair_total - photons
                image[tuple(moved)] += amplitude * coefficient
        return FockVector(state.modes, image)

    def inverse(self) -> tuple[_ElementLike, ...]:
        """``π`` phase on ``first``, the same splitter, then ``π`` on ``second``."""
        return (
            PhaseShift(self.first, math.pi),
            self,
            PhaseShift(self.second, math.pi),
        )

    def to_json(self) -> dict[str, object]:
        """Serialize as ``{kind, modes, R}``."""
        return {"kind": self.kind, "modes": list(self.modes), "R": self.reflectivity}


@dataclasses.dataclass(frozen=True)
class PhaseShift:
    """Phase ``e^{i n φ}`` on the ``n``-photon component of one mode."""

    mode: str
    angle: float

    @property
    def kind(self) -> str:
        """``"phase_shift"``."""
        return "phase_shift"

    @property
    def modes(self) -> tuple[str, ...]:
        """The shifted mode."""
        return (self.mode,)

    def mode_matrix(self) -> np.ndarray:
        """Single-photon phase as a 1x1 matrix."""
        return np.array([[np.exp(1j * self.angle)]])

    def apply(self, state: FockVector) -> FockVector:
        """Return the image of ``state``."""
        i = state.modes.index(self.mode)
        return FockVector(
            state.modes,
            {
                occupation: amplitude * np.exp(1j * self.angle * occupation[i])
                for occupation, amplitude in state.amplitudes.items()
            },
        )

    def inverse(self) -> tuple[_ElementLike, ...]:
        """The opposite phase."""
        return (PhaseShift(self.mode, -self.angle),)

    def to_json(self) -> dict[str, object]:
        """Serialize as ``{kind, modes, phase}``."""
        return {"kind": self.kind, "modes": [self.mode], "phase": self.angle}


@dataclasses.dataclass(frozen=True)
class LogicalCnot:
    """Idealized post-selected CNOT between rail-encoded blocks.

    Terms without exactly one photon in each of the control and target
    blocks are discarded. On the remaining terms the target rails
    ``levels`` are exchanged when the control photon is in rail
    ``control_level``.

    Raises
    ------
    ValueError
        If the blocks overlap or a level is out of range.

    """

    control: tuple[str, ...]
    target: tuple[str, ...]
    control_level: int
    levels: tuple[int, int]

    def __post_init__(self) -> None:
        """Validate the rail blocks and level indices."""
        object.__setattr__(self, "control", tuple(self.control))
        object.__setattr__(self, "target", tuple(self.target))
        object.__setattr__(self, "levels", tuple(self.levels))
        if set(self.control) & set(self.target):
            msg = f"control {self.control} and target {self.target} share rails"
            raise ValueError(msg)
        if not 0 <= self.control_level < len(self.control):
            msg = f"control level {self.control_level} outside {self.control}"
            raise ValueError(msg)
        first, second = self.levels
        if first == second or not {first, second} <= set(range(len(self.target))):
            msg = f"invalid target levels {self.levels} for {self.target}"
            raise ValueError(msg)

    @property
    def kind(self) -> str:
        """``"logical_cnot"``."""
        return "logical_cnot"

    @property
    def modes(self) -> tuple[str, ...]:
        """Control rails followed by target rails."""
        return self.control + self.target

    def apply(self, state: FockVector) -> FockVector:
        """Return the post-selected image of ``state``."""
        control = state.modes.indices(self.control)
        target = state.modes.indices(self.target)
        first, second = (target[level] for level in self.levels)
        active = control[self.control_level]
        image: collections.defaultdict[Occupation, complex] = (
            collections.defaultdict(complex)
        )
        for occupation, amplitude in state.amplitudes.items():
            if sum(occupation[i] for i in control) != 1:
                continue
            if sum(occupation[i] for i in target) != 1:
                continue
            moved = list(occupation)
            if occupation[active] == 1:
                moved[first], moved[second] = occupation[second], occupation[first]
            image[tuple(moved)] += amplitude
        return FockVector(state.modes, image)

    def inverse(self) -> tuple[_ElementLike, ...]:
        """The gate is its own inverse on the post-selected subspace."""
        return (self,)

    def to_json(self) -> dict[str, object]:
        """Serialize as ``{kind, control, target, control_level, levels}``."""
        return {
            "kind": self.kind,
            "control": list(self.control),
            "target": list(self.target),
            "control_level": self.control_level,
            "levels": list(self.levels),
        }


def apply_element(element: _ElementLike, state: FockVector) -> FockVector:
    """Apply one optical element.

    Raises
    ------
    TruncationOverflowError
        If the image leaves the state's photon caps.

    """  # noqa: DOC502 -- raised while building the image.
    return element.apply(state)
