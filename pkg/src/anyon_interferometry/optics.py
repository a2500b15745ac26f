"""Sparse Fock-space states over labelled optical modes.

A ``FockVector`` maps occupation tuples, ordered like its ``ModeSet``
labels, to complex amplitudes. The elements acting on these states live in
``optics_elements``.

Evolution never clips silently. An image that would exceed the mode set's
per-mode or total photon cap raises ``TruncationOverflowError``.
"""

from __future__ import annotations

import dataclasses
import math
import types
import typing as typ

from .errors import RegisterError, TruncationOverflowError

if typ.TYPE_CHECKING:
    import collections.abc as cabc

type Occupation = tuple[int, ...]

AMPLITUDE_CUTOFF = 1e-15


@dataclasses.dataclass(frozen=True)
class ModeSet:
    """Ordered optical mode labels with photon-number caps.

    Raises
    ------
    RegisterError
        If labels repeat.
    ValueError
        If a cap is below one.

    """

    labels: tuple[str, ...]
    max_per_mode: int
    max_total: int

    def __post_init__(self) -> None:
        """Validate labels and caps."""
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(set(self.labels)) != len(self.labels):
            msg = f"duplicate mode label in {self.labels}"
            raise RegisterError(msg)
        if self.max_per_mode < 1 or self.max_total < 1:
            msg = (
                f"photon caps must be at least 1, got per-mode {self.max_per_mode} "
                f"and total {self.max_total}"
            )
            raise ValueError(msg)

    def __len__(self) -> int:
        """Number of modes."""
        return len(self.labels)

    def index(self, label: str) -> int:
        """Position of ``label``.

        Raises
        ------
        RegisterError
            If the mode is unknown.

        """
        try:
            return self.labels.index(label)
        except ValueError:
            msg = f"unknown mode '{label}'"
            raise RegisterError(msg) from None

    def indices(self, labels: cabc.Iterable[str]) -> tuple[int, ...]:
        """Positions of several modes."""
        return tuple(self.index(label) for label in labels)

    def extended(self, labels: cabc.Iterable[str]) -> ModeSet:
        """Append the labels not yet present, keeping the caps."""
        extra = tuple(label for label in labels if label not in self.labels)
        return ModeSet(self.labels + extra, self.max_per_mode, self.max_total)

    def check(self, occupation: Occupation) -> None:
        """Reject occupations outside the caps.

        Raises
        ------
        RegisterError
            If the occupation length or a photon number is invalid.
        TruncationOverflowError
            If a cap is exceeded.

        """
        if len(occupation) != len(self.labels) or min(occupation, default=0) < 0:
            msg = f"occupation {occupation} does not fit modes {self.labels}"
            raise RegisterError(msg)
        if max(occupation, default=0) > self.max_per_mode:
            msg = (
                f"occupation {occupation} exceeds the per-mode cap of "
                f"{self.max_per_mode} photons"
            )
            raise TruncationOverflowError(msg)
        if sum(occupation) > self.max_total:
            msg = (
                f"occupation {occupation} exceeds the total cap of "
                f"{self.max_total} photons"
            )
            raise TruncationOverflowError(msg)


@dataclasses.dataclass(frozen=True, eq=False)
class FockVector:
    """Sparse superposition of occupation-number states.

    Amplitudes below ``AMPLITUDE_CUTOFF`` in magnitude are dropped on
    construction; every remaining occupation is checked against ``modes``.
    """

    modes: ModeSet
    amplitudes: cabc.Mapping[Occupation, complex]

    def __post_init__(self) -> None:
        """Prune negligible amplitudes and validate occupations."""
        kept: dict[Occupation, complex] = {}
        for occupation, amplitude in self.amplitudes.items():
            if abs(amplitude) < AMPLITUDE_CUTOFF:
                continue
            key = tuple(int(n) for n in occupation)
            self.modes.check(key)
            kept[key] = complex(amplitude)
        object.__setattr__(self, "amplitudes", types.MappingProxyType(kept))

    @classmethod
    def vacuum(cls, modes: ModeSet) -> FockVector:
        """The state with no photons."""
        return cls(modes, {(0,) * len(modes): 1.0})

    @classmethod
    def basis(cls, modes: ModeSet, occupied: cabc.Mapping[str, int]) -> FockVector:
        """A single occupation state given as ``{mode: photons}``."""
        occupation = [0] * len(modes)
        for label, photons in occupied.items():
            occupation[modes.index(label)] = photons
        return cls(modes, {tuple(occupation): 1.0})

    def norm(self) -> float:
        """Euclidean norm of the amplitudes."""
        return math.sqrt(self.probability())

    def probability(self) -> float:
        """Squared norm, the weight surviving any earlier post-selection."""
        return float(sum(abs(a) ** 2 for a in self.amplitudes.values()))

    def photon_numbers(self) -> frozenset[int]:
        """Total photon numbers present in the support."""
        return frozenset(sum(occupation) for occupation in self.amplitudes)

    def amplitude(self, occupied: cabc.Mapping[str, int]) -> complex:
        """Amplitude of the occupation given as ``{mode: photons}``."""
        occupation = [0] * len(self.modes)
        for label, photons in occupied.items():
            occupation[self.modes.index(label)] = photons
        return self.amplitudes.get(tuple(occupation), 0j)

    def with_modes(self, labels: cabc.Iterable[str]) -> FockVector:
        """Append empty modes for the labels not yet present."""
        modes = self.modes.extended(labels)
        padding = (0,) * (len(modes) - len(self.modes))
        padded = {occ + padding: a for occ, a in self.amplitudes.items()}
        return FockVector(modes, padded)

    def filtered(self, keep: cabc.Callable[[Occupation], bool]) -> FockVector:
        """Drop the terms whose occupation fails ``keep``."""
        return FockVector(
            self.modes, {o: a for o, a in self.amplitudes.items() if keep(o)}
        )

    def to_json(self) -> dict[str, object]:
        """Serialize the sparse map and the mode set."""
        return {
            "modes": list(self.modes.labels),
            "max_per_mode": self.modes.max_per_mode,
            "max_total": self.modes.max_total,
            "amplitudes": [
                {"occupation": list(o), "re": a.real, "im": a.imag}
                for o, a in sorted(self.amplitudes.items())
            ],
        }

    @classmethod
    def from_json(cls, payload: cabc.Mapping[str, typ.Any]) -> FockVector:
        """Rebuild a vector from ``to_json`` output."""
        modes = ModeSet(
            tuple(payload["modes"]),
            int(payload["max_per_mode"]),
            int(payload["max_total"]),
        )
        amplitudes = {
            tuple(item["occupation"]): complex(item["re"], item["im"])
            for item in payload["amplitudes"]
        }
        return cls(modes, amplitudes)


def fock_tensor(first: FockVector, second: FockVector) -> FockVector:
    """Product state on the concatenated modes.

    The caps of the product allow every photon of both factors in one mode.

    Raises
    ------
    RegisterError
        If the factors share a mode label.

    """
    shared = set(first.modes.labels) & set(second.modes.labels)
    if shared:
        msg = f"factors share modes {sorted(shared)}"
        raise RegisterError(msg)
    total = first.modes.max_total + second.modes.max_total
    modes = ModeSet(first.modes.labels + second.modes.labels, total, total)
    amplitudes = {
        a_occ + b_occ: a_amp * b_amp
        for a_occ, a_amp in first.amplitudes.items()
        for b_occ, b_amp in second.amplitudes.items()
    }
    return FockVector(modes, amplitudes)
