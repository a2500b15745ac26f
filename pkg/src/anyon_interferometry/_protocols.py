"""Structural typing protocols shared by the optics modules.

Optical circuits accept any element with this narrow surface, so the
passive elements of ``optics_elements`` and the post-selected logical CNOT can be
mixed in one circuit, and CNOT constructions can be swapped by name.
"""

from __future__ import annotations

import typing as typ

if typ.TYPE_CHECKING:
    import collections.abc as cabc

    from .optics import FockVector
    from .optics_cnot import CnotFragment, CnotRequest


class _ElementLike(typ.Protocol):
    """Surface every optical circuit element provides."""

    @property
    def kind(self) -> str:
        """Serialized element kind such as ``"beam_splitter"``."""

    @property
    def modes(self) -> tuple[str, ...]:
        """Mode labels the element touches."""

    def apply(self, state: FockVector) -> FockVector:
        """Return the image of a Fock state."""

    def inverse(self) -> tuple[_ElementLike, ...]:
        """Elements that undo this one, in application order."""

    def to_json(self) -> dict[str, object]:
        """Serialize to the circuit JSON vocabulary."""


class _CnotModelLike(typ.Protocol):
    """A named way of realizing a post-selected two-level CNOT."""

    @property
    def name(self) -> str:
        """Model name used on the command line."""

    def fragment(
        self, request: CnotRequest, fresh_mode: cabc.Callable[[], str]
    ) -> CnotFragment:
        """Build the elements of one CNOT, naming vacuum modes with ``fresh_mode``."""
