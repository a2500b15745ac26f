"""Exception hierarchy for the interferometry simulator.

Every domain error derives from ``AnyonSimulationError`` and also from
``ValueError`` so callers that only know the builtin type keep working.
Post-selection failures are not errors; they surface as zero success
probabilities or ``None`` decodes.
"""

from __future__ import annotations


class AnyonSimulationError(Exception):
    """Base class for simulator errors."""


class RegisterError(AnyonSimulationError, ValueError):
    """A register, site label or operator dimension is inconsistent."""


class NormalizationError(AnyonSimulationError, ValueError):
    """A state or charge matrix does not carry the required norm."""


class UnsupportedVertexError(AnyonSimulationError, ValueError):
    """An encoded gate was requested at a vertex the encoding cannot realize."""


class TruncationOverflowError(AnyonSimulationError, ValueError):
    """Fock evolution would populate occupations beyond the declared cutoff."""


class CircuitParseError(AnyonSimulationError, ValueError):
    """A serialized circuit or gate sequence is malformed.

    Parameters
    ----------
    message : str
        Human readable description of the defect.
    index : int | None
        Position of the offending element, when one can be identified.
    field : str | None
        Name of the offending field, when one can be identified.

    """

    def __init__(
        self, message: str, *, index: int | None = None, field: str | None = None
    ) -> None:
        location = []
        if index is not None:
            location.append(f"element {index}")
        if field is not None:
            location.append(f"field '{field}'")
        prefix = f"{', '.join(location)}: " if location else ""
        super().__init__(f"{prefix}{message}")
        self.index = index
        self.field = field
