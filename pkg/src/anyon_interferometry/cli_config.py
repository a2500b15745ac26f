"""Validated configuration for command-line experiment runs.

This module provides ``ExperimentConfig``, the frozen value handed to every
experiment command, its ``from_kwargs`` factory that turns raw flag values
into parsed domain types, and ``VALID_CONFIG_KWARGS``.
"""

from __future__ import annotations

import dataclasses
import inspect
import pathlib
import typing as typ

from .group_core import ELEMENTS, GroupElement, parse_element
from .optics_cnot import CNOT_MODELS
from .plaquette import parse_vertex

if typ.TYPE_CHECKING:
    from .hilbert_measure import QubitBasis
    from .plaquette import Vertex

type Layer = typ.Literal["abstract", "encoded", "photonic"]

EXPERIMENT_NAMES: tuple[str, ...] = ("fusion", "probe", "optics", "equivalence")
"""Experiments in the order ``--experiment all`` runs them."""

LAYERS: tuple[Layer, ...] = ("abstract", "encoded", "photonic")
BASES: tuple[QubitBasis, ...] = ("x", "y")
LOG_LEVELS: tuple[str, ...] = ("DEBUG", "INFO", "WARNING", "ERROR")

ALGEBRAIC_TOLERANCE = 1e-10
"""Default tolerance for exact spin-lattice and encoded quantities."""

PHOTONIC_TOLERANCE = 1e-6
"""Default tolerance for quantities computed from truncated Fock states."""

DEFAULT_LAMBDA = 0.1
DEFAULT_N_MAX = 3


def _layer_tolerance(layer: Layer) -> float:
    return PHOTONIC_TOLERANCE if layer == "photonic" else ALGEBRAIC_TOLERANCE


@dataclasses.dataclass(frozen=True)
class ExperimentConfig:
    """Immutable parameters of one command-line invocation.

    Parameters
    ----------
    experiment : str
        One of ``fusion``, ``probe``, ``optics``, ``equivalence`` or ``all``.
    layer : {"abstract", "encoded", "photonic"}
        Layer the fusion and probe experiments run on.
    elements : tuple[GroupElement, ...]
        Gauge elements to sweep.
    vertex : {"v1", "v2", "v3"}
        Vertex of the gauge transformation.
    basis : {"x", "y"}
        Ancilla measurement basis.
    strength : float
        Down-conversion amplitude ``λ``.
    n_max : int
        Largest pair number kept per source.
    tolerance : float
        Tolerance for exact quantities.
    photonic_tolerance : float
        Tolerance for truncated photonic quantities.
    seed : int
        Seed for the random charge matrices of the probe sweep.
    circuit : pathlib.Path | None
        Optional preparation circuit description.
    output : pathlib.Path | None
        Optional JSON-lines report destination.
    jobs : int
        Experiments evaluated concurrently.
    run_id : str | None
        Fixed run identifier, or ``None`` to generate one.
    cnot_model : str
        CNOT construction used by photonic runs.
    log_level : str
        Level of the package logger.

    Raises
    ------
    ValueError
        If a name is unknown, a number is out of range, or the layer cannot
        realize the requested vertex, basis or element.

    """

    experiment: str = "all"
    layer: Layer = "abstract"
    elements: tuple[GroupElement, ...] = ELEMENTS
    vertex: Vertex = "v1"
    basis: QubitBasis = "x"
    strength: float = DEFAULT_LAMBDA
    n_max: int = DEFAULT_N_MAX
    tolerance: float = ALGEBRAIC_TOLERANCE
    photonic_tolerance: float = PHOTONIC_TOLERANCE
    seed: int = 0
    circuit: pathlib.Path | None = None
    output: pathlib.Path | None = None
    jobs: int = 1
    run_id: str | None = None
    cnot_model: str = "logical"
    log_level: str = "WARNING"

    def __post_init__(self) -> None:
        """Validate the configuration after initialization.

        Raises
        ------
        ValueError
            If any parameter is invalid.

        """  # noqa: DOC502 -- raised by the _validate_* helpers.
        self._validate_names()
        self._validate_ranges()
        self._validate_layer_support()

    def _validate_names(self) -> None:
        choices = {
            "experiment": (self.experiment, (*EXPERIMENT_NAMES, "all")),
            "layer": (self.layer, LAYERS),
            "basis": (self.basis, BASES),
            "cnot_model": (self.cnot_model, tuple(CNOT_MODELS)),
            "log_level": (self.log_level, LOG_LEVELS),
        }
        for field, (value, allowed) in choices.items():
            if value not in allowed:
                msg = f"{field} must be one of {', '.join(allowed)}, got '{value}'"
                raise ValueError(msg)
        parse_vertex(self.vertex)
        if not self.elements:
            msg = "at least one group element is required"
            raise ValueError(msg)

    def _validate_ranges(self) -> None:
        if not 0.0 < self.strength < 1.0:
            msg = f"lambda must lie strictly between 0 and 1, got {self.strength}"
            raise ValueError(msg)
        if self.n_max < 1:
            msg = f"n_max must be at least 1, got {self.n_max}"
            raise ValueError(msg)
        if self.tolerance <= 0 or self.photonic_tolerance <= 0:
            msg = "tolerance must be positive"
            raise ValueError(msg)
        if self.jobs < 1:
            msg = f"jobs must be at least 1, got {self.jobs}"
            raise ValueError(msg)

    def _validate_layer_support(self) -> None:
        if self.layer == "abstract":
            return
        if self.vertex != "v1":
            msg = f"the {self.layer} layer operates at v1 only, got {self.vertex}"
            raise ValueError(msg)
        if self.layer == "photonic" and self.basis != "x":
            msg = "the photonic layer reads the ancillas in the x basis only"
            raise ValueError(msg)

    @staticmethod
    def _resolve_elements(element: str | None) -> tuple[GroupElement, ...]:
        """Parse ``element``, sweeping all six elements for ``None`` or ``"all"``.

        Raises
        ------
        ValueError
            If ``element`` names no group element.

        """  # noqa: DOC502 -- raised by parse_element.
        if element is None or element == "all":
            return ELEMENTS
        return (parse_element(element),)

    # @CodeScene(disable:"Excess Number of Function Arguments")
    @classmethod
    def from_kwargs(  # noqa: PLR0913 -- mirrors the command-line flags one to one.
        cls,
        *,
        experiment: str = "all",
        layer: str = "abstract",
        element: str | None = None,
        vertex: str = "v1",
        basis: str = "x",
        strength: float = DEFAULT_LAMBDA,
        n_max: int = DEFAULT_N_MAX,
        tolerance: float | None = None,
        seed: int = 0,
        circuit: str | pathlib.Path | None = None,
        output: str | pathlib.Path | None = None,
        jobs: int = 1,
        run_id: str | None = None,
        cnot_model: str = "logical",
        log_level: str = "WARNING",
    ) -> ExperimentConfig:
        """Create a configuration from raw flag values.

        An explicit ``tolerance`` applies to every check. Without one, exact
        quantities use the layer's default (``1e-10`` for the abstract and
        encoded layers, ``1e-6`` for the photonic layer) and truncated
        photonic quantities use ``1e-6``.

        Returns
        -------
        ExperimentConfig
            A new validated configuration.

        Raises
        ------
        ValueError
            If any value is invalid.

        """  # noqa: DOC502 -- raised by __post_init__ and _resolve_elements.
        resolved_layer = typ.cast("Layer", layer)
        return cls(
            experiment=experiment,
            layer=resolved_layer,
            elements=cls._resolve_elements(element),
            vertex=typ.cast("Vertex", vertex),
            basis=typ.cast("QubitBasis", basis),
            strength=strength,
            n_max=n_max,
            tolerance=(
                _layer_tolerance(resolved_layer) if tolerance is None else tolerance
            ),
            photonic_tolerance=PHOTONIC_TOLERANCE if tolerance is None else tolerance,
            seed=seed,
            circuit=None if circuit is None else pathlib.Path(circuit),
            output=None if output is None else pathlib.Path(output),
            jobs=jobs,
            run_id=run_id,
            cnot_model=cnot_model,
            log_level=log_level.upper(),
        )

    @property
    def experiments(self) -> tuple[str, ...]:
        """Experiment names this configuration runs, in report order."""
        if self.experiment == "all":
            return EXPERIMENT_NAMES
        return (self.experiment,)

    def parameters(self) -> dict[str, object]:
        """Flag values echoed into every report record."""
        return {"layer": self.layer, "vertex": self.vertex, "basis": self.basis}


VALID_CONFIG_KWARGS = frozenset(
    inspect.signature(ExperimentConfig.from_kwargs).parameters
)
"""Keyword names accepted by ``ExperimentConfig.from_kwargs``."""
