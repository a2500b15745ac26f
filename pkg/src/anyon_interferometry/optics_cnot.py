"""Post-selected CNOT models and the photon-transfer diagnostic.

Two models realize a CNOT between rail blocks that swaps two target rails
when the control photon sits in ``control_level``:

``logical``
    a single ``LogicalCnot`` element, exact on the one-photon-per-block
    subspace;
``photonic``
    the coincidence-basis linear-optical construction. The target pair is
    sandwiched between ``π/2`` phases and balanced splitters; the active
    control rail meets the first target rail on a ``1/3`` splitter, and every
    other control or target rail loses amplitude on its own ``1/3`` splitter
    into a fresh vacuum mode. On accepted runs it acts as ``-1/3`` times the
    CNOT, so each gate succeeds with probability ``1/9``.

Reusing one control block for several photonic gates lets photons hop
between target blocks while every block still ends with one photon;
``photon_transfer_counterexample`` reproduces that failure mode.
"""

from __future__ import annotations

import dataclasses
import itertools
import logging
import math
import typing as typ

from .hilbert import QuditRegister, StateVector
from .optics import FockVector
from .optics_circuit import OpticalCircuit
from .optics_codecs import (
    PostSelectionPattern,
    RailLayout,
    encode_logical,
    postselect,
)
from .optics_elements import BeamSplitter, LogicalCnot, PhaseShift

if typ.TYPE_CHECKING:
    import collections.abc as cabc

    from ._protocols import _CnotModelLike, _ElementLike
    from .optics_codecs import PostSelection

logger = logging.getLogger(__name__)

NOMINAL_CNOT_SUCCESS = 1.0 / 9.0
"""Success probability of one photonic CNOT on valid inputs."""

BALANCED = 0.5
LOSSY = 1.0 / 3.0


@dataclasses.dataclass(frozen=True)
class CnotRequest:
    """Rails of one CNOT: swap target ``levels`` when control is ``control_level``.

    Raises
    ------
    ValueError
        If a level lies outside its block or the blocks share rails.

    """

    control: tuple[str, ...]
    target: tuple[str, ...]
    control_level: int = 1
    levels: tuple[int, int] = (0, 1)

    def __post_init__(self) -> None:
        """Validate the levels against the blocks."""
        object.__setattr__(self, "levels", tuple(self.levels))
        if set(self.control) & set(self.target):
            msg = f"control {self.control} and target {self.target} share rails"
            raise ValueError(msg)
        fits_control = 0 <= self.control_level < len(self.control)
        first, second = self.levels
        target_range = set(range(len(self.target)))
        fits_target = first != second and {first, second} <= target_range
        if not (fits_control and fits_target):
            msg = (
                f"levels {self.control_level}, {self.levels} do not fit "
                f"{self.control}, {self.target}"
            )
            raise ValueError(msg)


@dataclasses.dataclass(frozen=True)
class CnotFragment:
    """Elements of one CNOT and the vacuum modes it introduces."""

    elements: tuple[_ElementLike, ...]
    vacuum_modes: tuple[str, ...] = ()


@dataclasses.dataclass(frozen=True)
class LogicalCnotModel:
    """Ideal post-selected CNOT."""

    name: str = "logical"

    def fragment(  # noqa: PLR6301 -- part of the model protocol.
        self,
        request: CnotRequest,
        fresh_mode: cabc.Callable[[], str],  # noqa: ARG002 -- needs no vacuum modes.
    ) -> CnotFragment:
        """One ``LogicalCnot`` element."""
        return CnotFragment((
            LogicalCnot(
                request.control, request.target, request.control_level, request.levels
            ),
        ))


@dataclasses.dataclass(frozen=True)
class PhotonicCnotModel:
    """Coincidence-basis linear-optical CNOT with fresh vacuum modes."""

    name: str = "photonic"

    def fragment(  # noqa: PLR6301 -- part of the model protocol.
        self, request: CnotRequest, fresh_mode: cabc.Callable[[], str]
    ) -> CnotFragment:
        """Beam splitters and phases realizing the requested gate."""
        first, second = (request.target[level] for level in request.levels)
        active = request.control[request.control_level]
        lossy_rails = [rail for rail in request.control if rail != active]
        lossy_rails.append(second)
        lossy_rails.extend(r for r in request.target if r not in {first, second})
        vacuum = tuple(fresh_mode() for _ in lossy_rails)
        elements: list[_ElementLike] = [
            PhaseShift(first, math.pi / 2),
            BeamSplitter(first, second, BALANCED),
            BeamSplitter(active, first, LOSSY),
        ]
        elements.extend(
            BeamSplitter(rail, sink, LOSSY)
            for rail, sink in zip(lossy_rails, vacuum, strict=True)
        )
        elements.extend((
            PhaseShift(second, math.pi),
            BeamSplitter(first, second, BALANCED),
            PhaseShift(first, math.pi / 2),
        ))
        return CnotFragment(tuple(elements), vacuum)


CNOT_MODELS: dict[str, _CnotModelLike] = {
    "logical": LogicalCnotModel(),
    "photonic": PhotonicCnotModel(),
}


def cnot_model(name: str) -> _CnotModelLike:
    """Look up a CNOT model by name.

    Raises
    ------
    ValueError
        If the name is unknown.

    """
    try:
        return CNOT_MODELS[name]
    except KeyError:
        msg = f"unknown CNOT model '{name}'; expected one of {sorted(CNOT_MODELS)}"
        raise ValueError(msg) from None


def vacuum_namer(prefix: str = "v") -> cabc.Callable[[], str]:
    """Return a callable producing ``v0``, ``v1``, … on successive calls."""
    counter = itertools.count()
    return lambda: f"{prefix}{next(counter)}"


def postselected_cnot(request: CnotRequest, model: _CnotModelLike) -> OpticalCircuit:
    """A single CNOT as a standalone circuit over its rails and vacuum modes."""
    fragment = model.fragment(request, vacuum_namer())
    return OpticalCircuit(
        request.control + request.target + fragment.vacuum_modes,
        fragment.elements,
        frozenset(fragment.vacuum_modes),
    )


TRUTH_TABLE_LAYOUT = RailLayout.for_register(QuditRegister((2, 2), ("c", "t")))


def cnot_truth_table(
    model: _CnotModelLike,
) -> dict[tuple[int, int], PostSelection]:
    """Post-selected output of one dual-rail CNOT for each basis input."""
    layout = TRUTH_TABLE_LAYOUT
    circuit = postselected_cnot(
        CnotRequest(layout.rails("c"), layout.rails("t")), model
    )
    table: dict[tuple[int, int], PostSelection] = {}
    for levels in itertools.product(range(2), repeat=2):
        logical = StateVector.basis(layout.register, levels)
        output = circuit.apply(encode_logical(logical, layout))
        table[levels] = postselect(output, layout)
    return table


@dataclasses.dataclass(frozen=True)
class TransferDiagnostic:
    """Result of the reused-control photon-transfer run."""

    pass_probability: float
    photon_numbers: dict[str, int]


TRANSFER_LAYOUT = RailLayout.for_register(
    QuditRegister((2, 3, 3), ("c", "q1", "q2"))
)


def photon_transfer_counterexample(
    model: _CnotModelLike | None = None,
) -> TransferDiagnostic:
    """Run two photonic CNOTs sharing control ``c`` on an invalid input.

    The control holds one photon in its active rail, ``q1`` is empty and
    ``q2`` holds two photons in the first rail of the swapped pair. The gate
    on ``q2`` acts first, then the gate on ``q1``. A photon can hop from
    ``q2`` into the control and on into ``q1``, so the per-block pattern
    accepts the run with positive probability even though no valid logical
    input was present.
    """
    model = PhotonicCnotModel() if model is None else model
    namer = vacuum_namer()
    fragments = [
        model.fragment(
            CnotRequest(TRANSFER_LAYOUT.rails("c"), TRANSFER_LAYOUT.rails(target)),
            namer,
        )
        for target in ("q2", "q1")
    ]
    vacuum = tuple(mode for fragment in fragments for mode in fragment.vacuum_modes)
    circuit = OpticalCircuit(
        TRANSFER_LAYOUT.mode_labels + vacuum,
        tuple(element for fragment in fragments for element in fragment.elements),
    )
    occupation = {"c1": 1, "q20": 2}
    photons = {
        site: sum(occupation.get(mode, 0) for mode in TRANSFER_LAYOUT.rails(site))
        for site in TRANSFER_LAYOUT.register.labels
    }
    state = FockVector.basis(TRANSFER_LAYOUT.mode_set(vacuum), occupation)
    output = circuit.apply(state)
    pattern = PostSelectionPattern.for_layout(TRANSFER_LAYOUT, output.modes)
    probability = pattern.probability(output)
    logger.info(
        "photon transfer diagnostic",
        extra={"model": model.name, "pass_probability": probability},
    )
    return TransferDiagnostic(probability, photons)
