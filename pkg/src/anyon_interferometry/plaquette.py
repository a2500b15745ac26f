"""The single-triangle quantum-double model on three six-level edges.

The triangle has vertices ``v1``, ``v2``, ``v3`` and oriented edges
``e1 = [v1, v2]``, ``e2 = [v1, v3]`` and ``e3 = [v2, v3]``, each carrying a
qudit in the group basis of ``group_core``. This module builds the ground
state, vertex gauge transformations, the vertex and face projectors, the
diagonal ribbon operators and electric charge pair states.

Fusion amplitudes, the ancilla interferometer and the Q-matrix probes built
on these states live in ``plaquette_fusion``.
"""

from __future__ import annotations

import dataclasses
import functools
import itertools
import logging
import math
import typing as typ

import numpy as np

from .errors import NormalizationError, RegisterError
from .group_core import (
    ELEMENTS,
    GROUP_ORDER,
    TWO_DIM,
    GroupElement,
    Irrep,
    character,
    inverse,
    multiply,
    regular_matrix,
)
from .hilbert import LocalOperator, QuditRegister, StateVector, apply_local, expectation

if typ.TYPE_CHECKING:
    import collections.abc as cabc

logger = logging.getLogger(__name__)

type Vertex = typ.Literal["v1", "v2", "v3"]
type EdgeAction = typ.Literal["left", "right"]

EDGES: tuple[str, ...] = ("e1", "e2", "e3")
VERTICES: tuple[Vertex, ...] = ("v1", "v2", "v3")
PLAQUETTE_REGISTER = QuditRegister((GROUP_ORDER,) * 3, EDGES)
NORMALIZATION_TOLERANCE = 1e-10


@dataclasses.dataclass(frozen=True)
class PlaquetteTopology:
    """Oriented edges and the face boundary cycle of the triangle.

    ``edges`` maps each edge to its ``(tail, head)`` vertices. ``boundary``
    lists the counterclockwise face cycle starting at ``e1`` with the
    orientation sign of each edge relative to the face.
    """

    edges: cabc.Mapping[str, tuple[Vertex, Vertex]]
    boundary: tuple[tuple[str, int], ...]

    def star(self, vertex: Vertex) -> tuple[tuple[str, EdgeAction], ...]:
        """Edges meeting ``vertex`` in register order, with the action on each.

        Outgoing edges take the left action ``L_h`` and incoming edges the
        right action ``R_{h⁻¹}``.
        """
        touched: list[tuple[str, EdgeAction]] = []
        for edge in EDGES:
            tail, head = self.edges[edge]
            if tail == vertex:
                touched.append((edge, "left"))
            elif head == vertex:
                touched.append((edge, "right"))
        return tuple(touched)

    def edge_between(self, first: Vertex, second: Vertex) -> str:
        """Return the edge joining two vertices.

        Raises
        ------
        ValueError
            If the vertices coincide or are unknown.

        """
        wanted = {first, second}
        for edge, ends in self.edges.items():
            if set(ends) == wanted:
                return edge
        msg = f"no edge joins {first} and {second}"
        raise ValueError(msg)


TOPOLOGY = PlaquetteTopology(
    edges={"e1": ("v1", "v2"), "e2": ("v1", "v3"), "e3": ("v2", "v3")},
    boundary=(("e1", 1), ("e3", 1), ("e2", -1)),
)


def parse_vertex(value: str) -> Vertex:
    """Validate a vertex name.

    Raises
    ------
    ValueError
        If ``value`` is not ``v1``, ``v2`` or ``v3``.

    """
    if value not in VERTICES:
        msg = f"unknown vertex '{value}'; expected one of {', '.join(VERTICES)}"
        raise ValueError(msg)
    return typ.cast("Vertex", value)


@functools.cache
def ground_state() -> StateVector:
    """Return ``(1/6) Σ_{g,k} |k⟩₁|g⟩₂|k⁻¹g⟩₃``."""
    amplitudes = np.zeros(PLAQUETTE_REGISTER.total_dim, dtype=complex)
    for g, k in itertools.product(ELEMENTS, repeat=2):
        third = multiply(inverse(k), g)
        amplitudes[PLAQUETTE_REGISTER.flat_index((k.index, g.index, third.index))] = (
            1.0 / GROUP_ORDER
        )
    return StateVector(PLAQUETTE_REGISTER, amplitudes, normalized=True)


def _edge_matrix(h: GroupElement, action: EdgeAction) -> np.ndarray:
    if action == "left":
        return regular_matrix("left", h)
    return regular_matrix("right", inverse(h))


@functools.cache
def gauge_transform(h: GroupElement, vertex: Vertex) -> LocalOperator:
    """Return the vertex gauge transformation ``T_h(vertex)``.

    Parameters
    ----------
    h : GroupElement
        The gauge group element.
    vertex : {"v1", "v2", "v3"}
        Where the transformation acts.

    Returns
    -------
    LocalOperator
        ``L_h`` on outgoing and ``R_{h⁻¹}`` on incoming edges, as a
        permutation operator on the two touched edges in register order.

    """
    star = TOPOLOGY.star(parse_vertex(vertex))
    matrix = functools.reduce(np.kron, (_edge_matrix(h, action) for _, action in star))
    sites = tuple(edge for edge, _ in star)
    return LocalOperator(sites, (GROUP_ORDER,) * len(sites), matrix)


@functools.cache
def vertex_projector(vertex: Vertex) -> LocalOperator:
    """Return ``A(v) = (1/6) Σ_g T_g(v)``."""
    terms = [gauge_transform(g, vertex).matrix for g in ELEMENTS]
    first = gauge_transform(GroupElement.E, vertex)
    return LocalOperator(first.sites, first.dims, sum(terms) / GROUP_ORDER)


def boundary_holonomy(levels: cabc.Sequence[GroupElement]) -> GroupElement:
    """Oriented product around the face for edge values ``(e1, e2, e3)``.

    Each boundary edge contributes ``x^{-o}`` for orientation sign ``o`` and
    contributions are accumulated by left multiplication.
    """
    values = dict(zip(EDGES, levels, strict=True))
    accumulated = GroupElement.E
    for edge, sign in TOPOLOGY.boundary:
        value = values[edge]
        factor = inverse(value) if sign > 0 else value
        accumulated = multiply(factor, accumulated)
    return accumulated


@functools.cache
def face_projector() -> LocalOperator:
    """Return the diagonal flux-free projector ``B(f)`` on all three edges."""
    diagonal = np.zeros(PLAQUETTE_REGISTER.total_dim)
    for levels in itertools.product(ELEMENTS, repeat=3):
        if boundary_holonomy(levels) is GroupElement.E:
            diagonal[PLAQUETTE_REGISTER.flat_index([g.index for g in levels])] = 1.0
    flat = int(diagonal.sum())
    logger.debug("face projector built", extra={"flat_configurations": flat})
    return LocalOperator(EDGES, PLAQUETTE_REGISTER.dims, np.diag(diagonal))


def hamiltonian_expectation(state: StateVector) -> float:
    """Return ``⟨-Σ_v A(v) - B(f)⟩`` for a plaquette state."""
    total = sum(expectation(vertex_projector(v), state).real for v in VERTICES)
    return -(total + expectation(face_projector(), state).real)


def ribbon_operator(rep: Irrep, edge: str) -> LocalOperator:
    """Return ``W_R(edge) = Σ_g conj(χ_R(g)) |g⟩⟨g|``.

    Raises
    ------
    RegisterError
        If ``edge`` is not one of the plaquette edges.

    """
    if edge not in EDGES:
        msg = f"unknown edge '{edge}'"
        raise RegisterError(msg)
    diagonal = [np.conj(character(rep, g)) for g in ELEMENTS]
    return LocalOperator((edge,), (GROUP_ORDER,), np.diag(diagonal))


@dataclasses.dataclass(frozen=True, eq=False)
class ChargeSpec:
    """An electric charge pair in irrep ``irrep`` with internal matrix ``matrix``.

    ``matrix`` must satisfy ``Σ|M_ab|² = |R|``.

    Raises
    ------
    NormalizationError
        If the matrix norm is wrong.
    RegisterError
        If the matrix shape does not match the irrep dimension.

    """

    irrep: Irrep
    matrix: np.ndarray
    vertex_pair: tuple[Vertex, Vertex] = ("v1", "v3")

    def __post_init__(self) -> None:
        """Validate the charge matrix."""
        matrix = np.array(self.matrix, dtype=complex)
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)
        dim = self.irrep.dim
        if matrix.shape != (dim, dim):
            msg = f"charge matrix shape {matrix.shape} does not match |R| = {dim}"
            raise RegisterError(msg)
        weight = float(np.sum(np.abs(matrix) ** 2))
        if not math.isclose(weight, dim, abs_tol=NORMALIZATION_TOLERANCE):
            msg = f"charge matrix has Σ|M|² = {weight:.12g}, expected {dim}"
            raise NormalizationError(msg)

    @property
    def edge(self) -> str:
        """The edge joining the two charged vertices."""
        return TOPOLOGY.edge_between(*self.vertex_pair)

    @classmethod
    def identity(
        cls, rep: Irrep = TWO_DIM, vertex_pair: tuple[Vertex, Vertex] = ("v1", "v3")
    ) -> ChargeSpec:
        """The vacuum-channel pair ``M = 1``."""
        return cls(rep, np.eye(rep.dim), vertex_pair)


def charge_pair_state(spec: ChargeSpec) -> StateVector:
    """Return the normalized charge pair state ``|M_R;(v, v′)⟩``.

    Each ground-state configuration is weighted by ``tr{M R†(x)}`` where
    ``x`` is the value of the edge joining the charges. For the pair
    ``(v1, v3)`` this is ``(1/6) Σ_g tr{M R†(g)} |g⟩₂ Σ_k |k, k⁻¹g⟩₁,₃``.
    """
    axis = PLAQUETTE_REGISTER.position(spec.edge)
    weights = np.array(
        [np.trace(spec.matrix @ spec.irrep.matrix(g).conj().T) for g in ELEMENTS]
    )
    shape = [1, 1, 1]
    shape[axis] = GROUP_ORDER
    amplitudes = ground_state().as_tensor() * weights.reshape(shape)
    return StateVector(PLAQUETTE_REGISTER, amplitudes.reshape(-1), normalized=True)


def gauge_transform_state(
    h: GroupElement, vertex: Vertex, state: StateVector
) -> StateVector:
    """Apply ``T_h(vertex)`` to a plaquette state."""
    return apply_local(gauge_transform(h, vertex), state)
