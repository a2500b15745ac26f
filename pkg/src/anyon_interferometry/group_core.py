"""The symmetric group S3 and the representation data the plaquette needs.

Elements are ``GroupElement`` members in the fixed basis order
``(e, t0, t1, t2, c+, c-)``; index 0 is the identity. The multiplication
table is not written out by hand: it is recovered once, at import time, by
matching products of the faithful two-dimensional irrep against the six
matrices, so every formula built on that irrep agrees with the group law.

Key exports are ``GroupElement``, ``Irrep``, ``multiply``, ``inverse``,
``character``, ``regular_matrix`` and ``conjugacy_classes``.
"""

from __future__ import annotations

import dataclasses
import enum
import functools
import itertools
import math
import typing as typ

import numpy as np
from scipy import linalg

if typ.TYPE_CHECKING:
    import collections.abc as cabc

_ANGLE = 2.0 * math.pi / 3.0
_MATCH_TOLERANCE = 1e-9
GROUP_ORDER = 6

type RegularSide = typ.Literal["left", "right"]


class GroupElement(enum.Enum):
    """An element of S3, valued by its serialization token."""

    E = "e"
    T0 = "t0"
    T1 = "t1"
    T2 = "t2"
    C_PLUS = "c+"
    C_MINUS = "c-"

    @property
    def index(self) -> int:
        """Position of the element in the global basis order."""
        return _BASIS_INDEX[self]

    @property
    def token(self) -> str:
        """Serialization token such as ``"c+"``."""
        return self.value

    @property
    def is_rotation(self) -> bool:
        """Whether the element lies in the rotation subgroup ``{e, c+, c-}``."""
        return self in {GroupElement.E, GroupElement.C_PLUS, GroupElement.C_MINUS}


ELEMENTS: tuple[GroupElement, ...] = tuple(GroupElement)
"""The six group elements in basis order ``e, t0, t1, t2, c+, c-``."""

_BASIS_INDEX: dict[GroupElement, int] = {g: i for i, g in enumerate(ELEMENTS)}


class IrrepLabel(enum.StrEnum):
    """Names of the three irreducible representations of S3."""

    TRIVIAL = "trivial"
    SIGN = "sign"
    TWO_DIM = "two_dim"


def _two_dim_matrices() -> dict[GroupElement, np.ndarray]:
    sigma_x = np.array([[0, 1], [1, 0]], dtype=complex)
    sigma_z = np.diag([1.0, -1.0]).astype(complex)
    rotation = {
        GroupElement.E: np.eye(2, dtype=complex),
        GroupElement.C_PLUS: linalg.expm(1j * _ANGLE * sigma_z),
        GroupElement.C_MINUS: linalg.expm(-1j * _ANGLE * sigma_z),
    }
    reflections = {
        g: sigma_x @ linalg.expm(1j * _ANGLE * k * sigma_z)
        for k, g in enumerate((GroupElement.T0, GroupElement.T1, GroupElement.T2))
    }
    matrices = rotation | reflections
    for matrix in matrices.values():
        matrix.setflags(write=False)
    return matrices


_TWO_DIM = _two_dim_matrices()


def _derive_product_table() -> dict[tuple[GroupElement, GroupElement], GroupElement]:
    table: dict[tuple[GroupElement, GroupElement], GroupElement] = {}
    for g, h in itertools.product(ELEMENTS, repeat=2):
        product = _TWO_DIM[g] @ _TWO_DIM[h]
        matches = [
            k
            for k in ELEMENTS
            if np.allclose(product, _TWO_DIM[k], atol=_MATCH_TOLERANCE)
        ]
        if len(matches) != 1:
            msg = f"two-dimensional irrep is not faithful at ({g.token}, {h.token})"
            raise RuntimeError(msg)
        table[g, h] = matches[0]
    return table


_PRODUCT_TABLE = _derive_product_table()


def multiply(g: GroupElement, h: GroupElement) -> GroupElement:
    """Return the group product ``g·h``."""
    return _PRODUCT_TABLE[g, h]


def inverse(g: GroupElement) -> GroupElement:
    """Return the inverse of ``g``."""
    return next(h for h in ELEMENTS if multiply(g, h) is GroupElement.E)


def product(elements: cabc.Iterable[GroupElement]) -> GroupElement:
    """Multiply ``elements`` left to right, returning ``e`` for no input."""
    return functools.reduce(multiply, elements, GroupElement.E)


def parse_element(token: str) -> GroupElement:
    """Parse a serialization token into a group element.

    Parameters
    ----------
    token : str
        One of ``"e"``, ``"t0"``, ``"t1"``, ``"t2"``, ``"c+"``, ``"c-"``.

    Returns
    -------
    GroupElement
        The matching element.

    Raises
    ------
    ValueError
        If ``token`` names no element.

    """
    try:
        return GroupElement(token.strip())
    except ValueError:
        valid = ", ".join(g.token for g in ELEMENTS)
        msg = f"unknown group element '{token}'; expected one of {valid}"
        raise ValueError(msg) from None


@dataclasses.dataclass(frozen=True)
class Irrep:
    """An irreducible unitary representation of S3.

    Parameters
    ----------
    label : IrrepLabel
        Which of the three irreps this is.
    conjugated : bool
        Whether the matrices are complex conjugated, giving the dual
        representation.

    """

    label: IrrepLabel
    conjugated: bool = False

    @property
    def dim(self) -> int:
        """Dimension of the carrier space."""
        return 2 if self.label is IrrepLabel.TWO_DIM else 1

    def matrix(self, g: GroupElement) -> np.ndarray:
        """Return the representing matrix of ``g``."""
        match self.label:
            case IrrepLabel.TRIVIAL:
                base = np.ones((1, 1), dtype=complex)
            case IrrepLabel.SIGN:
                sign = 1.0 if g.is_rotation else -1.0
                base = np.full((1, 1), sign, dtype=complex)
            case IrrepLabel.TWO_DIM:
                base = np.array(_TWO_DIM[g])
        return base.conj() if self.conjugated else base

    def matrices(self) -> dict[GroupElement, np.ndarray]:
        """Return the full element-to-matrix map."""
        return {g: self.matrix(g) for g in ELEMENTS}

    def dual(self) -> Irrep:
        """Return the complex-conjugate representation."""
        return dataclasses.replace(self, conjugated=not self.conjugated)

    def __str__(self) -> str:
        """Render the label, starred for a dual representation."""
        return f"{self.label}*" if self.conjugated else str(self.label)


TRIVIAL = Irrep(IrrepLabel.TRIVIAL)
SIGN = Irrep(IrrepLabel.SIGN)
TWO_DIM = Irrep(IrrepLabel.TWO_DIM)
IRREPS: tuple[Irrep, ...] = (TRIVIAL, SIGN, TWO_DIM)
"""The irreducible representations, ordered trivial, sign, two-dimensional."""


def irrep(label: str) -> Irrep:
    """Look up an irrep by label, accepting a trailing ``*`` for the dual.

    Raises
    ------
    ValueError
        If ``label`` names no irrep.

    """
    conjugated = label.endswith("*")
    try:
        base = IrrepLabel(label.removesuffix("*"))
    except ValueError:
        msg = f"unknown irrep '{label}'"
        raise ValueError(msg) from None
    return Irrep(base, conjugated=conjugated)


def character(rep: Irrep, g: GroupElement) -> complex:
    """Return the character ``tr rep(g)``."""
    return complex(np.trace(rep.matrix(g)))


def regular_matrix(side: RegularSide, g: GroupElement) -> np.ndarray:
    """Return the 6x6 permutation matrix of left or right multiplication.

    Column ``j`` carries the basis state ``|g_j⟩`` to ``|g·g_j⟩`` for the
    left action and to ``|g_j·g⟩`` for the right action.

    Parameters
    ----------
    side : {"left", "right"}
        Which regular action to build.
    g : GroupElement
        The multiplying element.

    Returns
    -------
    numpy.ndarray
        Real 6x6 permutation matrix.

    Raises
    ------
    ValueError
        If ``side`` is neither ``"left"`` nor ``"right"``.

    """
    if side not in {"left", "right"}:
        msg = f"side must be 'left' or 'right', got {side!r}"
        raise ValueError(msg)
    matrix = np.zeros((GROUP_ORDER, GROUP_ORDER))
    for column, basis in enumerate(ELEMENTS):
        image = multiply(g, basis) if side == "left" else multiply(basis, g)
        matrix[image.index, column] = 1.0
    return matrix


@dataclasses.dataclass(frozen=True)
class RegularRep:
    """Left or right regular action of a single element."""

    side: RegularSide
    element: GroupElement

    @property
    def matrix(self) -> np.ndarray:
        """The permutation matrix of this action."""
        return regular_matrix(self.side, self.element)


def conjugacy_classes() -> tuple[frozenset[GroupElement], ...]:
    """Return the conjugacy classes, identity class first."""
    classes: list[frozenset[GroupElement]] = []
    for g in ELEMENTS:
        if any(g in seen for seen in classes):
            continue
        classes.append(
            frozenset(multiply(multiply(h, g), inverse(h)) for h in ELEMENTS)
        )
    return tuple(classes)


def multiplicity_of_trivial(*reps: Irrep) -> int:
    """Count trivial-irrep copies inside the tensor product of ``reps``."""
    total = sum(
        math.prod(character(rep, g) for rep in reps) for g in ELEMENTS
    )
    return round((total / GROUP_ORDER).real)
