"""Dense state vectors and local operators over mixed-dimension registers.

Amplitudes are stored row-major with site 0 as the most significant tensor
factor. That single convention is shared by the plaquette, encoding and
optics layers and by the JSON form of ``StateVector``.

``hilbert_measure`` builds the measurement helpers (marginals, reduced
densities, basis probabilities) on top of the types defined here.
"""

from __future__ import annotations

import dataclasses
import functools
import math
import typing as typ

import numpy as np

from .errors import NormalizationError, RegisterError

if typ.TYPE_CHECKING:
    import collections.abc as cabc

NORM_TOLERANCE = 1e-10


@dataclasses.dataclass(frozen=True)
class QuditRegister:
    """Ordered, labelled tensor factors.

    Parameters
    ----------
    dims : tuple[int, ...]
        Positive dimension of each site.
    labels : tuple[str, ...]
        Unique site names, parallel to ``dims``.

    Raises
    ------
    RegisterError
        If the lengths differ, a dimension is not positive, or labels repeat.

    """

    dims: tuple[int, ...]
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        """Freeze and validate the site description."""
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(self.dims) != len(self.labels):
            msg = f"{len(self.dims)} dims given for {len(self.labels)} labels"
            raise RegisterError(msg)
        if any(d < 1 for d in self.dims):
            msg = f"site dimensions must be positive, got {self.dims}"
            raise RegisterError(msg)
        if len(set(self.labels)) != len(self.labels):
            msg = f"duplicate site label in {self.labels}"
            raise RegisterError(msg)

    @property
    def total_dim(self) -> int:
        """Dimension of the full tensor product."""
        return math.prod(self.dims)

    def position(self, label: str) -> int:
        """Return the axis of ``label``.

        Raises
        ------
        RegisterError
            If the register has no such site.

        """
        try:
            return self.labels.index(label)
        except ValueError:
            msg = f"unknown site '{label}' in register {self.labels}"
            raise RegisterError(msg) from None

    def dim_of(self, label: str) -> int:
        """Return the dimension of site ``label``."""
        return self.dims[self.position(label)]

    def concat(self, other: QuditRegister) -> QuditRegister:
        """Append ``other``'s sites after this register's sites."""
        return QuditRegister(self.dims + other.dims, self.labels + other.labels)

    def flat_index(self, levels: cabc.Sequence[int]) -> int:
        """Row-major index of the basis state with the given site levels."""
        return int(np.ravel_multi_index(tuple(levels), self.dims))


def _frozen_array(values: object, *, dtype: type = complex) -> np.ndarray:
    array = np.array(values, dtype=dtype)
    array.setflags(write=False)
    return array


@dataclasses.dataclass(frozen=True, eq=False)
class StateVector:
    """Complex amplitudes over a ``QuditRegister``.

    ``normalized`` records whether the producer guaranteed unit norm; the
    amplitudes are never rescaled implicitly.
    """

    register: QuditRegister
    amplitudes: np.ndarray
    normalized: bool = False

    def __post_init__(self) -> None:
        """Copy the amplitudes into a read-only vector and check its length."""
        amplitudes = _frozen_array(self.amplitudes).reshape(-1)
        if amplitudes.size != self.register.total_dim:
            msg = (
                f"{amplitudes.size} amplitudes given for register of "
                f"dimension {self.register.total_dim}"
            )
            raise RegisterError(msg)
        if not np.all(np.isfinite(amplitudes)):
            msg = "amplitudes must be finite"
            raise NormalizationError(msg)
        object.__setattr__(self, "amplitudes", amplitudes)

    @classmethod
    def basis(
        cls, register: QuditRegister, levels: cabc.Sequence[int]
    ) -> StateVector:
        """Build the computational basis state with the given site levels."""
        amplitudes = np.zeros(register.total_dim, dtype=complex)
        amplitudes[register.flat_index(levels)] = 1.0
        return cls(register, amplitudes, normalized=True)

    @classmethod
    def single_site(
        cls, label: str, amplitudes: cabc.Sequence[complex]
    ) -> StateVector:
        """Build a one-site state; ``normalized`` is inferred from the norm."""
        vector = np.asarray(amplitudes, dtype=complex)
        register = QuditRegister((vector.size,), (label,))
        unit = math.isclose(float(np.linalg.norm(vector)), 1.0, abs_tol=NORM_TOLERANCE)
        return cls(register, vector, normalized=unit)

    def norm(self) -> float:
        """Euclidean norm of the amplitude vector."""
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, tolerance: float = NORM_TOLERANCE) -> bool:
        """Whether the norm is one within ``tolerance``."""
        return math.isclose(self.norm(), 1.0, abs_tol=tolerance)

    def normalized_copy(self) -> StateVector:
        """Return the state rescaled to unit norm.

        Raises
        ------
        NormalizationError
            If the state is the zero vector.

        """
        norm = self.norm()
        if norm < NORM_TOLERANCE:
            msg = "cannot normalize the zero vector"
            raise NormalizationError(msg)
        return StateVector(self.register, self.amplitudes / norm, normalized=True)

    def amplitude(self, levels: cabc.Sequence[int]) -> complex:
        """Return the amplitude of one basis state."""
        return complex(self.amplitudes[self.register.flat_index(levels)])

    def as_tensor(self) -> np.ndarray:
        """View the amplitudes with one axis per site."""
        return self.amplitudes.reshape(self.register.dims)

    def to_json(self) -> dict[str, object]:
        """Serialize to the ``{dims, labels, amplitudes, normalized}`` mapping."""
        return {
            "dims": list(self.register.dims),
            "labels": list(self.register.labels),
            "amplitudes": [[float(a.real), float(a.imag)] for a in self.amplitudes],
            "normalized": self.normalized,
        }

    @classmethod
    def from_json(cls, payload: cabc.Mapping[str, typ.Any]) -> StateVector:
        """Rebuild a state from ``to_json`` output."""
        register = QuditRegister(tuple(payload["dims"]), tuple(payload["labels"]))
        amplitudes = [complex(re, im) for re, im in payload["amplitudes"]]
        return cls(register, np.array(amplitudes), bool(payload["normalized"]))


@dataclasses.dataclass(frozen=True, eq=False)
class LocalOperator:
    """A square matrix acting on an ordered subset of register sites.

    Parameters
    ----------
    sites : tuple[str, ...]
        Site labels in the tensor order of ``matrix``.
    dims : tuple[int, ...]
        Dimensions of those sites.
    matrix : numpy.ndarray
        Operator of size ``prod(dims)`` squared.

    Raises
    ------
    RegisterError
        If the matrix shape disagrees with ``dims`` or sites repeat.

    """

    sites: tuple[str, ...]
    dims: tuple[int, ...]
    matrix: np.ndarray

    def __post_init__(self) -> None:
        """Validate the operator shape against its sites."""
        object.__setattr__(self, "sites", tuple(self.sites))
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "matrix", _frozen_array(self.matrix))
        size = math.prod(self.dims)
        if len(self.sites) != len(self.dims) or len(set(self.sites)) != len(self.sites):
            msg = f"operator sites {self.sites} do not match dims {self.dims}"
            raise RegisterError(msg)
        if self.matrix.shape != (size, size):
            msg = (
                f"operator matrix has shape {self.matrix.shape}, "
                f"expected {(size, size)}"
            )
            raise RegisterError(msg)

    @classmethod
    def identity(cls, sites: tuple[str, ...], dims: tuple[int, ...]) -> LocalOperator:
        """Build the identity on ``sites``."""
        return cls(sites, dims, np.eye(math.prod(dims), dtype=complex))

    def __matmul__(self, other: LocalOperator) -> LocalOperator:
        """Compose two operators on the same sites, ``self`` applied last."""
        if other.sites != self.sites or other.dims != self.dims:
            msg = f"cannot compose operators on {self.sites} and {other.sites}"
            raise RegisterError(msg)
        return LocalOperator(self.sites, self.dims, self.matrix @ other.matrix)

    def adjoint(self) -> LocalOperator:
        """Return the Hermitian conjugate."""
        return LocalOperator(self.sites, self.dims, self.matrix.conj().T)

    def scaled(self, factor: complex) -> LocalOperator:
        """Return ``factor`` times the operator."""
        return LocalOperator(self.sites, self.dims, factor * self.matrix)

    def is_unitary(self, tolerance: float = 1e-12) -> bool:
        """Whether ``U U†`` is the identity within ``tolerance``."""
        eye = np.eye(self.matrix.shape[0])
        gram = self.matrix @ self.matrix.conj().T
        return bool(np.allclose(gram, eye, atol=tolerance))

    def embed(self, register: QuditRegister) -> np.ndarray:
        """Return the operator as a full matrix on ``register``."""
        size = register.total_dim
        columns = [
            apply_local(self, StateVector(register, column)).amplitudes
            for column in np.eye(size, dtype=complex)
        ]
        return np.column_stack(columns)


def _check_sites(op: LocalOperator, register: QuditRegister) -> list[int]:
    axes = [register.position(site) for site in op.sites]
    for site, axis, dim in zip(op.sites, axes, op.dims, strict=True):
        if register.dims[axis] != dim:
            msg = (
                f"operator expects dimension {dim} on site '{site}', "
                f"register has {register.dims[axis]}"
            )
            raise RegisterError(msg)
    return axes


def apply_local(op: LocalOperator, state: StateVector) -> StateVector:
    """Apply ``op`` to its sites of ``state``, acting as identity elsewhere.

    Parameters
    ----------
    op : LocalOperator
        The operator to apply.
    state : StateVector
        The input state; its register must contain every operator site.

    Returns
    -------
    StateVector
        The transformed state. ``normalized`` is kept only for unitary ``op``.

    """
    axes = _check_sites(op, state.register)
    front = list(range(len(axes)))
    tensor = np.moveaxis(state.as_tensor(), axes, front)
    shape = tensor.shape
    flat = tensor.reshape(op.matrix.shape[0], -1)
    result = np.moveaxis((op.matrix @ flat).reshape(shape), front, axes)
    return StateVector(
        state.register,
        result.reshape(-1),
        normalized=state.normalized and op.is_unitary(),
    )


def apply_all(ops: cabc.Iterable[LocalOperator], state: StateVector) -> StateVector:
    """Apply ``ops`` in iteration order."""
    return functools.reduce(lambda current, op: apply_local(op, current), ops, state)


def tensor(states: cabc.Sequence[StateVector]) -> StateVector:
    """Kronecker product of ``states`` in the given site order.

    Raises
    ------
    RegisterError
        If no states are given or two registers share a label.

    """
    if not states:
        msg = "tensor needs at least one state"
        raise RegisterError(msg)
    register = functools.reduce(
        lambda acc, s: acc.concat(s.register), states[1:], states[0].register
    )
    amplitudes = functools.reduce(np.kron, (s.amplitudes for s in states))
    return StateVector(
        register, amplitudes, normalized=all(s.normalized for s in states)
    )


def inner(a: StateVector, b: StateVector) -> complex:
    """Return ``⟨a|b⟩``, conjugate-linear in ``a``.

    Raises
    ------
    RegisterError
        If the registers differ.

    """
    if a.register != b.register:
        msg = f"registers differ: {a.register.labels} vs {b.register.labels}"
        raise RegisterError(msg)
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def expectation(op: LocalOperator, state: StateVector) -> complex:
    """Return ``⟨state|op|state⟩``."""
    return inner(state, apply_local(op, state))


def controlled(
    op: LocalOperator,
    control: str,
    *,
    control_dim: int = 2,
    control_value: int = 1,
) -> LocalOperator:
    """Condition ``op`` on one level of a control site.

    The returned operator acts on ``(control, *op.sites)`` and applies
    ``op`` only when the control site is in ``control_value``.

    Raises
    ------
    RegisterError
        If the control site is one of the operator's sites or the control
        value lies outside the control dimension.

    """
    if control in op.sites:
        msg = f"control site '{control}' is also a target"
        raise RegisterError(msg)
    if not 0 <= control_value < control_dim:
        msg = f"control value {control_value} outside dimension {control_dim}"
        raise RegisterError(msg)
    size = op.matrix.shape[0]
    blocks = [
        op.matrix if level == control_value else np.eye(size, dtype=complex)
        for level in range(control_dim)
    ]
    matrix = np.zeros((control_dim * size, control_dim * size), dtype=complex)
    for level, block in enumerate(blocks):
        span = slice(level * size, (level + 1) * size)
        matrix[span, span] = block
    return LocalOperator((control, *op.sites), (control_dim, *op.dims), matrix)
