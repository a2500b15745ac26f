"""Unit tests for fusion amplitudes and fusion-rule probes."""

from __future__ import annotations

import itertools
import typing as typ

import numpy as np
import pytest

from anyon_interferometry.group_core import (
    ELEMENTS,
    IRREPS,
    SIGN,
    TRIVIAL,
    TWO_DIM,
    GroupElement,
)
from anyon_interferometry.plaquette import ChargeSpec, charge_pair_state
from anyon_interferometry.plaquette_fusion import (
    CHARGED_EDGE,
    PathComparison,
    controlled_gauge_experiment,
    fusion_amplitude,
    fusion_amplitude_paths,
    fusion_probe,
    fusion_probe_oracle,
    fusion_probe_paths,
    matrix_unit_sweep,
    q_projector,
    q_rank,
    random_charge_matrix,
    site_label_distribution,
    three_j_basis,
    w_expectation_after,
    w_expectation_paths,
)

if typ.TYPE_CHECKING:
    from anyon_interferometry.group_core import Irrep
    from anyon_interferometry.hilbert_measure import QubitBasis

_TOLERANCE = 1e-10


class TestFusionAmplitude:
    """Vacuum-channel amplitude ``F(R, h)``."""

    @pytest.mark.parametrize(
        ("h", "expected"),
        [
            (GroupElement.E, 1.0),
            (GroupElement.T0, 0.0),
            (GroupElement.T2, 0.0),
            (GroupElement.C_PLUS, -0.5),
            (GroupElement.C_MINUS, -0.5),
        ],
        ids=["e", "t0", "t2", "c+", "c-"],
    )
    def test_two_dim_values(self, h: GroupElement, expected: float) -> None:
        """Verify the character formula for the two-dimensional charge."""
        assert fusion_amplitude(TWO_DIM, h) == pytest.approx(expected)

    def test_sign_charge_sees_reflections(self) -> None:
        """Verify the sign charge flips under reflections."""
        assert fusion_amplitude(SIGN, GroupElement.T1) == pytest.approx(-1.0)

    @pytest.mark.parametrize("rep", IRREPS, ids=str)
    def test_paths_agree(self, rep: Irrep) -> None:
        """Verify the three evaluation paths coincide for every element."""
        for h in ELEMENTS:
            comparison = fusion_amplitude_paths(rep, h)
            assert comparison.discrepancy < _TOLERANCE, (str(rep), h.token)

    def test_discrepancy(self) -> None:
        """Verify the discrepancy is the widest spread of values."""
        comparison = PathComparison((1.0, 1.25, 0.75))
        assert comparison.discrepancy == pytest.approx(0.5)


class TestControlledGauge:
    """Ancilla-controlled gauge interference."""

    @pytest.mark.parametrize(
        ("h", "basis", "expected"),
        [
            (GroupElement.E, "x", (1.0, 0.0)),
            (GroupElement.T0, "x", (0.5, 0.5)),
            (GroupElement.C_PLUS, "x", (0.25, 0.75)),
            (GroupElement.C_PLUS, "y", (0.5, 0.5)),
        ],
        ids=["e-x", "t0-x", "c+-x", "c+-y"],
    )
    def test_outcomes(
        self, h: GroupElement, basis: QubitBasis, expected: tuple[float, float]
    ) -> None:
        """Verify ``P_plus - P_minus`` reads out the fusion amplitude."""
        outcome = controlled_gauge_experiment(h, "v1", basis)
        assert outcome == pytest.approx(expected)

    def test_uncharged_vertex_is_invisible(self) -> None:
        """Verify braiding at ``v2`` never disturbs the ancilla."""
        for h in ELEMENTS:
            assert controlled_gauge_experiment(h, "v2", "x") == pytest.approx(
                (1.0, 0.0)
            ), h.token


class TestRibbonProbe:
    """``W_{R2}`` expectation after a braid."""

    @pytest.mark.parametrize(
        ("h", "expected"),
        [
            (GroupElement.E, 1.0),
            (GroupElement.T1, 0.0),
            (GroupElement.C_MINUS, -0.5),
        ],
        ids=["e", "t1", "c-"],
    )
    def test_values(self, h: GroupElement, expected: float) -> None:
        """Verify the state-vector value of ``⟨W⟩``."""
        assert w_expectation_after(h) == pytest.approx(expected, abs=1e-12)

    def test_paths_agree(self) -> None:
        """Verify the trace formula matches the state value."""
        for h in ELEMENTS:
            assert w_expectation_paths(h).discrepancy < _TOLERANCE, h.token

    def test_label_distribution_is_normalized(self) -> None:
        """Verify the charged-edge label marginal sums to one."""
        pair = charge_pair_state(ChargeSpec.identity())
        distribution = site_label_distribution(pair, CHARGED_EDGE)
        assert sum(distribution.values()) == pytest.approx(1.0)
        assert set(distribution) == set(ELEMENTS)


class TestQMatrix:
    """Invariant projector of a triple product."""

    @pytest.mark.parametrize(
        ("reps", "rank"),
        [
            ((TWO_DIM, TWO_DIM, TWO_DIM), 1),
            ((TWO_DIM, SIGN, TWO_DIM), 1),
            ((TWO_DIM, TRIVIAL, TWO_DIM), 1),
            ((SIGN, TWO_DIM, SIGN), 0),
            ((TRIVIAL, SIGN, TRIVIAL), 0),
        ],
        ids=[
            "2-2-2",
            "2-sign-2",
            "2-trivial-2",
            "sign-2-sign",
            "trivial-sign-trivial",
        ],
    )
    def test_rank(self, reps: tuple[Irrep, Irrep, Irrep], rank: int) -> None:
        """Verify the rank counts vacuum fusion channels."""
        assert q_rank(q_projector(*reps)) == rank

    def test_is_projector(self) -> None:
        """Verify ``Q² = Q`` and ``Q† = Q``."""
        projector = q_projector(TWO_DIM, TWO_DIM.dual(), TWO_DIM.dual())
        np.testing.assert_allclose(projector @ projector, projector, atol=1e-12)
        np.testing.assert_allclose(projector.conj().T, projector, atol=1e-12)

    def test_three_j_basis_shape(self) -> None:
        """Verify one orthonormal column per channel."""
        basis = three_j_basis(TWO_DIM, TWO_DIM, TWO_DIM)
        assert basis.shape == (8, 1)
        assert np.linalg.norm(basis[:, 0]) == pytest.approx(1.0)
        assert three_j_basis(SIGN, TWO_DIM, SIGN).shape == (2, 0)

    def test_projector_copy_is_writable(self) -> None:
        """Verify callers receive a private copy of the cached matrix."""
        projector = q_projector(SIGN, SIGN, TRIVIAL)
        projector[0, 0] = 0
        assert q_projector(SIGN, SIGN, TRIVIAL)[0, 0] == pytest.approx(1.0)


class TestFusionProbe:
    """Q-matrix probe against the state-vector oracle."""

    @pytest.mark.parametrize(
        ("rep", "probe"),
        list(itertools.product(IRREPS, repeat=2)),
        ids=lambda value: str(value),
    )
    def test_matrix_units(self, rep: Irrep, probe: Irrep) -> None:
        """Verify agreement on every matrix unit of every irrep pair."""
        for matrix in matrix_unit_sweep(rep):
            comparison = fusion_probe_paths(rep, probe, GroupElement.E, matrix)
            assert comparison.discrepancy < _TOLERANCE

    def test_random_matrices(self) -> None:
        """Verify agreement on seeded random charge matrices."""
        rng = np.random.default_rng(7)
        for _ in range(3):
            matrix = random_charge_matrix(TWO_DIM, rng)
            for probe in IRREPS:
                value = fusion_probe(TWO_DIM, probe, GroupElement.E, matrix)
                oracle = fusion_probe_oracle(TWO_DIM, probe, GroupElement.E, matrix)
                assert value == pytest.approx(oracle, abs=_TOLERANCE), str(probe)

    def test_forbidden_channel_vanishes(self) -> None:
        """Verify a sign pair never carries two-dimensional charge."""
        for h in ELEMENTS:
            assert fusion_probe(SIGN, TWO_DIM, h) == pytest.approx(0.0, abs=1e-12)

    def test_default_matrix_is_braided_pair(self) -> None:
        """Verify the default probe reproduces ``⟨W⟩`` after a braid."""
        for h in ELEMENTS:
            assert fusion_probe(TWO_DIM, TWO_DIM, h) == pytest.approx(
                w_expectation_after(h), abs=_TOLERANCE
            ), h.token

    def test_random_matrix_norm(self) -> None:
        """Verify draws are rescaled to ``Σ|M|² = |R|``."""
        matrix = random_charge_matrix(TWO_DIM, np.random.default_rng(0))
        assert np.sum(np.abs(matrix) ** 2) == pytest.approx(2.0)

    def test_sweep_size(self) -> None:
        """Verify the sweep covers every matrix unit."""
        assert len(matrix_unit_sweep(TWO_DIM)) == 4
        assert len(matrix_unit_sweep(SIGN)) == 1
