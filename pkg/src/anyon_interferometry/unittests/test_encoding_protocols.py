"""Unit tests for the protocols run on the encoded register."""

from __future__ import annotations

import typing as typ

import numpy as np
import pytest

from anyon_interferometry.encoding import ENCODED_LABELS
from anyon_interferometry.encoding_protocols import (
    ProbeOutcome,
    alternative_configuration,
    ancilla_labels,
    fig4_sequence,
    fig5_sequence,
    ghz_ancillas,
    relabelled_default_order,
    run_ancilla_free_probe,
    run_controlled_tt_protocol,
    run_encoded_controlled_experiment,
    run_entangled_control_protocol,
)
from anyon_interferometry.group_core import ELEMENTS, GroupElement
from anyon_interferometry.hilbert_measure import permute_sites, relabel_sites
from anyon_interferometry.plaquette_fusion import controlled_gauge_experiment

if typ.TYPE_CHECKING:
    from anyon_interferometry.hilbert_measure import QubitBasis


class TestAncillaFreeProbe:
    """Charged-qudit statistics after the deterministic ``T_g``."""

    @pytest.mark.parametrize(
        ("g", "expected"),
        [
            (GroupElement.E, (2 / 3, 1 / 6, 1 / 6, 1.0)),
            (GroupElement.C_PLUS, (1 / 6, 2 / 3, 1 / 6, -0.5)),
            (GroupElement.C_MINUS, (1 / 6, 1 / 6, 2 / 3, -0.5)),
            (GroupElement.T0, (0.0, 0.0, 0.0, 0.0)),
        ],
        ids=["e", "c+", "c-", "t0"],
    )
    def test_label_statistics(
        self, g: GroupElement, expected: tuple[float, ...]
    ) -> None:
        """Verify ``(P_e, P_c+, P_c-, ⟨W⟩)``."""
        outcome = run_ancilla_free_probe(g).as_tuple()
        assert outcome == pytest.approx(expected, abs=1e-12)

    def test_w_expectation(self) -> None:
        """Verify ``⟨W⟩`` is read from the three rotation probabilities."""
        outcome = ProbeOutcome(0.5, 0.25, 0.25)
        assert outcome.w_expectation == pytest.approx(0.5)


class TestControlledExperiment:
    """Single-ancilla controlled ``T_g``."""

    @pytest.mark.parametrize("basis", ["x", "y"])
    def test_matches_plaquette_model(self, basis: QubitBasis) -> None:
        """Verify the encoded run reproduces the abstract statistics."""
        for g in ELEMENTS:
            encoded = run_encoded_controlled_experiment(g, basis)
            abstract = controlled_gauge_experiment(g, "v1", basis)
            assert encoded == pytest.approx(abstract, abs=1e-12), g.token


class TestReflectionProtocol:
    """Reduced one-ancilla reflection sequence."""

    @pytest.mark.parametrize("reflection", [0, 1, 2])
    @pytest.mark.parametrize("include_step6", [False, True], ids=["short", "full"])
    def test_balanced_outcome(self, reflection: int, *, include_step6: bool) -> None:
        """Verify reflections give ``P+ = P- = 1/2``."""
        outcome = run_controlled_tt_protocol(reflection, include_step6=include_step6)
        assert outcome == pytest.approx((0.5, 0.5), abs=1e-12)

    def test_sequence_length(self) -> None:
        """Verify the optional tail adds two CNOTs."""
        assert len(fig5_sequence(1)) == 4
        assert len(fig5_sequence(1, include_step6=True)) == 6

    def test_reflection_index_checked(self) -> None:
        """Verify only three reflections exist."""
        with pytest.raises(ValueError, match="reflection index must be 0, 1 or 2"):
            fig5_sequence(3)


class TestEntangledControl:
    """GHZ-controlled rotations."""

    @pytest.mark.parametrize("ancillas", [2, 4])
    @pytest.mark.parametrize(
        "g", [GroupElement.C_PLUS, GroupElement.C_MINUS], ids=["c+", "c-"]
    )
    def test_reads_fusion_amplitude(self, g: GroupElement, ancillas: int) -> None:
        """Verify ``P+ - P- = -1/2`` for both rotations."""
        p_plus, p_minus = run_entangled_control_protocol(g, ancillas)
        assert p_plus == pytest.approx(0.25, abs=1e-12)
        assert p_minus == pytest.approx(0.75, abs=1e-12)

    def test_ghz_state(self) -> None:
        """Verify the ancilla register holds ``(|0…0⟩ + |1…1⟩)/√2``."""
        state = ghz_ancillas(2)
        assert state.register.labels == ("a4", "a5")
        np.testing.assert_allclose(
            np.abs(state.amplitudes) ** 2, [0.5, 0.0, 0.0, 0.5]
        )

    def test_four_ancillas_control_one_swap_each(self) -> None:
        """Verify each swap has its own control with four ancillas."""
        controls = [gate.control for gate in fig4_sequence(GroupElement.C_PLUS, 4)]
        assert controls == [*ancilla_labels(4), None]

    @pytest.mark.parametrize(
        ("g", "ancillas", "match"),
        [
            (GroupElement.T0, 2, "needs c\\+ or c-"),
            (GroupElement.C_PLUS, 3, "ancillas must be 2 or 4"),
        ],
        ids=["reflection", "three-ancillas"],
    )
    def test_arguments_checked(
        self, g: GroupElement, ancillas: int, match: str
    ) -> None:
        """Verify unsupported inputs are rejected."""
        with pytest.raises(ValueError, match=match):
            fig4_sequence(g, ancillas)


class TestAlternativeConfigurations:
    """The other two placements of the charge pair."""

    @pytest.mark.parametrize("pair", ["v1-v2", "v2-v3"])
    def test_state_is_a_relabelling(self, pair: str) -> None:
        """Verify each encoded pair is the default one with qudits exchanged."""
        default = alternative_configuration("v1-v3").encoded_state
        bundle = alternative_configuration(pair)
        moved = relabel_sites(
            permute_sites(default, relabelled_default_order(pair)), ENCODED_LABELS
        )
        np.testing.assert_allclose(
            moved.amplitudes, bundle.encoded_state.amplitudes, atol=1e-12
        )

    @pytest.mark.parametrize("pair", ["v1-v2", "v2-v3"])
    def test_tables_agree(self, pair: str) -> None:
        """Verify the per-qudit tables equal the default ones."""
        default = alternative_configuration("v1-v3")
        bundle = alternative_configuration(pair)
        for mine, theirs in zip(
            default.configuration.operated_qudits(),
            bundle.configuration.operated_qudits(),
            strict=True,
        ):
            for g in ELEMENTS:
                assert default.qudit_table(g, mine) == bundle.qudit_table(g, theirs)

    @pytest.mark.parametrize("pair", ["v1-v2", "v2-v3"])
    def test_probe_statistics_agree(self, pair: str) -> None:
        """Verify the ancilla-free probe is placement independent."""
        assignment = alternative_configuration(pair).configuration
        for g in ELEMENTS:
            assert run_ancilla_free_probe(g, assignment).as_tuple() == pytest.approx(
                run_ancilla_free_probe(g).as_tuple(), abs=1e-12
            ), g.token
