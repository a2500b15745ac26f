"""Unit tests for the qubit-qutrit encoding and its gate tables."""

from __future__ import annotations

import itertools
import json
import typing as typ

import numpy as np
import pytest

from anyon_interferometry.encoding import (
    CONFIGURATIONS,
    DEFAULT_CONFIGURATION,
    ENCODED_LABELS,
    Encoding,
    build_initial_encoded_state,
    configuration,
    decode,
    encode,
)
from anyon_interferometry.encoding_gates import (
    C_PLUS_MAPPING,
    Gate,
    GateSequence,
    decode_basis_action,
    deterministic_T,
    encoded_T,
    transpositions,
)
from anyon_interferometry.errors import (
    CircuitParseError,
    RegisterError,
    UnsupportedVertexError,
)
from anyon_interferometry.group_core import ELEMENTS, GroupElement, inverse, multiply
from anyon_interferometry.hilbert import QuditRegister, StateVector
from anyon_interferometry.plaquette import (
    ChargeSpec,
    charge_pair_state,
    gauge_transform_state,
    ground_state,
)

_TABLE_CASES = list(itertools.product(ELEMENTS, ELEMENTS))


def _single_qudit(sequence: GateSequence, qudit: str) -> GateSequence:
    return GateSequence(
        tuple(gate for gate in sequence if gate.sites[0].startswith(qudit))
    )


class TestEncodings:
    """Label codes of the two encodings."""

    def test_codes_are_bijective(self) -> None:
        """Verify both encodings use all six ``(a, b)`` codes once."""
        for encoding in Encoding:
            assert len(set(encoding.codes.values())) == 6, encoding.value

    def test_enc2_swaps_rotations_only(self) -> None:
        """Verify the encodings differ exactly on ``c+`` and ``c-``."""
        differing = {
            g
            for g in ELEMENTS
            if Encoding.ENC1.encode_label(g) != Encoding.ENC2.encode_label(g)
        }
        assert differing == {GroupElement.C_PLUS, GroupElement.C_MINUS}

    def test_decode_levels(self) -> None:
        """Verify level pairs decode back to their elements."""
        assert Encoding.ENC1.decode_levels(1, 2) is GroupElement.C_PLUS
        assert Encoding.ENC2.decode_levels(1, 2) is GroupElement.C_MINUS

    def test_permutation_is_orthogonal(self) -> None:
        """Verify the relabelling matrix is a permutation."""
        matrix = Encoding.ENC2.permutation()
        np.testing.assert_array_equal(matrix @ matrix.T, np.eye(6))


class TestConfigurations:
    """Charge placements and the vertices they support."""

    def test_default(self) -> None:
        """Verify the default pair sits on ``e2`` with qudit 3 in ``enc2``."""
        assert DEFAULT_CONFIGURATION.name == "v1-v3"
        assert DEFAULT_CONFIGURATION.charged_edge == "e2"
        assert DEFAULT_CONFIGURATION.charged_qudit == "2"
        assert DEFAULT_CONFIGURATION.encoding_of("3") is Encoding.ENC2

    @pytest.mark.parametrize(
        ("pair", "qudits"),
        [("v1-v3", ("1", "2")), ("v1-v2", ("1", "2")), ("v2-v3", ("1", "3"))],
        ids=["v1-v3", "v1-v2", "v2-v3"],
    )
    def test_operated_qudits(self, pair: str, qudits: tuple[str, ...]) -> None:
        """Verify each configuration reaches the qudits at its vertex."""
        assert set(configuration(pair).operated_qudits()) == set(qudits)

    def test_unsupported_vertex(self) -> None:
        """Verify ``v3`` cannot be operated on in the default configuration."""
        with pytest.raises(UnsupportedVertexError, match="vertex v3 needs the right"):
            DEFAULT_CONFIGURATION.operated_qudits("v3")

    def test_unknown_configuration(self) -> None:
        """Verify configuration names are validated."""
        with pytest.raises(ValueError, match="unknown charge configuration 'v3-v1'"):
            configuration("v3-v1")


class TestEncodeDecode:
    """Mapping plaquette states to the encoded register."""

    def test_encoded_register(self) -> None:
        """Verify the encoded register layout."""
        encoded = encode(ground_state())
        assert encoded.register.labels == ENCODED_LABELS
        assert encoded.register.dims == (2, 3, 2, 3, 2, 3)

    def test_decode_inverts_encode(self) -> None:
        """Verify the pair state survives a trip through the encoding."""
        pair = charge_pair_state(ChargeSpec.identity())
        restored = decode(encode(pair))
        assert restored.register.labels == pair.register.labels
        np.testing.assert_allclose(restored.amplitudes, pair.amplitudes)

    def test_basis_state_codes(self) -> None:
        """Verify a single configuration lands on its ``enc1``/``enc2`` codes."""
        register = QuditRegister((6, 6, 6), ("e1", "e2", "e3"))
        e, c_plus = GroupElement.E.index, GroupElement.C_PLUS.index
        levels = (e, c_plus, c_plus)
        encoded = encode(StateVector.basis(register, levels))
        expected = StateVector.basis(encoded.register, (1, 0, 1, 2, 1, 1))
        np.testing.assert_allclose(encoded.amplitudes, expected.amplitudes)

    def test_encode_requires_edges(self, plus_state: StateVector) -> None:
        """Verify encoding a register without edges fails."""
        with pytest.raises(RegisterError, match="state has no sites"):
            encode(plus_state)

    def test_decode_requires_paired_sites(self) -> None:
        """Verify an encoded qubit must precede its qutrit."""
        register = QuditRegister(
            (3, 2, 2, 3, 2, 3), ("1b", "1a", "2a", "2b", "3a", "3b")
        )
        state = StateVector.basis(register, (0,) * 6)
        with pytest.raises(RegisterError, match="1a, 1b missing or out of order"):
            decode(state)

    def test_initial_state_is_normalized(self) -> None:
        """Verify every configuration's encoded pair has unit norm."""
        for assignment in CONFIGURATIONS.values():
            assert build_initial_encoded_state(assignment).norm() == pytest.approx(1.0)


class TestGateTables:
    """Encoded ``T_g`` against group multiplication."""

    @pytest.mark.parametrize(
        ("g", "x"), _TABLE_CASES, ids=[f"{g.token}*{x.token}" for g, x in _TABLE_CASES]
    )
    def test_enc1_left_action(self, g: GroupElement, x: GroupElement) -> None:
        """Verify the ``enc1`` table realizes ``x -> g x``."""
        sequence = _single_qudit(encoded_T(g), "1")
        image = decode_basis_action(sequence, "1", Encoding.ENC1.encode_label(x))
        assert Encoding.ENC1.decode_levels(*image) is multiply(g, x)

    @pytest.mark.parametrize(
        ("g", "x"), _TABLE_CASES, ids=[f"{g.token}*{x.token}" for g, x in _TABLE_CASES]
    )
    def test_enc2_right_action(self, g: GroupElement, x: GroupElement) -> None:
        """Verify the same table realizes ``x -> x g⁻¹`` under ``enc2``."""
        sequence = _single_qudit(encoded_T(g), "1")
        image = decode_basis_action(sequence, "1", Encoding.ENC2.encode_label(x))
        assert Encoding.ENC2.decode_levels(*image) is multiply(x, inverse(g))

    @pytest.mark.parametrize("g", ELEMENTS, ids=lambda g: g.token)
    def test_deterministic_matches_plaquette(self, g: GroupElement) -> None:
        """Verify the ancilla-free sequence equals the encoded ``T_g(v1)``."""
        pair = charge_pair_state(ChargeSpec.identity())
        expected = encode(gauge_transform_state(g, "v1", pair))
        actual = deterministic_T(g).apply(build_initial_encoded_state())
        np.testing.assert_allclose(actual.amplitudes, expected.amplitudes, atol=1e-12)

    @pytest.mark.parametrize("g", ELEMENTS, ids=lambda g: g.token)
    def test_mixed_encoding_vertex(self, g: GroupElement) -> None:
        """Verify ``T_g(v2)`` in the ``v2-v3`` placement uses both actions."""
        assignment = configuration("v2-v3")
        pair = charge_pair_state(ChargeSpec.identity(vertex_pair=("v2", "v3")))
        expected = encode(gauge_transform_state(g, "v2", pair), assignment)
        actual = encoded_T(g, assignment=assignment).apply(
            build_initial_encoded_state(assignment)
        )
        np.testing.assert_allclose(actual.amplitudes, expected.amplitudes, atol=1e-12)

    def test_controlled_sequence_marks_ancilla(self) -> None:
        """Verify only the permutation or middle NOT carries the control."""
        rotation = encoded_T(GroupElement.C_PLUS, controlled_by="anc")
        reflection = encoded_T(GroupElement.T1, controlled_by="anc")
        assert all(gate.control == "anc" for gate in rotation)
        assert [gate.control for gate in reflection] == [None, "anc", None] * 2
        assert "anc" in reflection.sites()

    def test_identity_has_no_gates(self) -> None:
        """Verify ``T_e`` compiles to nothing."""
        assert len(encoded_T(GroupElement.E)) == 0


class TestPrimitives:
    """Primitive gates and their serialization."""

    def test_transpositions_compose_to_mapping(self) -> None:
        """Verify the swaps reproduce the rotation permutation."""
        swaps = transpositions(C_PLUS_MAPPING)
        sequence = GateSequence(
            tuple(Gate("swap2", ("q",), {"levels": swap}) for swap in swaps)
        )
        rotation = GateSequence((Gate("perm3", ("q",), {"mapping": C_PLUS_MAPPING}),))
        register = QuditRegister((3,), ("q",))
        for level in range(3):
            start = StateVector.basis(register, (level,))
            np.testing.assert_array_equal(
                sequence.apply(start).amplitudes, rotation.apply(start).amplitudes
            )

    def test_unknown_kind(self) -> None:
        """Verify gate kinds are validated."""
        with pytest.raises(ValueError, match="unknown gate kind 'hadamard'"):
            Gate(typ.cast("typ.Any", "hadamard"), ("1a",))

    def test_site_count(self) -> None:
        """Verify two-site gates need two sites."""
        with pytest.raises(ValueError, match=r"cnot2lvl acts on 2 site\(s\)"):
            Gate("cnot2lvl", ("1a",), {"levels": (0, 1)})

    def test_invalid_mapping(self) -> None:
        """Verify ``perm3`` rejects non-permutations when building its matrix."""
        gate = Gate("perm3", ("1b",), {"mapping": [0, 0, 1]})
        with pytest.raises(ValueError, match="is not a permutation"):
            gate.core_matrix()

    def test_json_preserves_gates(self) -> None:
        """Verify a controlled table survives serialization."""
        sequence = encoded_T(GroupElement.T2, controlled_by="anc")
        assert GateSequence.from_json(sequence.to_json()) == sequence

    @pytest.mark.parametrize(
        ("text", "match"),
        [
            ("[", "invalid JSON"),
            ("{}", "must be a JSON array"),
            (json.dumps([{"sites": ["1b"]}]), "element 0, field 'gate'"),
            (json.dumps(["swap2"]), "element 0: gate must be an object"),
            (
                json.dumps([
                    {"gate": "not", "sites": ["1a"]},
                    {"gate": "x", "sites": []},
                ]),
                "element 1",
            ),
        ],
        ids=["truncated", "object", "missing-kind", "not-object", "bad-kind"],
    )
    def test_parse_errors(self, text: str, match: str) -> None:
        """Verify malformed sequences report their location."""
        with pytest.raises(CircuitParseError, match=match):
            GateSequence.from_json(text)
