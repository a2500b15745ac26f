"""Property tests for gauge covariance of the plaquette and its encoding.

Random words of vertex gauge transformations must leave the ground state
fixed. On the encoded register, composing two ``T_g`` gate tables must act
like the group product on both encodings. These checks draw words and
element pairs instead of walking the full multiplication table.
"""

from __future__ import annotations

import typing as typ

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from anyon_interferometry import (
    ELEMENTS,
    Encoding,
    GateSequence,
    GroupElement,
    encoded_T,
    ground_state,
    inverse,
    multiply,
)
from anyon_interferometry.encoding_gates import decode_basis_action
from anyon_interferometry.plaquette import VERTICES, gauge_transform_state

if typ.TYPE_CHECKING:
    from anyon_interferometry.plaquette import Vertex

elements = st.sampled_from(ELEMENTS)
gauge_words = st.lists(
    st.tuples(elements, st.sampled_from(VERTICES)), min_size=1, max_size=4
)


def _first_pair(sequence: GateSequence) -> GateSequence:
    return GateSequence(
        tuple(gate for gate in sequence if gate.sites[0].startswith("1"))
    )


@given(word=gauge_words)
@settings(max_examples=100, deadline=None)
def test_ground_state_is_gauge_invariant(
    word: list[tuple[GroupElement, Vertex]],
) -> None:
    """Verify every word of vertex transformations fixes the ground state."""
    start = ground_state()
    state = start
    for g, vertex in word:
        state = gauge_transform_state(g, vertex, state)
    np.testing.assert_allclose(state.amplitudes, start.amplitudes, atol=1e-12)


@given(g=elements, h=elements, x=elements)
@settings(max_examples=100, deadline=None)
def test_encoded_tables_compose(
    g: GroupElement, h: GroupElement, x: GroupElement
) -> None:
    """Verify ``T_g T_h`` acts as ``gh`` on ``enc1`` and ``enc2`` labels."""
    first, second = _first_pair(encoded_T(h)), _first_pair(encoded_T(g))

    levels = decode_basis_action(first, "1", Encoding.ENC1.encode_label(x))
    levels = decode_basis_action(second, "1", levels)
    assert Encoding.ENC1.decode_levels(*levels) is multiply(g, multiply(h, x))

    levels = decode_basis_action(first, "1", Encoding.ENC2.encode_label(x))
    levels = decode_basis_action(second, "1", levels)
    expected = multiply(x, inverse(multiply(g, h)))
    assert Encoding.ENC2.decode_levels(*levels) is expected
