"""Property tests for the S3 multiplication table and its irreps.

The table is derived from the faithful two-dimensional representation, so
these properties check it against the group axioms directly and against the
homomorphism property of every irrep, rather than against a hand-written
copy of the table.
"""

from __future__ import annotations

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from anyon_interferometry import (
    ELEMENTS,
    IRREPS,
    GroupElement,
    Irrep,
    character,
    inverse,
    multiply,
    parse_element,
)

elements = st.sampled_from(ELEMENTS)
irreps = st.sampled_from(IRREPS)


@given(g=elements, h=elements, k=elements)
@settings(max_examples=100)
def test_multiplication_is_associative(
    g: GroupElement, h: GroupElement, k: GroupElement
) -> None:
    """Verify ``(g h) k = g (h k)``."""
    assert multiply(multiply(g, h), k) is multiply(g, multiply(h, k))


@given(g=elements)
def test_inverse_cancels(g: GroupElement) -> None:
    """Verify ``g g⁻¹ = g⁻¹ g = e``."""
    assert multiply(g, inverse(g)) is GroupElement.E
    assert multiply(inverse(g), g) is GroupElement.E


@given(rep=irreps, g=elements, h=elements)
@settings(max_examples=100)
def test_irreps_are_homomorphisms(rep: Irrep, g: GroupElement, h: GroupElement) -> None:
    """Verify ``R(g) R(h) = R(gh)`` and unitarity of ``R(g)``."""
    np.testing.assert_allclose(
        rep.matrix(g) @ rep.matrix(h), rep.matrix(multiply(g, h)), atol=1e-12
    )
    matrix = rep.matrix(g)
    np.testing.assert_allclose(matrix @ matrix.conj().T, np.eye(rep.dim), atol=1e-12)


@given(rep=irreps, g=elements, h=elements)
@settings(max_examples=100)
def test_characters_are_class_functions(
    rep: Irrep, g: GroupElement, h: GroupElement
) -> None:
    """Verify ``χ(h g h⁻¹) = χ(g)``."""
    conjugate = multiply(multiply(h, g), inverse(h))
    assert abs(character(rep, conjugate) - character(rep, g)) < 1e-12


@given(g=elements)
def test_tokens_parse_back(g: GroupElement) -> None:
    """Verify every element's printed token names it."""
    assert parse_element(g.token) is g
