"""Step definitions for encoded_probe.feature."""

from __future__ import annotations

import fractions
import typing as typ

import pytest
from pytest_bdd import given, parsers, scenarios, then, when

from anyon_interferometry import (
    DEFAULT_CONFIGURATION,
    ChargeConfiguration,
    parse_element,
    run_ancilla_free_probe,
    run_encoded_controlled_experiment,
)

if typ.TYPE_CHECKING:
    from anyon_interferometry.hilbert_measure import QubitBasis

scenarios("encoded_probe.feature")


class Context(typ.TypedDict, total=False):
    """Type definition for test context."""

    assignment: ChargeConfiguration
    labels: tuple[float, float, float]
    ancilla: tuple[float, float]


def _fraction(text: str) -> float:
    return float(fractions.Fraction(text))


@given("the encoded charge pair on v1 and v3", target_fixture="context")
def given_encoded_pair() -> Context:
    """Select the default charge placement."""
    return {"assignment": DEFAULT_CONFIGURATION}


@when(parsers.parse('the deterministic gauge transformation "{element}" is applied'))
def when_deterministic(context: Context, element: str) -> None:
    """Run the ancilla-free probe and keep the label statistics."""
    outcome = run_ancilla_free_probe(parse_element(element), context["assignment"])
    context["labels"] = (outcome.p_e, outcome.p_cplus, outcome.p_cminus)


@when(
    parsers.parse(
        'the controlled gauge transformation "{element}" is read in the "{basis}" basis'
    )
)
def when_controlled(context: Context, element: str, basis: str) -> None:
    """Run single-ancilla interferometry on the encoded register."""
    context["ancilla"] = run_encoded_controlled_experiment(
        parse_element(element),
        typ.cast("QubitBasis", basis),
        context["assignment"],
    )


@then(
    parsers.parse(
        "the charged label probabilities should be {p_e}, {p_plus}, {p_minus}"
    )
)
def then_label_probabilities(
    context: Context, p_e: str, p_plus: str, p_minus: str
) -> None:
    """Verify the ``e``, ``c+`` and ``c-`` label probabilities."""
    expected = tuple(_fraction(value) for value in (p_e, p_plus, p_minus))
    assert context["labels"] == pytest.approx(expected, abs=1e-12)


@then(parsers.parse("the ancilla probabilities should be {plus} and {minus}"))
def then_ancilla_probabilities(context: Context, plus: str, minus: str) -> None:
    """Verify the ancilla outcome probabilities."""
    expected = (_fraction(plus), _fraction(minus))
    assert context["ancilla"] == pytest.approx(expected, abs=1e-12)
