"""Tests for the JSON documents of the command line."""

import pytest
from pydantic import ValidationError

from kctapes.exceptions import SignatureError
from kctapes.formats import (
    InequalityDoc,
    InterpretationDoc,
    SignatureDoc,
    TheoryDoc,
    load_inequality,
    load_interpretation,
    load_theory,
)
from kctapes.polynomial import Polynomial
from kctapes.theories import linear_order_theory
from tests.helpers import fixture_path, load_fixture


@pytest.fixture(name="counter_fixture")
def fixture_counter():
    """Load the counter interpretation document."""
    return load_fixture("interpretations", "counter.json")


class TestInterpretationDoc:
    """Test interpretation files."""

    def test_load_fills_complements(self):
        """Test that ``!eq0`` is the complement of ``eq0``."""
        interp = load_interpretation(fixture_path("interpretations", "counter.json"))

        assert interp.element_pairs("!eq0") == [((1,), ())]
        assert interp.relation("s").sorted_pairs() == [(0, 1), (1, 0)]

    def test_describe_round_trip(self, counter_fixture):
        """Test that describing a loaded interpretation keeps its relations."""
        interp = InterpretationDoc.model_validate(counter_fixture).to_interpretation()

        doc = InterpretationDoc.from_interpretation(interp)

        assert doc.sorts == {"A": 2}
        assert doc.symbols["eq0"].pairs == [([0], [])]
        assert doc.symbols["!eq0"].pairs == [([1], [])]

    def test_extra_fields_rejected(self, counter_fixture):
        """Test that unknown keys are validation errors."""
        with pytest.raises(ValidationError):
            InterpretationDoc.model_validate({**counter_fixture, "carriers": {}})

    def test_undeclared_sort(self):
        """Test that symbols over unknown sorts are rejected."""
        doc = InterpretationDoc(sorts={"A": 1}, symbols={"R": {"arity": ["B"], "coarity": []}})

        with pytest.raises(SignatureError):
            doc.to_interpretation()


class TestTheoryDoc:
    """Test theory and inequality files."""

    def test_load_theory(self):
        """Test that axioms parse against the declared signature."""
        theory = load_theory(fixture_path("theories", "order.json"))

        assert [axiom.label for axiom in theory.axioms] == ["reflexive", "transitive"]
        assert theory.axioms[0].kind == "leq"

    def test_from_theory(self):
        """Test dumping a built-in theory."""
        doc = TheoryDoc.from_theory(linear_order_theory())

        expected = SignatureDoc(sorts=["A"], symbols={"R": {"arity": ["A"], "coarity": ["A"]}})

        assert doc.signature == expected
        assert [axiom.label for axiom in doc.axioms] == ["refl", "tr", "anti", "lin"]
        assert len(doc.to_theory().axioms) == 4

    def test_inequality(self):
        """Test that both sides parse and functions are listed."""
        doc = load_inequality(fixture_path("inequalities", "deterministic.json"))

        sig, lhs, rhs = doc.tapes()

        assert doc.functions == ["f"]
        assert lhs.dom == rhs.dom == Polynomial.mono("A")
        assert "f" in sig.symbols

    def test_inequality_needs_both_sides(self):
        """Test that a missing side is a validation error."""
        with pytest.raises(ValidationError):
            InequalityDoc.model_validate({"signature": {"sorts": ["A"]}, "lhs": "(tid (A))"})
