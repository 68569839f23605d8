"""Tests for theories and their models."""

import pytest

from kctapes.evaluator import check_theory
from kctapes.exceptions import KCTapesTypeError, TypeMismatch
from kctapes.formats import load_interpretation
from kctapes.interpretation import Interpretation
from kctapes.polynomial import Signature
from kctapes.terms import Embed, Gen, TSeq, tape_id
from kctapes.theories import (
    Axiom,
    Theory,
    function_axioms,
    functions_theory,
    kat_theory,
    linear_order_theory,
    theory_from_axioms,
)
from tests.helpers import fixture_path


def _endo(size, pairs, symbol="R"):
    sig = Signature.build(["A"], {symbol: (["A"], ["A"])})
    return Interpretation.from_pairs(
        sig, {"A": size}, {symbol: [((x,), (y,)) for x, y in pairs]}
    )


@pytest.fixture(name="kat")
def fixture_kat():
    """Return one predicate ``p`` on ``A`` and its complement."""
    return kat_theory(["A"], {"p": ["A"]})


class TestLinearOrder:
    """Test the theory of linear orders."""

    def test_order_is_a_model(self):
        """Test that ≤ on three elements is a linear order."""
        order = load_interpretation(fixture_path("interpretations", "order.json"))

        assert check_theory(linear_order_theory(), order).holds

    @pytest.mark.parametrize(
        ("pairs", "law"),
        [
            ([(0, 0)], "refl"),
            ([(0, 0), (0, 1), (1, 1), (1, 2), (2, 2)], "tr"),
            ([(0, 0), (0, 1), (1, 0), (1, 1), (2, 2), (0, 2), (1, 2)], "anti"),
            ([(0, 0), (1, 1), (2, 2)], "lin"),
        ],
    )
    def test_violations(self, pairs, law):
        """Test that each axiom catches its own violation first."""
        report = check_theory(linear_order_theory(), _endo(3, pairs))

        assert report.witness.law == law


class TestFunctions:
    """Test totality and determinism axioms."""

    def test_partial_function(self, counter_signature):
        """Test that a successor without a value at 1 is not total."""
        broken = load_interpretation(fixture_path("interpretations", "broken_counter.json"))
        theory = functions_theory(counter_signature.signature(), ["s"])

        assert check_theory(theory, broken).witness.law == "s total"

    def test_nondeterministic(self):
        """Test that the full relation is not deterministic."""
        full = _endo(2, [(0, 0), (0, 1), (1, 0), (1, 1)], symbol="f")

        report = check_theory(functions_theory(full.signature), full)

        assert report.witness.law == "f deterministic"

    def test_labels(self, counter_signature):
        """Test that each function gets two axioms."""
        labels = [a.label for a in function_axioms(counter_signature.signature(), ["s"])]

        assert labels == ["s deterministic", "s total"]


class TestKAT:
    """Test predicates with complements."""

    def test_genuine_complement(self, kat):
        """Test that a complement pair is a model."""
        interp = Interpretation.from_pairs(
            kat.signature, {"A": 2}, {"p": [((0,), ())], "!p": [((1,), ())]}
        )

        assert check_theory(kat, interp).holds

    @pytest.mark.parametrize(
        ("bar", "law"),
        [([], "p EM (≥)"), ([((0,), ()), ((1,), ())], "p NC (≤)")],
    )
    def test_fake_complement(self, kat, bar, law):
        """Test excluded middle and non-contradiction."""
        interp = Interpretation.from_pairs(
            kat.signature, {"A": 2}, {"p": [((0,), ())], "!p": bar}
        )

        assert check_theory(kat, interp).witness.law == law


class TestAxioms:
    """Test building axioms and theories."""

    def test_mismatched_sides(self, r_tape):
        """Test that both sides need the same type."""
        with pytest.raises(TypeMismatch):
            Axiom(r_tape, tape_id(r_tape.dom + r_tape.dom))

    def test_undeclared_symbol(self, endo_signature, r_tape):
        """Test that axioms are typechecked against the signature."""
        other = Embed(Gen("T", r_tape.circuit.dom, r_tape.circuit.cod))

        with pytest.raises(KCTapesTypeError):
            Theory(endo_signature, (Axiom(r_tape, other),))

    def test_from_axioms(self, endo_signature, r_tape, s_tape, swap_interp):
        """Test positional labels and equalities checked both ways."""
        theory = theory_from_axioms(
            endo_signature, [(r_tape, r_tape, "eq"), (TSeq(r_tape, r_tape), s_tape, "leq")]
        )

        report = check_theory(theory, swap_interp)

        assert report.witness.law == "axiom 1"

    def test_extend(self, endo_signature, r_tape):
        """Test the union of two theories."""
        first = theory_from_axioms(endo_signature, [(r_tape, r_tape, "eq")])

        union = first.extend(linear_order_theory())

        assert len(union.axioms) == 5
        assert union.signature.symbols.keys() == {"R", "S"}
