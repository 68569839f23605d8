"""Tests for the evaluator and the inclusion checks."""

import pytest

from kctapes import relations as rel
from kctapes.evaluator import check_equality, check_inclusion, check_theory, evaluate
from kctapes.exceptions import TypeMismatch, UnknownSymbol
from kctapes.formats import load_interpretation
from kctapes.interpretation import Interpretation
from kctapes.polynomial import Monomial, Polynomial, Signature
from kctapes.sexpr import parse_tape
from kctapes.sugar import (
    bot,
    cocopier,
    converse,
    copier,
    diag,
    discharger,
    join,
    meet,
    star,
    sum_swap,
    tensor_swap,
    tensor_tapes,
    top,
)
from kctapes.terms import Embed, Gen, TSeq
from kctapes.theories import linear_order_theory
from tests.helpers import fixture_path, load_text

MIXED = Polynomial.of(Monomial.of("A"), Monomial.of("A", "A"), Monomial())


@pytest.fixture(name="order_interp")
def fixture_order_interp():
    """Load the order ``≤`` on three elements."""
    return load_interpretation(fixture_path("interpretations", "order.json"))


class TestEvaluate:
    """Test the meaning of terms."""

    def test_square_of_swap(self, swap_interp):
        """Test that the swap composed with itself is the identity."""
        term = parse_tape(load_text("terms", "square.sexp"))

        meaning = evaluate(term, swap_interp)

        assert meaning == rel.identity(swap_interp.carrier(Monomial.of("A")))
        assert str(meaning) == "{(0,0),(1,1)}"

    def test_star_through_trace(self, swap_interp):
        """Test that the traced loop computes the closure."""
        term = parse_tape(load_text("terms", "star.sexp"))
        full = swap_interp.carrier(Monomial.of("A"))

        assert evaluate(term, swap_interp) == rel.full(full, full)

    @pytest.mark.parametrize("build", [copier, cocopier, discharger, diag])
    def test_polynomial_structure(self, swap_interp, build):
        """Test that structure on a polynomial means the relational structure."""
        carrier = swap_interp.carrier(MIXED)

        expected = rel.generator(build.__name__, carrier)

        assert evaluate(build(MIXED), swap_interp) == expected

    def test_symmetries(self, swap_interp):
        """Test both symmetries on polynomials."""
        p = Polynomial.of(Monomial.of("A"), Monomial())
        q = Polynomial.of(Monomial.of("A", "A"))
        cp, cq = swap_interp.carrier(p), swap_interp.carrier(q)

        assert evaluate(sum_swap(p, q), swap_interp) == rel.sum_swap(cp, cq)
        assert evaluate(tensor_swap(p, q), swap_interp) == rel.tensor_swap(cp, cq)

    def test_derived_operations(self, swap_interp, r_tape, s_tape):
        """Test that the derived operations mean the relational ones."""
        r = swap_interp.relation("R")
        s = swap_interp.relation("S")
        a = Polynomial.mono("A")
        carrier = swap_interp.carrier(a)

        assert evaluate(meet(r_tape, s_tape), swap_interp) == r & s
        assert evaluate(join(r_tape, s_tape), swap_interp) == r | s
        assert evaluate(converse(r_tape), swap_interp) == r.converse()
        assert evaluate(star(s_tape), swap_interp) == rel.star(s)
        assert evaluate(top(a, a), swap_interp) == rel.full(carrier, carrier)
        assert evaluate(bot(a, a), swap_interp) == rel.empty(carrier, carrier)
        assert evaluate(tensor_tapes(r_tape, s_tape), swap_interp) == rel.tensor(r, s)

    def test_unknown_symbol(self, swap_interp):
        """Test that uninterpreted generators raise UnknownSymbol."""
        term = Embed(Gen("T", Monomial.of("A"), Monomial.of("A")))

        with pytest.raises(UnknownSymbol):
            evaluate(term, swap_interp)


class TestChecks:
    """Test inclusion, equality and theory checks."""

    def test_inclusion_witness(self, swap_interp, r_tape):
        """Test that a failing inclusion names the least missing pair."""
        report = check_inclusion(r_tape, TSeq(r_tape, r_tape), swap_interp, law="R ≤ R;R")

        assert not report.holds
        assert report.witness.law == "R ≤ R;R"
        assert (report.witness.source, report.witness.target) == ("0", "1")

    def test_equality(self, swap_interp, r_tape):
        """Test an equality and its failing direction."""
        assert check_equality(converse(r_tape), r_tape, swap_interp).holds

        report = check_equality(r_tape, TSeq(r_tape, r_tape), swap_interp, law="swap")

        assert report.witness.law == "swap (≤)"

    def test_types_must_agree(self, swap_interp, r_tape):
        """Test that sides of different types cannot be compared."""
        with pytest.raises(TypeMismatch):
            check_inclusion(r_tape, copier(Polynomial.mono("A")), swap_interp)

    def test_theory(self, order_interp, swap_interp):
        """Test the linear order axioms on a chain and on the swap."""
        theory = linear_order_theory()
        swap_only = Interpretation(
            Signature.build(["A"], {"R": (["A"], ["A"])}),
            swap_interp.sizes,
            {"R": swap_interp.relation("R")},
        )

        assert check_theory(theory, order_interp).holds
        assert check_theory(theory, swap_only).witness.law == "refl"
