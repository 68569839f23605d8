"""Tests for the calculus of relations and its encoding into tapes."""

import random

import pytest

from kctapes.calculus import (
    CR_SORT,
    CRConverse,
    CRId,
    CRJoin,
    CRMeet,
    CRSeq,
    CRStar,
    Sym,
    check_cr,
    cr_interpretation,
    cr_signature,
    encode_cr,
    eval_cr,
    parse_cr,
    random_cr,
    symbols,
)
from kctapes.evaluator import evaluate
from kctapes.exceptions import ParseError, UnknownSymbol
from kctapes.options import SearchOptions
from kctapes.polynomial import Polynomial
from kctapes.terms import typecheck

R, S = Sym("R"), Sym("S")


@pytest.fixture(name="cycle")
def fixture_cycle():
    """Return R as the 3-cycle and S as the identity on 0."""
    return cr_interpretation(3, {"R": [(0, 1), (1, 2), (2, 0)], "S": [(0, 0)]})


class TestParse:
    """Test the concrete syntax."""

    def test_precedence(self):
        """Test that ; binds tighter than & which binds tighter than |."""
        assert parse_cr("R | S & R ; S") == CRJoin(R, CRMeet(S, CRSeq(R, S)))

    def test_left_associative(self):
        """Test that binary operators associate to the left."""
        assert parse_cr("R;S;R") == CRSeq(CRSeq(R, S), R)
        assert parse_cr("R | S | R") == CRJoin(CRJoin(R, S), R)

    def test_postfix(self):
        """Test that postfix operators apply left to right."""
        assert parse_cr("R^*") == parse_cr("(R^)*") == CRStar(CRConverse(R))
        assert parse_cr("R*^") == CRConverse(CRStar(R))

    def test_keywords(self):
        """Test constants and identifiers that merely start like one."""
        assert parse_cr("id") == CRId()
        assert parse_cr("idR") == Sym("idR")
        assert str(parse_cr("top & bot")) == "(top & bot)"

    @pytest.mark.parametrize("text", ["R ;", "(R", "R S", "", "R + S"])
    def test_errors(self, text):
        """Test that malformed expressions raise parse errors."""
        with pytest.raises(ParseError):
            parse_cr(text)

    def test_symbols(self):
        """Test that symbols are collected and sorted."""
        expr = parse_cr("(S;R)* | R^ & id")

        assert symbols(expr) == ["R", "S"]
        assert sorted(cr_signature(expr).symbols) == ["R", "S"]


class TestSemantics:
    """Test direct evaluation against the tape encoding."""

    def test_direct(self, cycle):
        """Test a few expressions in the 3-cycle."""
        assert eval_cr(parse_cr("R;R;R"), cycle) == eval_cr(CRId(), cycle)
        assert eval_cr(parse_cr("R^"), cycle) == eval_cr(parse_cr("R;R"), cycle)
        assert len(eval_cr(parse_cr("R*"), cycle)) == 9
        assert len(eval_cr(parse_cr("R & S"), cycle)) == 0

    def test_unknown_symbol(self, cycle):
        """Test that evaluating an uninterpreted symbol fails."""
        with pytest.raises(UnknownSymbol):
            eval_cr(Sym("T"), cycle)

    def test_encoding_is_typed(self):
        """Test that every encoding is a tape A → A."""
        expr = parse_cr("(R | top)^* & bot ; id")
        tape = encode_cr(expr)

        typecheck(tape, cr_signature(expr))
        assert tape.dom == tape.cod == Polynomial.mono(CR_SORT)

    @pytest.mark.parametrize("seed", range(12))
    def test_encoding_agrees(self, seed):
        """Test that the tape encoding evaluates like the expression itself."""
        rng = random.Random(seed)
        expr = random_cr(rng, 3)
        size = rng.randint(1, 3)
        pairs = [(x, y) for x in range(size) for y in range(size)]
        interp = cr_interpretation(
            size,
            {name: [p for p in pairs if rng.random() < 0.4] for name in ("R", "S")},
        )

        assert evaluate(encode_cr(expr), interp) == eval_cr(expr, interp)


class TestCheck:
    """Test countermodel search for relational inclusions."""

    def test_transitivity_refuted(self):
        """Test that R;R ⊆ R fails and the witness names the model."""
        report = check_cr(parse_cr("R;R"), parse_cr("R"), SearchOptions(max_size=2))

        assert not report.holds
        assert report.witness.law == "(R;R) ≤ R"
        assert report.witness.bindings["R"] == "{(0,1),(1,0)}"

    def test_converse_commutes_with_star(self):
        """Test that (R^)* ⊆ (R*)^ survives every small model."""
        report = check_cr(parse_cr("(R^)*"), parse_cr("(R*)^"), SearchOptions(max_size=3))

        assert report.holds
        assert report.detail == "no countermodel up to size 3"

    @pytest.mark.parametrize(
        ("lhs", "rhs"),
        [
            ("R & S", "R"),
            ("R;(S | R)", "R;S | R;R"),
            ("R", "R;R^;R"),
            ("R;S & top", "R;S"),
            ("bot", "R"),
        ],
    )
    def test_valid_inclusions(self, lhs, rhs):
        """Test inclusions valid in every relational model."""
        assert check_cr(parse_cr(lhs), parse_cr(rhs), SearchOptions(max_size=2)).holds

    def test_totality_refuted(self):
        """Test that id ⊆ R;R^ fails for the empty relation on one element."""
        report = check_cr(parse_cr("id"), parse_cr("R;R^"), SearchOptions(max_size=1))

        assert not report.holds
        assert report.witness.bindings == {"|A|": "1", "R": "{}"}
