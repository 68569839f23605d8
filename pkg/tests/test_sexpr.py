"""Tests for the S-expression dump and parser."""

import pytest

from kctapes.exceptions import CompositionMismatch, ParseError, UnknownSymbol
from kctapes.polynomial import Monomial, Polynomial, Signature
from kctapes.sexpr import dump, parse_circuit, parse_tape, parse_term
from kctapes.sugar import converse, copier, join, star
from kctapes.terms import Copier, CSeq, Embed, Gen, TIdZero
from tests.helpers import load_text


@pytest.fixture(name="square_text")
def fixture_square_text():
    """Load the ``R ; R`` term."""
    return load_text("terms", "square.sexp")


class TestDump:
    """Test single-line dumps."""

    def test_dump_circuit(self):
        """Test generators with explicit (co)arities."""
        term = CSeq(Copier("A"), Gen("R", Monomial.of("A", "A"), Monomial()))

        assert dump(term) == "(seq (copy A) (gen R (A A) ()))"

    def test_dump_tape(self):
        """Test tape constructors and the empty sum."""
        assert dump(TIdZero()) == "(tid0)"
        assert dump(copier(Polynomial.mono("A"))) == "(tape (copy A))"

    @pytest.mark.parametrize(
        "build",
        [
            pytest.param(lambda r, s: join(r, s), id="join"),
            pytest.param(lambda r, s: star(r), id="star"),
            pytest.param(lambda r, s: converse(r), id="converse"),
            pytest.param(
                lambda r, s: copier(Polynomial.mono("A") + Polynomial.mono("B")), id="copier"
            ),
        ],
    )
    def test_dump_parses_back(self, r_tape, s_tape, build):
        """Test that parsing a dump gives back the same term."""
        term = build(r_tape, s_tape)

        assert parse_tape(dump(term)) == term


class TestParse:
    """Test the reader and builder."""

    def test_parse_file(self, square_text):
        """Test parsing a fixture term."""
        term = parse_tape(square_text)

        assert term.dom == Polynomial.mono("A")
        assert dump(term) == square_text.strip()

    def test_short_generators_need_a_signature(self):
        """Test that ``(gen R)`` looks up the (co)arity."""
        sig = Signature.build(["A"], {"R": (["A"], ["A"])})

        assert parse_circuit("(gen R)", sig) == Gen("R", Monomial.of("A"), Monomial.of("A"))
        with pytest.raises(ParseError):
            parse_circuit("(gen R)")
        with pytest.raises(UnknownSymbol):
            parse_circuit("(gen S)", sig)

    def test_parse_term_accepts_circuits(self):
        """Test that a bare circuit is embedded."""
        assert parse_term("(copy A)") == Embed(Copier("A"))
        assert parse_term("(tape (copy A))") == Embed(Copier("A"))

    @pytest.mark.parametrize(
        ("text", "position"),
        [
            pytest.param("(tseq (tid (A))", 15, id="unclosed"),
            pytest.param("(tid (A)))", 9, id="extra-paren"),
            pytest.param("(tid (A)) (tid (A))", 10, id="trailing"),
            pytest.param("(frob (A))", 0, id="unknown-head"),
            pytest.param("(tid A)", 5, id="sort-list-expected"),
            pytest.param("", 0, id="empty"),
        ],
    )
    def test_parse_errors(self, text, position):
        """Test that malformed input reports its position."""
        with pytest.raises(ParseError) as err:
            parse_tape(text)

        assert err.value.position == position

    def test_ill_typed_input(self):
        """Test that typing errors surface from construction."""
        with pytest.raises(CompositionMismatch):
            parse_tape(load_text("terms", "ill_typed.sexp"))
