"""Tests for monomials, polynomials and signatures."""

import pytest
from hypothesis import given

from kctapes.exceptions import ParseError, SignatureError, UnknownSymbol
from kctapes.polynomial import (
    ONE,
    UNIT,
    ZERO,
    Monomial,
    Polynomial,
    Signature,
    parse_monomial,
    parse_polynomial,
    power,
)
from tests.strategies import polynomials


class TestPolynomialProduct:
    """Test the i-major product and its algebra."""

    def test_product_is_i_major(self):
        """Test that (A ⊕ B) ⊗ (C ⊕ D) orders summands row by row."""
        left = Polynomial.of(Monomial.of("A"), Monomial.of("B"))
        right = Polynomial.of(Monomial.of("C"), Monomial.of("D"))

        product = left * right

        assert [str(m) for m in product] == ["A*C", "A*D", "B*C", "B*D"]

    def test_units(self):
        """Test that 1 is neutral and 0 absorbing for the product."""
        poly = parse_polynomial("A*B + C")

        assert ONE * poly == poly
        assert poly * ONE == poly
        assert ZERO * poly == ZERO
        assert poly * ZERO == ZERO

    @given(polynomials, polynomials, polynomials)
    def test_product_associates(self, p, q, r):
        """Test that the product is associative on the nose."""
        assert (p * q) * r == p * (q * r)

    @given(polynomials, polynomials, polynomials)
    def test_product_distributes_on_the_left(self, p, q, r):
        """Test that (P ⊕ Q) ⊗ R is literally P ⊗ R ⊕ Q ⊗ R."""
        assert (p + q) * r == p * r + q * r

    @given(polynomials, polynomials)
    def test_summand_count_multiplies(self, p, q):
        """Test that the product has |P|·|Q| summands."""
        assert len(p * q) == len(p) * len(q)

    def test_right_distribution_is_not_literal(self):
        """Test that P ⊗ (Q ⊕ R) is P ⊗ Q ⊕ P ⊗ R only for a monomial P."""
        a, b, c = (Polynomial.mono(s) for s in "ABC")
        two = Polynomial.of(Monomial.of("A"), Monomial.of("B"))

        assert a * (b + c) == a * b + a * c
        assert two * (b + c) != two * b + two * c

    def test_power(self):
        """Test repeated monomial products."""
        assert power(Monomial.of("A", "B"), 2) == Monomial.of("A", "B", "A", "B")
        assert power(Monomial.of("A"), 0) == UNIT


class TestParsing:
    """Test the textual forms of monomials and polynomials."""

    @pytest.mark.parametrize(
        ("text", "expected"),
        [
            ("0", ZERO),
            ("1", ONE),
            ("A", Polynomial.mono("A")),
            ("A*B + 1 + C", Polynomial.of(Monomial.of("A", "B"), UNIT, Monomial.of("C"))),
            (" A * 1 * B ", Polynomial.mono("A", "B")),
        ],
    )
    def test_parse_polynomial(self, text, expected):
        """Test accepted polynomial syntax."""
        assert parse_polynomial(text) == expected

    def test_str_round_trip(self):
        """Test that printing gives back parseable text."""
        poly = Polynomial.of(Monomial.of("A", "B"), UNIT)

        assert str(poly) == "A*B + 1"
        assert parse_polynomial(str(poly)) == poly
        assert str(ZERO) == "0"

    @pytest.mark.parametrize(
        "text", ["", "  ", "A*2x", "A-B", "A +", "A + + B", "+ A", "A *", "A + 0"]
    )
    def test_parse_errors(self, text):
        """Test that malformed input raises ParseError."""
        with pytest.raises(ParseError):
            parse_polynomial(text)

    def test_empty_summand_position(self):
        """Test that a missing summand is reported where it should start."""
        with pytest.raises(ParseError) as err:
            parse_polynomial("A + + B")

        assert err.value.position == 4

    def test_parse_monomial_unit(self):
        """Test that the empty and unit monomials coincide."""
        assert parse_monomial("1") == UNIT
        assert parse_monomial("") == UNIT


class TestSignature:
    """Test signature validation."""

    def test_build_and_lookup(self):
        """Test that symbols are typed by monomials."""
        sig = Signature.build(["A", "B"], {"R": (["A"], ["B", "A"])})

        assert sig.symbol("R") == (Monomial.of("A"), Monomial.of("B", "A"))

    def test_unknown_symbol(self):
        """Test that undeclared symbols raise UnknownSymbol."""
        sig = Signature.build(["A"])

        with pytest.raises(UnknownSymbol):
            sig.symbol("R")

    def test_undeclared_sort(self):
        """Test that symbols must use declared sorts."""
        with pytest.raises(SignatureError, match="undeclared sorts"):
            Signature.build(["A"], {"R": (["A"], ["B"])})

    @pytest.mark.parametrize("name", ["1A", "R S", "!!R"])
    def test_invalid_symbol_name(self, name):
        """Test that symbol names follow the identifier syntax."""
        with pytest.raises(SignatureError):
            Signature.build(["A"], {name: (["A"], ["A"])})

    def test_complement_names_are_allowed(self):
        """Test that a single leading ``!`` is accepted."""
        sig = Signature.build(["A"], {"!p": (["A"], [])})

        assert sig.symbol("!p") == (Monomial.of("A"), UNIT)

    def test_extend(self):
        """Test merging signatures and rejecting conflicting types."""
        first = Signature.build(["A"], {"R": (["A"], ["A"])})
        second = Signature.build(["B"], {"S": (["B"], ["B"])})
        clash = Signature.build(["A"], {"R": (["A"], [])})

        merged = first.extend(second)

        assert merged.sorts == frozenset({"A", "B"})
        assert set(merged.symbols) == {"R", "S"}
        with pytest.raises(SignatureError, match="two types"):
            first.extend(clash)
