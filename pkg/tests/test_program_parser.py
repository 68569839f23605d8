"""Tests for the concrete syntax of programs and triples."""

import pytest

from kctapes.exceptions import ParseError
from kctapes.logics import Quadruple, Triple
from kctapes.program import (
    Abort,
    App,
    Assign,
    Atom,
    Context,
    If,
    NAtom,
    PAnd,
    POr,
    PTrue,
    Seq,
    Skip,
    Var,
    While,
)
from kctapes.program_parser import (
    parse_context,
    parse_expr,
    parse_pred,
    parse_program,
    parse_triple,
)
from tests.helpers import load_text

X = Var("x")


class TestExpressionsAndPredicates:
    """Test expressions and predicates."""

    def test_expressions(self):
        """Test variables, constants and nested applications."""
        assert parse_expr("x") == X
        assert parse_expr("zero()") == App("zero")
        assert parse_expr("g(x, s(y))") == App("g", (X, App("s", (Var("y"),))))

    def test_conjunction_binds_tighter(self):
        """Test that && binds tighter than ||."""
        assert parse_pred("p || q && !r(x)") == POr(Atom("p"), PAnd(Atom("q"), NAtom("r", (X,))))

    def test_parentheses(self):
        """Test grouping of predicates."""
        assert parse_pred("(p || q) && true") == PAnd(POr(Atom("p"), Atom("q")), PTrue())

    @pytest.mark.parametrize("text", ["p &&", "!true", "x :=", "(p"])
    def test_errors(self, text):
        """Test malformed predicates."""
        with pytest.raises(ParseError):
            parse_pred(text)


class TestPrograms:
    """Test commands."""

    def test_sequence_is_left_nested(self):
        """Test that ; builds left-nested sequences."""
        assert parse_program("skip; abort; x := y") == Seq(
            Seq(Skip(), Abort()), Assign("x", Var("y"))
        )

    def test_conditional_and_loop(self):
        """Test if and while with nested bodies."""
        program = parse_program("if eq0(x) then skip else while !eq0(x) do x := s(x) end end")

        assert program == If(
            Atom("eq0", (X,)),
            Skip(),
            While(NAtom("eq0", (X,)), Assign("x", App("s", (X,)))),
        )

    def test_fixtures(self):
        """Test the program files used by the command line tests."""
        assert parse_program(load_text("programs", "increment.imp")) == Assign("x", App("s", (X,)))
        assert isinstance(parse_program(load_text("programs", "reset.imp")), While)

    def test_missing_end(self):
        """Test that the error points at the end of input."""
        text = "while p do skip"

        with pytest.raises(ParseError) as err:
            parse_program(text)

        assert err.value.position == len(text)

    def test_keyword_is_not_a_variable(self):
        """Test that keywords cannot be assigned."""
        with pytest.raises(ParseError) as err:
            parse_program("x := s(x); do := x")

        assert err.value.position == 11


class TestContexts:
    """Test context declarations."""

    def test_parse(self):
        """Test a declaration list and the empty context."""
        assert parse_context("x:A, y : B") == Context.of(("x", "A"), ("y", "B"))
        assert parse_context("") == Context()

    def test_duplicate(self):
        """Test that the duplicate is reported where it occurs."""
        with pytest.raises(ParseError) as err:
            parse_context("x:A, x:A")

        assert err.value.position == 5


class TestTriples:
    """Test triple and quadruple files."""

    def test_hoare_fixture(self):
        """Test the valid Hoare triple file."""
        triple = parse_triple(load_text("triples", "hoare_valid.txt"))

        assert isinstance(triple, Triple)
        assert triple.kind == "hoare"
        assert triple.ctx == Context.of(("x", "A"))
        assert triple.pre == Atom("eq0", (X,))
        assert triple.post == NAtom("eq0", (X,))

    @pytest.mark.parametrize(
        ("text", "kind"),
        [
            ("context x:A [true] skip [true]", "incorrectness"),
            ("context x:A <<true>> skip <<true>>", "sufficient-incorrectness"),
            ("context x:A (true) skip (true)", "necessary"),
        ],
    )
    def test_kinds(self, text, kind):
        """Test that the bracket style selects the logic."""
        assert parse_triple(text).kind == kind

    @pytest.mark.parametrize(
        ("text", "cmd", "post"),
        [
            ("context x:A, y:A (true) x := y (true)", Assign("x", Y), PTrue()),
            (
                "context x:A, y:A (true) x := y (q(x, y))",
                Assign("x", Y),
                Atom("q", (X, Y)),
            ),
            (
                "context x:A, y:A (p(y)) x := f(y) (p(x))",
                Assign("x", App("f", (Y,))),
                Atom("p", (X,)),
            ),
        ],
    )
    def test_necessary_postcondition_after_a_variable(self, text, cmd, post):
        """Test that the final bracket group is the postcondition, not an argument."""
        triple = parse_triple(text)

        assert isinstance(triple, Triple)
        assert (triple.kind, triple.cmd, triple.post) == ("necessary", cmd, post)

    def test_necessary_needs_a_command(self):
        """Test that an empty command is reported where the postcondition opens."""
        with pytest.raises(ParseError) as err:
            parse_triple("context x:A (true) (true)")

        assert err.value.position == 19

    def test_mismatched_brackets(self):
        """Test that a triple must close with its opening style."""
        with pytest.raises(ParseError) as err:
            parse_triple("context x:A {true} skip [true]")

        assert err.value.position == 24

    def test_quadruple_fixture(self):
        """Test the relational quadruple file."""
        quad = parse_triple(load_text("triples", "quadruple.txt"))

        assert isinstance(quad, Quadruple)
        assert quad.left == Assign("x", App("s", (X,)))
        assert quad.right_ctx == Context.of(("u", "A"))

    def test_quadruple_shared_variables(self):
        """Test that the two programs need disjoint contexts."""
        with pytest.raises(ParseError):
            parse_triple("context x:A ~ x:A rel {true} skip ~ skip {true}")

    def test_quadruple_needs_hoare_brackets(self):
        """Test that quadruples only come in the Hoare style."""
        with pytest.raises(ParseError):
            parse_triple("context x:A ~ u:A rel [true] skip ~ skip [true]")
