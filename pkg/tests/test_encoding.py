"""Tests for encoding programs into tapes."""

import pytest

from kctapes.encoding import coreflexive, encode_cmd, encode_expr, encode_pred, image
from kctapes.evaluator import evaluate
from kctapes.exceptions import KCTapesTypeError, NotCoreflexive, SortMismatch
from kctapes.formats import load_interpretation
from kctapes.polynomial import Polynomial
from kctapes.program import App, Atom, Context, PFalse, ProgramSignature, PTrue, Var
from kctapes.program_parser import parse_pred, parse_program
from tests.helpers import fixture_path

X = Var("x")


def _meaning(tape, interp):
    relation = evaluate(tape, interp)
    return {(relation.dom.format(x), relation.cod.format(y)) for x, y in relation.pairs}


@pytest.fixture(name="counter")
def fixture_counter():
    """Load ``A = {0, 1}`` with ``s`` the swap and ``eq0 = {0}``."""
    return load_interpretation(fixture_path("interpretations", "counter.json"))


@pytest.fixture(name="xy_context")
def fixture_xy_context():
    """Return ``x : A, y : A``."""
    return Context.of(("x", "A"), ("y", "A"))


class TestExpressionsAndPredicates:
    """Test encodings into circuits."""

    def test_expression(self, counter, counter_signature, x_context):
        """Test that s(s(x)) is the identity."""
        tape = encode_expr(x_context, App("s", (App("s", (X,)),)), counter_signature)

        assert tape.dom == tape.cod == Polynomial.mono("A")
        assert _meaning(tape, counter) == {("0", "0"), ("1", "1")}

    def test_projection(self, counter, counter_signature, xy_context):
        """Test that a variable projects its component."""
        tape = encode_expr(xy_context, Var("y"), counter_signature)

        assert _meaning(tape, counter) == {
            ("(0,0)", "0"),
            ("(0,1)", "1"),
            ("(1,0)", "0"),
            ("(1,1)", "1"),
        }

    @pytest.mark.parametrize(
        ("pred", "expected"),
        [
            (Atom("eq0", (X,)), {("0", "•")}),
            (parse_pred("!eq0(x)"), {("1", "•")}),
            (PTrue(), {("0", "•"), ("1", "•")}),
            (PFalse(), set()),
            (parse_pred("eq0(x) || eq0(s(x))"), {("0", "•"), ("1", "•")}),
            (parse_pred("eq0(x) && eq0(s(x))"), set()),
        ],
    )
    def test_predicates(self, counter, counter_signature, x_context, pred, expected):
        """Test predicates as relations into the unit."""
        assert _meaning(encode_pred(x_context, pred, counter_signature), counter) == expected

    def test_ill_typed(self):
        """Test that typing runs before encoding."""
        ctx = Context.of(("x", "A"), ("b", "B"))
        sig = ProgramSignature.build(["A", "B"], {"s": (["A"], "A")}, {"eq0": ["A"]})

        with pytest.raises(SortMismatch):
            encode_pred(ctx, Atom("eq0", (Var("b"),)), sig)


class TestCommands:
    """Test encodings of commands on the counter model."""

    @pytest.mark.parametrize(
        ("program", "expected"),
        [
            ("skip", {("0", "0"), ("1", "1")}),
            ("abort", set()),
            ("x := s(x)", {("0", "1"), ("1", "0")}),
            ("x := s(x); x := s(x)", {("0", "0"), ("1", "1")}),
            ("if eq0(x) then x := s(x) else skip end", {("0", "1"), ("1", "1")}),
            ("while !eq0(x) do x := s(x) end", {("0", "0"), ("1", "0")}),
            ("while true do skip end", set()),
        ],
    )
    def test_single_variable(self, counter, counter_signature, x_context, program, expected):
        """Test commands over one variable."""
        tape = encode_cmd(x_context, parse_program(program), counter_signature)

        assert _meaning(tape, counter) == expected

    def test_assignment_keeps_other_variables(self, counter, counter_signature, xy_context):
        """Test that y := s(x) only writes y."""
        tape = encode_cmd(xy_context, parse_program("y := s(x)"), counter_signature)

        assert _meaning(tape, counter) == {
            ("(0,0)", "(0,1)"),
            ("(0,1)", "(0,1)"),
            ("(1,0)", "(1,0)"),
            ("(1,1)", "(1,0)"),
        }

    def test_ill_typed_command(self, counter_signature, x_context):
        """Test that unknown variables are rejected."""
        with pytest.raises(KCTapesTypeError):
            encode_cmd(x_context, parse_program("y := x"), counter_signature)


class TestCoreflexives:
    """Test the bridge between predicates and coreflexives."""

    def test_coreflexive(self, counter, counter_signature, x_context):
        """Test that a predicate becomes the identity restricted to it."""
        guard = coreflexive(encode_pred(x_context, Atom("eq0", (X,)), counter_signature))

        assert _meaning(guard, counter) == {("0", "0")}

    def test_image_inverts_coreflexive(self, counter, counter_signature, x_context):
        """Test that the image of c(P) is P."""
        pred = encode_pred(x_context, parse_pred("!eq0(x)"), counter_signature)

        back = image(coreflexive(pred), counter, check=True)

        assert evaluate(back, counter) == evaluate(pred, counter)

    def test_image_checks_coreflexivity(self, counter, counter_signature, x_context):
        """Test that checked images refuse non-coreflexives."""
        step = encode_cmd(x_context, parse_program("x := s(x)"), counter_signature)

        assert _meaning(image(step), counter) == {("0", "•"), ("1", "•")}
        with pytest.raises(NotCoreflexive):
            image(step, counter, check=True)
        with pytest.raises(ValueError):
            image(step, check=True)

    def test_coreflexive_needs_predicate(self, counter_signature, x_context):
        """Test that only tapes into the unit have a coreflexive."""
        step = encode_cmd(x_context, parse_program("x := s(x)"), counter_signature)

        with pytest.raises(KCTapesTypeError):
            coreflexive(step)
