"""Tests for program syntax, typing and predicate transformations."""

import pytest

from kctapes.exceptions import (
    ArityMismatch,
    SignatureError,
    SortMismatch,
    UnboundVariable,
    UnknownSymbol,
)
from kctapes.polynomial import Monomial, Signature
from kctapes.program import (
    App,
    Assign,
    Atom,
    Context,
    If,
    NAtom,
    PAnd,
    PFalse,
    POr,
    ProgramSignature,
    PTrue,
    Seq,
    Skip,
    Var,
    While,
    assigned_variables,
    conj,
    negate,
    pred_variables,
    seq,
    substitute,
    typecheck_cmd,
    typecheck_expr,
    typecheck_pred,
)

X = Var("x")


@pytest.fixture(name="two_sorts")
def fixture_two_sorts():
    """Return sorts ``A, B`` with ``f : A → B``, ``g : B, B → A`` and ``p ⊆ A × B``."""
    return ProgramSignature.build(
        ["A", "B"],
        {"f": (["A"], "B"), "g": (["B", "B"], "A")},
        {"p": ["A", "B"]},
    )


@pytest.fixture(name="xy_context")
def fixture_xy_context():
    """Return ``x : A, y : B``."""
    return Context.of(("x", "A"), ("y", "B"))


class TestContext:
    """Test typed variable contexts."""

    def test_duplicate_variable(self):
        """Test that a variable may be declared once."""
        with pytest.raises(SignatureError):
            Context.of(("x", "A"), ("x", "B"))

    def test_lookup(self, xy_context):
        """Test positions, sorts and the product monomial."""
        assert xy_context.index("y") == 1
        assert xy_context.sort_of("x") == "A"
        assert xy_context.monomial == Monomial(("A", "B"))
        assert str(xy_context) == "x:A, y:B"

    def test_unbound(self, xy_context):
        """Test that unknown variables are reported."""
        with pytest.raises(UnboundVariable):
            xy_context.index("z")

    def test_split(self):
        """Test splitting around a variable."""
        ctx = Context.of(("x", "A"), ("y", "B"), ("z", "A"))

        before, sort, after = ctx.split("y")

        assert before == Context.of(("x", "A"))
        assert sort == "B"
        assert after == Context.of(("z", "A"))

    def test_concatenation_and_states(self, xy_context):
        """Test joining contexts and rendering states."""
        joined = xy_context + Context.of(("u", "A"))

        assert joined.variables == ("x", "y", "u")
        assert joined.format_state((1, 0, 2)) == "x=1, y=0, u=2"


class TestProgramSignature:
    """Test program signatures and their tape signatures."""

    def test_complements_are_generated(self, counter_signature):
        """Test that every predicate gets its complement symbol."""
        sig = counter_signature.signature()

        assert sorted(sig.symbols) == ["!eq0", "eq0", "s"]
        assert sig.symbol("!eq0") == sig.symbol("eq0")
        assert sig.symbol("s")[1] == Monomial.of("A")

    def test_clash(self):
        """Test that a name cannot be both a function and a predicate."""
        with pytest.raises(SignatureError):
            ProgramSignature.build(["A"], {"p": (["A"], "A")}, {"p": ["A"]})

    def test_declared_complement(self):
        """Test that complements cannot be declared by hand."""
        with pytest.raises(SignatureError):
            ProgramSignature.build(["A"], predicates={"!p": ["A"]})

    def test_from_signature(self, counter_signature):
        """Test reading functions and predicates back from a tape signature."""
        assert ProgramSignature.from_signature(counter_signature.signature()) == (
            counter_signature
        )

    def test_from_signature_rejects_relations(self):
        """Test that symbols with several outputs are neither kind."""
        sig = Signature.build(["A"], {"R": (["A"], ["A", "A"])})

        with pytest.raises(SignatureError):
            ProgramSignature.from_signature(sig)

    def test_theory(self, counter_signature):
        """Test that the program theory is over the tape signature."""
        theory = counter_signature.theory()

        assert theory.signature == counter_signature.signature()
        assert theory.axioms


class TestTyping:
    """Test typing of expressions, predicates and commands."""

    def test_expressions(self, two_sorts, xy_context):
        """Test sorts of variables and applications."""
        assert typecheck_expr(xy_context, App("f", (X,)), two_sorts) == "B"
        assert typecheck_expr(xy_context, App("g", (Var("y"), App("f", (X,)))), two_sorts) == "A"

    @pytest.mark.parametrize(
        ("expr", "error"),
        [
            (App("f", (Var("y"),)), SortMismatch),
            (App("f", ()), ArityMismatch),
            (App("h", (X,)), UnknownSymbol),
            (Var("z"), UnboundVariable),
        ],
    )
    def test_expression_errors(self, two_sorts, xy_context, expr, error):
        """Test the typing errors of expressions."""
        with pytest.raises(error):
            typecheck_expr(xy_context, expr, two_sorts)

    def test_predicates(self, two_sorts, xy_context):
        """Test atoms, complements and connectives."""
        good = POr(Atom("p", (X, Var("y"))), PAnd(NAtom("p", (X, App("f", (X,)))), PTrue()))

        typecheck_pred(xy_context, good, two_sorts)
        with pytest.raises(SortMismatch):
            typecheck_pred(xy_context, Atom("p", (Var("y"), X)), two_sorts)
        with pytest.raises(UnknownSymbol):
            typecheck_pred(xy_context, Atom("q"), two_sorts)

    def test_commands(self, two_sorts, xy_context):
        """Test that assignments respect the sort of the variable."""
        body = Seq(Assign("y", App("f", (X,))), Assign("x", App("g", (Var("y"), Var("y")))))

        typecheck_cmd(xy_context, While(Atom("p", (X, Var("y"))), body), two_sorts)
        with pytest.raises(SortMismatch):
            typecheck_cmd(xy_context, If(PFalse(), Skip(), Assign("x", Var("y"))), two_sorts)


class TestTransformations:
    """Test negation, substitution and variable sets."""

    @pytest.mark.parametrize(
        "pred",
        [
            PTrue(),
            Atom("eq0", (X,)),
            PAnd(Atom("eq0", (X,)), POr(NAtom("eq0", (X,)), PFalse())),
        ],
    )
    def test_negate_is_involution(self, pred):
        """Test that negating twice gives the predicate back."""
        assert negate(negate(pred)) == pred

    def test_de_morgan(self):
        """Test that negation is pushed to the atoms."""
        pred = PAnd(Atom("p"), POr(NAtom("q"), PTrue()))

        assert negate(pred) == POr(NAtom("p"), PAnd(Atom("q"), PFalse()))

    def test_substitute(self, counter_signature, x_context):
        """Test replacing a variable by a term."""
        succ = App("s", (X,))

        result = substitute(Atom("eq0", (X,)), succ, "x", ctx=x_context, sig=counter_signature)

        assert result == Atom("eq0", (succ,))
        assert substitute(App("s", (Var("y"),)), succ, "x") == App("s", (Var("y"),))

    def test_substitute_checks_sorts(self, two_sorts, xy_context):
        """Test that the substituted term must have the sort of the variable."""
        with pytest.raises(SortMismatch):
            substitute(Atom("p", (X, Var("y"))), Var("y"), "x", ctx=xy_context, sig=two_sorts)

    def test_variables(self):
        """Test read and written variables."""
        cmd = seq(Assign("x", App("s", (Var("y"),))), While(Atom("p", (Var("z"),)), Skip()))

        assert assigned_variables(cmd) == {"x"}
        assert pred_variables(conj(Atom("p", (Var("z"),)), NAtom("q", (X,)), PTrue())) == {
            "x",
            "z",
        }
        assert seq() == Skip()
        assert conj() == PTrue()
