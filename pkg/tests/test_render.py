"""Tests for DOT and text renderings of terms."""

import pytest

from kctapes.polynomial import Monomial
from kctapes.render import render_dot, render_text
from kctapes.sexpr import parse_tape
from kctapes.terms import Gen
from tests.helpers import load_text


@pytest.fixture(name="square")
def fixture_square():
    """Parse ``R ; R`` as two tapes."""
    return parse_tape(load_text("terms", "square.sexp"))


class TestRenderDot:
    """Test the DOT source."""

    def test_graph(self, square):
        """Test the graph header, the generator boxes and the ports."""
        source = render_dot(square)

        assert source.startswith("digraph tape {")
        assert "rankdir=LR" in source
        assert source.count("label=R ") == 2
        assert source.count("subgraph cluster_") == 2
        assert '"in 0"' in source
        assert '"out 0"' in source

    def test_trace_feedback(self):
        """Test that the traced wire is a dashed edge back to the input."""
        source = render_dot(parse_tape(load_text("terms", "star.sexp")))

        assert '"tr A"' in source
        assert "constraint=false" in source
        assert "style=dashed" in source

    def test_circuit(self):
        """Test rendering a bare circuit under a chosen name."""
        gen = Gen("T", Monomial.of("A", "B"), Monomial.of("C"))

        source = render_dot(gen, name="gen")

        assert source.startswith("digraph gen {")
        assert '"in 1"' in source

    def test_empty_tape(self):
        """Test that a circuit without wires gets a dotted placeholder."""
        source = render_dot(parse_tape("(tape (id1))"))

        assert "style=dotted" in source


class TestRenderText:
    """Test the indented tree."""

    def test_tree(self, square):
        """Test one line per node with its type."""
        lines = render_text(square).splitlines()

        assert lines[0] == "seq : A → A"
        assert lines[1] == "  tape : A → A"
        assert lines[2] == "    gen R : A → A"
        assert len(lines) == 5

    def test_structure_symbols(self):
        """Test the symbols of structural nodes."""
        text = render_text(parse_tape("(tseq (diag (A)) (codiag (A)))"), indent=". ")

        assert text.splitlines()[1:] == [". ◁ : A → A + A", ". ▷ : A + A → A"]
