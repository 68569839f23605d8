"""Shared pytest fixtures for the test suite."""

from __future__ import annotations

import pytest

from kctapes.interpretation import Interpretation
from kctapes.polynomial import Monomial, Polynomial, Signature
from kctapes.program import Context, ProgramSignature
from kctapes.terms import Embed, Gen, Tape


@pytest.fixture(name="endo_signature")
def fixture_endo_signature() -> Signature:
    """Return one sort ``A`` with relations ``R, S : A → A``."""
    return Signature.build(["A"], {"R": (["A"], ["A"]), "S": (["A"], ["A"])})


@pytest.fixture(name="r_tape")
def fixture_r_tape() -> Tape:
    """Return the tape of the generator ``R : A → A``."""
    return Embed(Gen("R", Monomial.of("A"), Monomial.of("A")))


@pytest.fixture(name="s_tape")
def fixture_s_tape() -> Tape:
    """Return the tape of the generator ``S : A → A``."""
    return Embed(Gen("S", Monomial.of("A"), Monomial.of("A")))


@pytest.fixture(name="swap_interp")
def fixture_swap_interp(endo_signature: Signature) -> Interpretation:
    """Interpret ``A`` as ``{0, 1}``, ``R`` as the swap and ``S`` as ``{(0, 0)}``."""
    return Interpretation.from_pairs(
        endo_signature,
        {"A": 2},
        {"R": [((0,), (1,)), ((1,), (0,))], "S": [((0,), (0,))]},
    )


@pytest.fixture(name="sort_a")
def fixture_sort_a() -> Polynomial:
    """Return the one-summand polynomial ``A``."""
    return Polynomial.mono("A")


@pytest.fixture(name="counter_signature")
def fixture_counter_signature() -> ProgramSignature:
    """Return a successor ``s`` and a zero test ``eq0`` on sort ``A``."""
    return ProgramSignature.build(["A"], {"s": (["A"], "A")}, {"eq0": ["A"]})


@pytest.fixture(name="x_context")
def fixture_x_context() -> Context:
    """Return the context ``x : A``."""
    return Context.of(("x", "A"))
