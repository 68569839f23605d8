"""Hypothesis strategies for polynomials, carriers and finite relations."""

from __future__ import annotations

from hypothesis import strategies as st

from kctapes.polynomial import Monomial, Polynomial
from kctapes.relations import Carrier, FinRel

SORTS = ("A", "B")

monomials = st.lists(st.sampled_from(SORTS), max_size=2).map(lambda s: Monomial(tuple(s)))
polynomials = st.lists(monomials, max_size=3).map(lambda m: Polynomial(tuple(m)))
small_polynomials = st.lists(monomials, min_size=1, max_size=2).map(
    lambda m: Polynomial(tuple(m))
)
sizes = st.fixed_dictionaries({sort: st.integers(min_value=1, max_value=2) for sort in SORTS})


@st.composite
def relations(draw: st.DrawFn, dom: Carrier, cod: Carrier) -> FinRel:
    """Draw any relation between two fixed carriers."""
    if not dom.size or not cod.size:
        return FinRel(dom, cod)
    pairs = draw(
        st.sets(
            st.tuples(
                st.integers(min_value=0, max_value=dom.size - 1),
                st.integers(min_value=0, max_value=cod.size - 1),
            )
        )
    )
    return FinRel.build(dom, cod, pairs)


@st.composite
def endo_relations(draw: st.DrawFn, max_size: int = 4) -> FinRel:
    """Draw a relation on ``A`` with ``|A| ≤ max_size``."""
    size = draw(st.integers(min_value=1, max_value=max_size))
    carrier = Carrier.of(Polynomial.mono("A"), {"A": size})
    return draw(relations(carrier, carrier))


@st.composite
def relation_pairs(draw: st.DrawFn, max_size: int = 4) -> tuple[FinRel, FinRel]:
    """Draw two relations on the same carrier ``A``."""
    size = draw(st.integers(min_value=1, max_value=max_size))
    carrier = Carrier.of(Polynomial.mono("A"), {"A": size})
    return draw(relations(carrier, carrier)), draw(relations(carrier, carrier))
