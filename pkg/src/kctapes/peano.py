"""Natural numbers on tapes: the Peano theory and addition as a traced loop.

Addition ``add : X ⊗ X → X`` runs ``while x > 0 do x := x - 1; y := y + 1``.
The converse of the successor acts both as the test ``x > 0`` and as the
decrement, and the converse of zero as the test ``x = 0``.  Evaluated over
``{0..n}`` with a truncated successor, it is addition restricted to sums
that stay below the bound.
"""

from __future__ import annotations

from kctapes.interpretation import Interpretation
from kctapes.polynomial import Monomial, Polynomial, Signature
from kctapes.relations import FinRel
from kctapes.sugar import codiag, converse_circuit, diag, star
from kctapes.terms import (
    CId,
    CIdUnit,
    Codischarger,
    CTensor,
    Embed,
    Gen,
    Tape,
    Trace,
    TSeq,
    TSum,
    tseq,
)
from kctapes.theories import Axiom, Theory

NAT = "X"
SUCC = "s"
ZERO = "z"

_NAT = Monomial.of(NAT)
_PAIR = Monomial.of(NAT, NAT)


def peano_signature() -> Signature:
    """Return the sort ``X`` with ``s : X → X`` and ``z : 1 → X``."""
    return Signature.build([NAT], {SUCC: ([NAT], [NAT]), ZERO: ([], [NAT])})


def successor() -> Gen:
    """Return the successor generator."""
    return Gen(SUCC, _NAT, _NAT)


def zero() -> Gen:
    """Return the zero generator."""
    return Gen(ZERO, Monomial(), _NAT)


def _step() -> Tape:
    """``s† ⊗ s : XX → XX``, decrement x and increment y."""
    return Embed(CTensor(converse_circuit(successor()), successor()))


def _exit() -> Tape:
    """``z† ⊗ id : XX → X``, test x = 0 and return y."""
    return Embed(CTensor(converse_circuit(zero()), CId(NAT)))


def addition() -> Tape:
    """Return ``add = tr_{XX}(▷ ; ◁ ; (step ⊕ exit))`` of type ``X ⊗ X → X``."""
    pair = Polynomial.of(_PAIR)
    return Trace(_PAIR, tseq(codiag(pair), diag(pair), TSum(_step(), _exit())))


def addition_star() -> Tape:
    """Return the loop as ``step* ; exit``, equal to :func:`addition`."""
    return TSeq(star(_step()), _exit())


def truncated_naturals(bound: int) -> Interpretation:
    """Interpret ``X`` as ``{0..bound}`` with ``s(bound)`` undefined."""
    return Interpretation.from_pairs(
        peano_signature(),
        {NAT: bound + 1},
        {
            SUCC: [((x,), (x + 1,)) for x in range(bound)],
            ZERO: [((), (0,))],
        },
    )


def add_at_zero() -> tuple[Tape, Tape]:
    """Return both sides of ``add(0, y) = y``."""
    return TSeq(Embed(CTensor(zero(), CId(NAT))), addition()), Embed(CId(NAT))


def add_at_successor() -> tuple[Tape, Tape]:
    """Return both sides of ``add(s x, y) = s(add(x, y))``."""
    return (
        TSeq(Embed(CTensor(successor(), CId(NAT))), addition()),
        TSeq(addition(), Embed(successor())),
    )


def agree_where_defined(lhs: FinRel, rhs: FinRel) -> bool:
    """Return whether two relations coincide on the inputs both relate."""
    lhs.check_same_type(rhs)
    common = {x for x, _ in lhs.pairs} & {x for x, _ in rhs.pairs}
    return {p for p in lhs.pairs if p[0] in common} == {p for p in rhs.pairs if p[0] in common}


def peano_theory() -> Theory:
    """Return the theory making ``[s, z] : X ⊕ 1 → X`` an iso with minimal carrier.

    Its only model in relations is the natural numbers, so no finite
    interpretation satisfies it.
    """
    sig = peano_signature()
    nat = Polynomial.of(_NAT)
    case = TSeq(TSum(Embed(successor()), Embed(zero())), codiag(nat))
    back = TSeq(
        diag(nat),
        TSum(Embed(converse_circuit(successor())), Embed(converse_circuit(zero()))),
    )
    reached = TSeq(Embed(zero()), star(Embed(successor())))
    everything = Embed(Codischarger(NAT))
    return Theory(
        sig,
        (
            Axiom(TSeq(back, case), Embed(CId(NAT)), "eq", "iso-1"),
            Axiom(TSeq(case, back), TSum(Embed(CId(NAT)), Embed(CIdUnit())), "eq", "iso-2"),
            Axiom(everything, reached, label="ind"),
        ),
    )
