"""Syntactic sugar over the core grammar.

Everything here expands eagerly into the core term constructors of
:mod:`kctapes.terms`: whiskerings, the tensor of tapes, distributors and
symmetries on polynomials, the polynomial (co)monoids, traces over
polynomials and the derived lattice and Kleene operations.
"""

from __future__ import annotations

from enum import StrEnum
from typing import Literal

from kctapes.exceptions import TypeMismatch
from kctapes.polynomial import UNIT, Monomial, Polynomial
from kctapes.terms import (
    Bang,
    Circuit,
    CId,
    CIdUnit,
    Cobang,
    Cocopier,
    Codiag,
    Codischarger,
    Copier,
    CSeq,
    CSwap,
    CTensor,
    Diag,
    Discharger,
    Embed,
    Gen,
    Tape,
    TId,
    TIdZero,
    Trace,
    TSeq,
    TSum,
    TSwap,
    circuit_id,
    cseq,
    ctensor,
    tape_id,
    tseq,
    tsum,
)

Side = Literal["left", "right"]


class StructuralKind(StrEnum):
    """Structural tapes indexed by a polynomial."""

    COPIER = "copier"
    DISCHARGER = "discharger"
    COCOPIER = "cocopier"
    CODISCHARGER = "codischarger"
    DIAG = "diag"
    BANG = "bang"
    CODIAG = "codiag"
    COBANG = "cobang"
    SYMMETRY_TENSOR = "symmetryTensor"
    SYMMETRY_SUM = "symmetrySum"
    DISTRIBUTOR_LEFT = "distributorLeft"
    DISTRIBUTOR_LEFT_INVERSE = "distributorLeftInverse"
    TRACE_OVER_POLY = "traceOverPoly"


class DerivedKind(StrEnum):
    """Lattice and Kleene operations derived from the structure."""

    MEET = "meet"
    TOP = "top"
    CONVERSE = "converse"
    JOIN = "join"
    BOT = "bot"
    STAR = "star"


# Circuit layer: structure on monomials.


def circuit_swap(left: Monomial, right: Monomial) -> Circuit:
    """Return the symmetry ``σ_{U,V} : UV → VU`` built from sort swaps."""
    if not left.factors:
        return circuit_id(right)
    if not right.factors:
        return circuit_id(left)
    head, rest = left.factors[0], Monomial(left.factors[1:])
    if rest.factors:
        return CSeq(
            CTensor(CId(head), circuit_swap(rest, right)),
            CTensor(_sort_past(head, right), circuit_id(rest)),
        )
    return _sort_past(head, right)


def _sort_past(sort: str, mono: Monomial) -> Circuit:
    """Move one wire across a monomial: ``σ_{A,V} : AV → VA``."""
    first, rest = mono.factors[0], Monomial(mono.factors[1:])
    swap = CSwap(sort, first)
    if not rest.factors:
        return swap
    return CSeq(CTensor(swap, circuit_id(rest)), CTensor(CId(first), _sort_past(sort, rest)))


def circuit_copier(mono: Monomial) -> Circuit:
    """Return ``◁_U : U → UU``."""
    if not mono.factors:
        return CIdUnit()
    head, rest = mono.factors[0], Monomial(mono.factors[1:])
    if not rest.factors:
        return Copier(head)
    return CSeq(
        CTensor(Copier(head), circuit_copier(rest)),
        ctensor(CId(head), circuit_swap(Monomial((head,)), rest), circuit_id(rest)),
    )


def circuit_cocopier(mono: Monomial) -> Circuit:
    """Return ``▷_U : UU → U``."""
    if not mono.factors:
        return CIdUnit()
    head, rest = mono.factors[0], Monomial(mono.factors[1:])
    if not rest.factors:
        return Cocopier(head)
    return CSeq(
        ctensor(CId(head), circuit_swap(rest, Monomial((head,))), circuit_id(rest)),
        CTensor(Cocopier(head), circuit_cocopier(rest)),
    )


def circuit_discharger(mono: Monomial) -> Circuit:
    """Return ``!_U : U → 1``."""
    return ctensor(*(Discharger(sort) for sort in mono.factors))


def circuit_codischarger(mono: Monomial) -> Circuit:
    """Return ``¡_U : 1 → U``."""
    return ctensor(*(Codischarger(sort) for sort in mono.factors))


def ncopier(mono: Monomial, count: int) -> Circuit:
    """Return the n-fold copier ``U → U^n``.

    ``◁⁰`` is the discharger and ``◁ⁿ⁺¹ = ◁ ; (◁ⁿ ⊗ id)``.
    """
    if count < 0:
        raise ValueError("copier arity must be non-negative")
    if count == 0:
        return circuit_discharger(mono)
    if count == 1:
        return circuit_id(mono)
    return CSeq(circuit_copier(mono), CTensor(ncopier(mono, count - 1), circuit_id(mono)))


# Tape layer: whiskerings.


def whisker_mono(side: Side, mono: Monomial, term: Tape) -> Tape:
    """Whisker a tape by a monomial on the given side (``L_U`` / ``R_U``)."""
    if not mono.factors:
        return term

    def wrap(inner: Monomial) -> Monomial:
        return mono * inner if side == "left" else inner * mono

    def wrap_circuit(circuit: Circuit) -> Circuit:
        if side == "left":
            return CTensor(circuit_id(mono), circuit)
        return CTensor(circuit, circuit_id(mono))

    match term:
        case TId(mono=inner):
            return TId(wrap(inner))
        case TIdZero():
            return term
        case Embed(circuit=circuit):
            return Embed(wrap_circuit(circuit))
        case TSwap(left=left, right=right):
            return TSwap(wrap(left), wrap(right))
        case TSeq(first=first, second=second):
            return TSeq(whisker_mono(side, mono, first), whisker_mono(side, mono, second))
        case TSum(left=left, right=right):
            return TSum(whisker_mono(side, mono, left), whisker_mono(side, mono, right))
        case Bang(mono=inner):
            return Bang(wrap(inner))
        case Diag(mono=inner):
            return Diag(wrap(inner))
        case Cobang(mono=inner):
            return Cobang(wrap(inner))
        case Codiag(mono=inner):
            return Codiag(wrap(inner))
        case Trace(mono=inner, body=body):
            return Trace(wrap(inner), whisker_mono(side, mono, body))
    raise TypeMismatch(f"cannot whisker {type(term).__name__}")


def whisker(side: Side, poly: Polynomial, term: Tape) -> Tape:
    """Whisker a tape by a polynomial.

    Left whiskering is the sum of the monomial whiskerings.  Right whiskering
    conjugates that sum with left distributors, since ``P ⊗ (W ⊕ S)`` is not
    literally ``P ⊗ W ⊕ P ⊗ S``.
    """
    if not poly.summands:
        return TIdZero()
    if poly.is_monomial:
        return whisker_mono(side, poly[0], term)
    head, rest = Polynomial((poly[0],)), poly.tail()
    if side == "left":
        return TSum(whisker_mono("left", poly[0], term), whisker("left", rest, term))
    return tseq(
        distributor(term.dom, head, rest),
        TSum(whisker_mono("right", poly[0], term), whisker("right", rest, term)),
        distributor_inverse(term.cod, head, rest),
    )


def tensor_tapes(first: Tape, second: Tape) -> Tape:
    """Return ``t1 ⊗ t2 = L_P(t2) ; R_S(t1)`` for ``t1 : P → Q`` and ``t2 : R → S``."""
    return TSeq(whisker("left", first.dom, second), whisker("right", second.cod, first))


# Tape layer: symmetries and distributors on polynomials.


def sum_swap(left: Polynomial, right: Polynomial) -> Tape:
    """Return ``σ⊕_{P,Q} : P ⊕ Q → Q ⊕ P``."""
    if not left.summands:
        return tape_id(right)
    if not right.summands:
        return tape_id(left)
    head, rest = left[0], left.tail()
    if not rest.summands:
        return _summand_past(head, right)
    return TSeq(
        TSum(TId(head), sum_swap(rest, right)),
        TSum(_summand_past(head, right), tape_id(rest)),
    )


def _summand_past(mono: Monomial, poly: Polynomial) -> Tape:
    """Move one summand below a polynomial: ``U ⊕ Q → Q ⊕ U``."""
    first, rest = poly[0], poly.tail()
    swap = TSwap(mono, first)
    if not rest.summands:
        return swap
    return TSeq(TSum(swap, tape_id(rest)), TSum(TId(first), _summand_past(mono, rest)))


def distributor(left: Polynomial, mid: Polynomial, right: Polynomial) -> Tape:
    """Return ``δˡ_{P,Q,R} : P ⊗ (Q ⊕ R) → P ⊗ Q ⊕ P ⊗ R``."""
    if not left.summands:
        return TIdZero()
    if not mid.summands or not right.summands:
        return tape_id(left * (mid + right))
    head, rest = Polynomial((left[0],)), left.tail()
    if not rest.summands:
        return tape_id(head * (mid + right))
    return TSeq(
        TSum(tape_id(head * (mid + right)), distributor(rest, mid, right)),
        tsum(
            tape_id(head * mid),
            sum_swap(head * right, rest * mid),
            tape_id(rest * right),
        ),
    )


def distributor_inverse(left: Polynomial, mid: Polynomial, right: Polynomial) -> Tape:
    """Return ``δˡ⁻¹_{P,Q,R} : P ⊗ Q ⊕ P ⊗ R → P ⊗ (Q ⊕ R)``."""
    if not left.summands:
        return TIdZero()
    if not mid.summands or not right.summands:
        return tape_id(left * (mid + right))
    head, rest = Polynomial((left[0],)), left.tail()
    if not rest.summands:
        return tape_id(head * (mid + right))
    return TSeq(
        tsum(
            tape_id(head * mid),
            sum_swap(rest * mid, head * right),
            tape_id(rest * right),
        ),
        TSum(tape_id(head * (mid + right)), distributor_inverse(rest, mid, right)),
    )


def tensor_swap(left: Polynomial, right: Polynomial) -> Tape:
    """Return ``σ⊗_{P,Q} : P ⊗ Q → Q ⊗ P``."""
    if not right.summands:
        return TIdZero()
    head, rest = Polynomial((right[0],)), right.tail()
    swaps = tsum(*(Embed(circuit_swap(mono, right[0])) for mono in left.summands))
    if not rest.summands:
        return swaps
    return TSeq(distributor(left, head, rest), TSum(swaps, tensor_swap(left, rest)))


# Tape layer: polynomial (co)monoids.


def diag(poly: Polynomial) -> Tape:
    """Return ``◁_P : P → P ⊕ P``."""
    if not poly.summands:
        return TIdZero()
    head, rest = poly[0], poly.tail()
    if not rest.summands:
        return Diag(head)
    return TSeq(
        TSum(Diag(head), diag(rest)),
        tsum(TId(head), sum_swap(Polynomial((head,)), rest), tape_id(rest)),
    )


def codiag(poly: Polynomial) -> Tape:
    """Return ``▷_P : P ⊕ P → P``."""
    if not poly.summands:
        return TIdZero()
    head, rest = poly[0], poly.tail()
    if not rest.summands:
        return Codiag(head)
    return TSeq(
        tsum(TId(head), sum_swap(rest, Polynomial((head,))), tape_id(rest)),
        TSum(Codiag(head), codiag(rest)),
    )


def bang(poly: Polynomial) -> Tape:
    """Return ``!_P : P → 0``."""
    return tsum(*(Bang(mono) for mono in poly.summands))


def cobang(poly: Polynomial) -> Tape:
    """Return ``¡_P : 0 → P``."""
    return tsum(*(Cobang(mono) for mono in poly.summands))


def copier(poly: Polynomial) -> Tape:
    """Return ``◁_P : P → P ⊗ P``."""
    if not poly.summands:
        return TIdZero()
    head, rest = poly[0], poly.tail()
    if not rest.summands:
        return Embed(circuit_copier(head))
    head_poly = Polynomial((head,))
    return tsum(
        Embed(circuit_copier(head)),
        cobang(head_poly * rest),
        TSeq(
            TSum(cobang(rest * head_poly), copier(rest)),
            distributor_inverse(rest, head_poly, rest),
        ),
    )


def cocopier(poly: Polynomial) -> Tape:
    """Return ``▷_P : P ⊗ P → P``."""
    if not poly.summands:
        return TIdZero()
    head, rest = poly[0], poly.tail()
    if not rest.summands:
        return Embed(circuit_cocopier(head))
    head_poly = Polynomial((head,))
    return tsum(
        Embed(circuit_cocopier(head)),
        bang(head_poly * rest),
        TSeq(
            distributor(rest, head_poly, rest),
            TSum(bang(rest * head_poly), cocopier(rest)),
        ),
    )


def discharger(poly: Polynomial) -> Tape:
    """Return ``!_P : P → 1``."""
    if not poly.summands:
        return Cobang(UNIT)
    head, rest = poly[0], poly.tail()
    if not rest.summands:
        return Embed(circuit_discharger(head))
    return TSeq(TSum(Embed(circuit_discharger(head)), discharger(rest)), Codiag(UNIT))


def codischarger(poly: Polynomial) -> Tape:
    """Return ``¡_P : 1 → P``."""
    if not poly.summands:
        return Bang(UNIT)
    head, rest = poly[0], poly.tail()
    if not rest.summands:
        return Embed(circuit_codischarger(head))
    return TSeq(Diag(UNIT), TSum(Embed(circuit_codischarger(head)), codischarger(rest)))


def trace_poly(poly: Polynomial, term: Tape) -> Tape:
    """Trace out a whole polynomial: ``tr_{U ⊕ P} t = tr_P tr_U t``."""
    for mono in poly.summands:
        term = Trace(mono, term)
    return term


def structural(kind: StructuralKind | str, poly: Polynomial, *args: Polynomial | Tape) -> Tape:
    """Build the fully expanded structural tape of ``kind`` indexed by ``poly``.

    ``symmetryTensor`` and ``symmetrySum`` take the second polynomial,
    ``distributorLeft``/``distributorLeftInverse`` take two more, and
    ``traceOverPoly`` takes the tape to trace.
    """
    kind = StructuralKind(kind)
    simple = {
        StructuralKind.COPIER: copier,
        StructuralKind.DISCHARGER: discharger,
        StructuralKind.COCOPIER: cocopier,
        StructuralKind.CODISCHARGER: codischarger,
        StructuralKind.DIAG: diag,
        StructuralKind.BANG: bang,
        StructuralKind.CODIAG: codiag,
        StructuralKind.COBANG: cobang,
    }
    if kind in simple:
        return simple[kind](poly)
    if kind is StructuralKind.TRACE_OVER_POLY:
        (body,) = args
        if not isinstance(body, Tape):
            raise TypeMismatch("traceOverPoly expects a tape")
        return trace_poly(poly, body)
    polys = [arg for arg in args if isinstance(arg, Polynomial)]
    if kind is StructuralKind.SYMMETRY_TENSOR:
        return tensor_swap(poly, *polys)
    if kind is StructuralKind.SYMMETRY_SUM:
        return sum_swap(poly, *polys)
    if kind is StructuralKind.DISTRIBUTOR_LEFT:
        return distributor(poly, *polys)
    return distributor_inverse(poly, *polys)


# Derived operations.


def _same_type(first: Tape, second: Tape, what: str) -> None:
    if (first.dom, first.cod) != (second.dom, second.cod):
        raise TypeMismatch(
            f"{what} needs equal types, got {first.dom} → {first.cod} "
            f"and {second.dom} → {second.cod}"
        )


def meet(first: Tape, second: Tape) -> Tape:
    """Return ``t1 ⊓ t2 = ◁_P ; (t1 ⊗ t2) ; ▷_Q``."""
    _same_type(first, second, "meet")
    return tseq(copier(first.dom), tensor_tapes(first, second), cocopier(first.cod))


def top(dom: Polynomial, cod: Polynomial) -> Tape:
    """Return ``⊤_{P,Q} = !_P ; ¡_Q``."""
    return TSeq(discharger(dom), codischarger(cod))


def join(first: Tape, second: Tape) -> Tape:
    """Return ``t1 ⊔ t2 = ◁_P ; (t1 ⊕ t2) ; ▷_Q``."""
    _same_type(first, second, "join")
    return tseq(diag(first.dom), TSum(first, second), codiag(first.cod))


def bot(dom: Polynomial, cod: Polynomial) -> Tape:
    """Return ``⊥_{P,Q} = !_P ; ¡_Q`` on the additive structure."""
    return TSeq(bang(dom), cobang(cod))


def star(term: Tape) -> Tape:
    """Return ``t* = tr_P((t ⊕ id_P) ; ▷_P ; ◁_P)``."""
    if term.dom != term.cod:
        raise TypeMismatch(f"star needs an endo tape, got {term.dom} → {term.cod}")
    poly = term.dom
    return trace_poly(poly, tseq(TSum(term, tape_id(poly)), codiag(poly), diag(poly)))


def converse_circuit(circuit: Circuit) -> Circuit:
    """Mirror a circuit left to right."""
    match circuit:
        case CId() | CIdUnit():
            return circuit
        case CSwap(left=left, right=right):
            return CSwap(right, left)
        case CSeq(first=first, second=second):
            return CSeq(converse_circuit(second), converse_circuit(first))
        case CTensor(left=left, right=right):
            return CTensor(converse_circuit(left), converse_circuit(right))
        case Discharger(sort=sort):
            return Codischarger(sort)
        case Codischarger(sort=sort):
            return Discharger(sort)
        case Copier(sort=sort):
            return Cocopier(sort)
        case Cocopier(sort=sort):
            return Copier(sort)
        case Gen(arity=arity, coarity=coarity):
            return _generator_converse(circuit, arity, coarity)
    raise TypeMismatch(f"cannot mirror {type(circuit).__name__}")


def _generator_converse(gen: Circuit, arity: Monomial, coarity: Monomial) -> Circuit:
    """Bend a generator ``s : U → V`` into ``s† : V → U`` with cups and caps."""
    id_u, id_v = circuit_id(arity), circuit_id(coarity)
    return cseq(
        CTensor(circuit_codischarger(arity), id_v),
        CTensor(circuit_copier(arity), id_v),
        ctensor(id_u, gen, id_v),
        CTensor(id_u, circuit_cocopier(coarity)),
        CTensor(id_u, circuit_discharger(coarity)),
    )


def converse(term: Tape) -> Tape:
    """Mirror a tape left to right; semantically the relational converse."""
    match term:
        case TId() | TIdZero():
            return term
        case Embed(circuit=circuit):
            return Embed(converse_circuit(circuit))
        case TSwap(left=left, right=right):
            return TSwap(right, left)
        case TSeq(first=first, second=second):
            return TSeq(converse(second), converse(first))
        case TSum(left=left, right=right):
            return TSum(converse(left), converse(right))
        case Bang(mono=mono):
            return Cobang(mono)
        case Cobang(mono=mono):
            return Bang(mono)
        case Diag(mono=mono):
            return Codiag(mono)
        case Codiag(mono=mono):
            return Diag(mono)
        case Trace(mono=mono, body=body):
            return Trace(mono, converse(body))
    raise TypeMismatch(f"cannot mirror {type(term).__name__}")


def derived(kind: DerivedKind | str, *args: Tape | Polynomial) -> Tape:
    """Dispatch to the derived operation named by ``kind``."""
    kind = DerivedKind(kind)
    tapes = [arg for arg in args if isinstance(arg, Tape)]
    polys = [arg for arg in args if isinstance(arg, Polynomial)]
    if kind in (DerivedKind.TOP, DerivedKind.BOT):
        if len(polys) != 2:
            raise TypeMismatch(f"{kind} expects two polynomials")
        return top(*polys) if kind is DerivedKind.TOP else bot(*polys)
    if kind in (DerivedKind.MEET, DerivedKind.JOIN):
        if len(tapes) != 2:
            raise TypeMismatch(f"{kind} expects two tapes")
        return meet(*tapes) if kind is DerivedKind.MEET else join(*tapes)
    if len(tapes) != 1:
        raise TypeMismatch(f"{kind} expects one tape")
    return converse(tapes[0]) if kind is DerivedKind.CONVERSE else star(tapes[0])


def embed(circuit: Circuit) -> Tape:
    """Wrap a circuit in a tape."""
    return Embed(circuit)

