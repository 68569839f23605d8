"""The two-layer term grammar of Kleene-Cartesian tapes.

Circuits form the inner (``⊗``) layer and are typed by monomials; tapes form
the outer (``⊕``) layer and are typed by polynomials.  Every node computes its
type when it is constructed, so an ill-typed term can never exist.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce

from kctapes.exceptions import (
    CompositionMismatch,
    SignatureError,
    TraceShapeMismatch,
    TypeMismatch,
    UnknownSymbol,
)
from kctapes.polynomial import (
    UNIT,
    ZERO,
    Monomial,
    Polynomial,
    Signature,
    as_polynomial,
)


@dataclass(frozen=True, slots=True)
class Circuit:
    """Base class of circuit terms, typed ``dom → cod`` by monomials."""

    dom: Monomial = field(init=False, repr=False, compare=False)
    cod: Monomial = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        dom, cod = self._infer()
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "cod", cod)

    def _infer(self) -> tuple[Monomial, Monomial]:
        raise NotImplementedError


@dataclass(frozen=True, slots=True)
class CId(Circuit):
    """Identity wire on a single sort."""

    sort: str

    def _infer(self) -> tuple[Monomial, Monomial]:
        return Monomial((self.sort,)), Monomial((self.sort,))


@dataclass(frozen=True, slots=True)
class CIdUnit(Circuit):
    """Identity on the unit object ``1`` (the empty diagram)."""

    def _infer(self) -> tuple[Monomial, Monomial]:
        return UNIT, UNIT


@dataclass(frozen=True, slots=True)
class Gen(Circuit):
    """A generator box ``s : arity → coarity``."""

    name: str
    arity: Monomial
    coarity: Monomial

    def _infer(self) -> tuple[Monomial, Monomial]:
        return self.arity, self.coarity


@dataclass(frozen=True, slots=True)
class CSwap(Circuit):
    """Symmetry ``σ_{A,B} : AB → BA`` of two sorts."""

    left: str
    right: str

    def _infer(self) -> tuple[Monomial, Monomial]:
        return Monomial((self.left, self.right)), Monomial((self.right, self.left))


@dataclass(frozen=True, slots=True)
class CSeq(Circuit):
    """Sequential composition ``first ; second``."""

    first: Circuit
    second: Circuit

    def _infer(self) -> tuple[Monomial, Monomial]:
        if self.first.cod != self.second.dom:
            raise CompositionMismatch(
                f"cannot compose {self.first.dom} → {self.first.cod} "
                f"with {self.second.dom} → {self.second.cod}"
            )
        return self.first.dom, self.second.cod


@dataclass(frozen=True, slots=True)
class CTensor(Circuit):
    """Parallel composition ``left ⊗ right``."""

    left: Circuit
    right: Circuit

    def _infer(self) -> tuple[Monomial, Monomial]:
        return self.left.dom * self.right.dom, self.left.cod * self.right.cod


@dataclass(frozen=True, slots=True)
class Discharger(Circuit):
    """Discharger ``!_A : A → 1``."""

    sort: str

    def _infer(self) -> tuple[Monomial, Monomial]:
        return Monomial((self.sort,)), UNIT


@dataclass(frozen=True, slots=True)
class Copier(Circuit):
    """Copier ``◁_A : A → AA``."""

    sort: str

    def _infer(self) -> tuple[Monomial, Monomial]:
        return Monomial((self.sort,)), Monomial((self.sort, self.sort))


@dataclass(frozen=True, slots=True)
class Codischarger(Circuit):
    """Codischarger ``¡_A : 1 → A``."""

    sort: str

    def _infer(self) -> tuple[Monomial, Monomial]:
        return UNIT, Monomial((self.sort,))


@dataclass(frozen=True, slots=True)
class Cocopier(Circuit):
    """Cocopier ``▷_A : AA → A``."""

    sort: str

    def _infer(self) -> tuple[Monomial, Monomial]:
        return Monomial((self.sort, self.sort)), Monomial((self.sort,))


@dataclass(frozen=True, slots=True)
class Tape:
    """Base class of tape terms, typed ``dom → cod`` by polynomials."""

    dom: Polynomial = field(init=False, repr=False, compare=False)
    cod: Polynomial = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        dom, cod = self._infer()
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "cod", cod)

    def _infer(self) -> tuple[Polynomial, Polynomial]:
        raise NotImplementedError


@dataclass(frozen=True, slots=True)
class TId(Tape):
    """Identity tape on a monomial."""

    mono: Monomial

    def _infer(self) -> tuple[Polynomial, Polynomial]:
        return as_polynomial(self.mono), as_polynomial(self.mono)


@dataclass(frozen=True, slots=True)
class TIdZero(Tape):
    """Identity on the zero object (the empty tape)."""

    def _infer(self) -> tuple[Polynomial, Polynomial]:
        return ZERO, ZERO


@dataclass(frozen=True, slots=True)
class Embed(Tape):
    """A circuit wrapped in a single tape."""

    circuit: Circuit

    def _infer(self) -> tuple[Polynomial, Polynomial]:
        return as_polynomial(self.circuit.dom), as_polynomial(self.circuit.cod)


@dataclass(frozen=True, slots=True)
class TSwap(Tape):
    """Tape symmetry ``σ⊕_{U,V} : U ⊕ V → V ⊕ U``."""

    left: Monomial
    right: Monomial

    def _infer(self) -> tuple[Polynomial, Polynomial]:
        return Polynomial((self.left, self.right)), Polynomial((self.right, self.left))


@dataclass(frozen=True, slots=True)
class TSeq(Tape):
    """Sequential composition of tapes."""

    first: Tape
    second: Tape

    def _infer(self) -> tuple[Polynomial, Polynomial]:
        if self.first.cod != self.second.dom:
            raise CompositionMismatch(
                f"cannot compose {self.first.dom} → {self.first.cod} "
                f"with {self.second.dom} → {self.second.cod}"
            )
        return self.first.dom, self.second.cod


@dataclass(frozen=True, slots=True)
class TSum(Tape):
    """Direct sum ``left ⊕ right`` of tapes (tapes stacked vertically)."""

    left: Tape
    right: Tape

    def _infer(self) -> tuple[Polynomial, Polynomial]:
        return self.left.dom + self.right.dom, self.left.cod + self.right.cod


@dataclass(frozen=True, slots=True)
class Bang(Tape):
    """Tape discharger ``!_U : U → 0``."""

    mono: Monomial

    def _infer(self) -> tuple[Polynomial, Polynomial]:
        return as_polynomial(self.mono), ZERO


@dataclass(frozen=True, slots=True)
class Diag(Tape):
    """Tape copier ``◁_U : U → U ⊕ U``."""

    mono: Monomial

    def _infer(self) -> tuple[Polynomial, Polynomial]:
        return as_polynomial(self.mono), Polynomial((self.mono, self.mono))


@dataclass(frozen=True, slots=True)
class Cobang(Tape):
    """Tape codischarger ``¡_U : 0 → U``."""

    mono: Monomial

    def _infer(self) -> tuple[Polynomial, Polynomial]:
        return ZERO, as_polynomial(self.mono)


@dataclass(frozen=True, slots=True)
class Codiag(Tape):
    """Tape cocopier ``▷_U : U ⊕ U → U``."""

    mono: Monomial

    def _infer(self) -> tuple[Polynomial, Polynomial]:
        return Polynomial((self.mono, self.mono)), as_polynomial(self.mono)


@dataclass(frozen=True, slots=True)
class Trace(Tape):
    """Feedback ``tr_U body`` over the first summand ``U``."""

    mono: Monomial
    body: Tape

    def _infer(self) -> tuple[Polynomial, Polynomial]:
        dom, cod = self.body.dom, self.body.cod
        if not dom.summands or not cod.summands:
            raise TraceShapeMismatch(f"cannot trace {self.mono} out of {dom} → {cod}")
        if dom[0] != self.mono or cod[0] != self.mono:
            raise TraceShapeMismatch(
                f"trace over {self.mono} needs {self.mono} ⊕ P → {self.mono} ⊕ Q, "
                f"got {dom} → {cod}"
            )
        return dom.tail(), cod.tail()


Term = Tape | Circuit


def circuit_id(mono: Monomial) -> Circuit:
    """Return the identity circuit on a monomial."""
    if not mono.factors:
        return CIdUnit()
    return ctensor(*(CId(sort) for sort in mono.factors))


def cseq(*circuits: Circuit) -> Circuit:
    """Compose circuits left to right."""
    if not circuits:
        raise TypeMismatch("an empty composite has no type")
    return reduce(CSeq, circuits)


def ctensor(*circuits: Circuit) -> Circuit:
    """Tensor circuits left to right; the empty tensor is ``id_1``."""
    if not circuits:
        return CIdUnit()
    return reduce(CTensor, circuits)


def tape_id(poly: Polynomial) -> Tape:
    """Return the identity tape on a polynomial."""
    return tsum(*(TId(mono) for mono in poly.summands))


def tseq(*tapes: Tape) -> Tape:
    """Compose tapes left to right."""
    if not tapes:
        raise TypeMismatch("an empty composite has no type")
    return reduce(TSeq, tapes)


def tsum(*tapes: Tape) -> Tape:
    """Sum tapes top to bottom; the empty sum is ``id_0``."""
    if not tapes:
        return TIdZero()
    return reduce(TSum, tapes)


def children(term: Term) -> tuple[Term, ...]:
    """Return the immediate subterms of a node."""
    match term:
        case CSeq(first=first, second=second) | TSeq(first=first, second=second):
            return (first, second)
        case CTensor(left=left, right=right) | TSum(left=left, right=right):
            return (left, right)
        case Embed(circuit=circuit):
            return (circuit,)
        case Trace(body=body):
            return (body,)
        case _:
            return ()


def generators(term: Term) -> set[Gen]:
    """Collect every generator occurring in a term."""
    found: set[Gen] = set()
    stack: list[Term] = [term]
    while stack:
        node = stack.pop()
        if isinstance(node, Gen):
            found.add(node)
        stack.extend(children(node))
    return found


def _sorts_of(term: Term) -> frozenset[str]:
    sorts: set[str] = set()
    stack: list[Term] = [term]
    while stack:
        node = stack.pop()
        sorts |= as_polynomial(node.dom).sorts() | as_polynomial(node.cod).sorts()
        stack.extend(children(node))
    return frozenset(sorts)


def typecheck(term: Term, sig: Signature) -> tuple[Polynomial, Polynomial]:
    """Check a term against a signature and return its polynomial type.

    Composition and trace shapes are already enforced at construction, so this
    only has to verify that every generator is declared with the type it is
    used at and that every sort is known.
    """
    for gen in sorted(generators(term), key=lambda g: g.name):
        arity, coarity = sig.symbol(gen.name)
        if (arity, coarity) != (gen.arity, gen.coarity):
            raise UnknownSymbol(
                f"symbol {gen.name} is declared {arity} → {coarity}, "
                f"used at {gen.arity} → {gen.coarity}"
            )
    undeclared = _sorts_of(term) - sig.sorts
    if undeclared:
        raise SignatureError(f"term uses undeclared sorts {sorted(undeclared)}")
    return as_polynomial(term.dom), as_polynomial(term.cod)


def size(term: Term) -> int:
    """Count the nodes of a term."""
    return 1 + sum(size(child) for child in children(term))
