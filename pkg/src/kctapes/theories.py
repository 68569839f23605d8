"""Kleene-Cartesian theories: a signature plus axioms between tapes."""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from typing import Literal

from kctapes.exceptions import TypeMismatch
from kctapes.interpretation import complement_name
from kctapes.polynomial import ONE, Monomial, Signature, as_polynomial
from kctapes.sugar import (
    bot,
    circuit_copier,
    circuit_discharger,
    converse,
    join,
    meet,
    top,
)
from kctapes.terms import CSeq, CTensor, Embed, Gen, Tape, TId, typecheck

AxiomKind = Literal["leq", "eq"]


@dataclass(frozen=True, slots=True)
class Axiom:
    """An inequality ``lhs ≤ rhs`` or an equality between tapes of one type."""

    lhs: Tape
    rhs: Tape
    kind: AxiomKind = "leq"
    label: str = ""

    def __post_init__(self) -> None:
        if (self.lhs.dom, self.lhs.cod) != (self.rhs.dom, self.rhs.cod):
            raise TypeMismatch(
                f"axiom {self.label or '?'} relates {self.lhs.dom} → {self.lhs.cod} "
                f"with {self.rhs.dom} → {self.rhs.cod}"
            )

    def inclusions(self) -> Iterator[tuple[str, Tape, Tape]]:
        """Yield the axiom as labelled inclusions; equalities give two."""
        label = f"{self.label} (≤)" if self.kind == "eq" else self.label
        yield label, self.lhs, self.rhs
        if self.kind == "eq":
            yield f"{self.label} (≥)", self.rhs, self.lhs


@dataclass(frozen=True)
class Theory:
    """A signature with a list of axioms over it."""

    signature: Signature
    axioms: tuple[Axiom, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        """Typecheck both sides of every axiom."""
        for axiom in self.axioms:
            typecheck(axiom.lhs, self.signature)
            typecheck(axiom.rhs, self.signature)

    def extend(self, other: Theory) -> Theory:
        """Return the union of two theories."""
        return Theory(self.signature.extend(other.signature), self.axioms + other.axioms)


def _gen(signature: Signature, name: str) -> Gen:
    arity, coarity = signature.symbol(name)
    return Gen(name, arity, coarity)


def linear_order_theory(sort: str = "A", symbol: str = "R") -> Theory:
    """Return the theory of a linear order ``R : A → A``."""
    signature = Signature.build([sort], {symbol: ([sort], [sort])})
    rel = Embed(_gen(signature, symbol))
    mono = Monomial((sort,))
    poly = as_polynomial(mono)
    return Theory(
        signature,
        (
            Axiom(TId(mono), rel, label="refl"),
            Axiom(Embed(CSeq(rel.circuit, rel.circuit)), rel, label="tr"),
            Axiom(meet(rel, converse(rel)), TId(mono), label="anti"),
            Axiom(top(poly, poly), join(rel, converse(rel)), label="lin"),
        ),
    )


def function_axioms(signature: Signature, names: Iterable[str]) -> tuple[Axiom, ...]:
    """Return determinism and totality of every named symbol."""
    axioms: list[Axiom] = []
    for name in names:
        gen = _gen(signature, name)
        axioms.append(
            Axiom(
                Embed(CSeq(circuit_copier(gen.arity), CTensor(gen, gen))),
                Embed(CSeq(gen, circuit_copier(gen.coarity))),
                label=f"{name} deterministic",
            )
        )
        axioms.append(
            Axiom(
                Embed(circuit_discharger(gen.arity)),
                Embed(CSeq(gen, circuit_discharger(gen.coarity))),
                label=f"{name} total",
            )
        )
    return tuple(axioms)


def predicate_axioms(signature: Signature, names: Iterable[str]) -> tuple[Axiom, ...]:
    """Return excluded middle and non-contradiction for ``R`` and ``!R``."""
    axioms: list[Axiom] = []
    for name in names:
        pred = Embed(_gen(signature, name))
        bar = Embed(_gen(signature, complement_name(name)))
        axioms.append(Axiom(join(pred, bar), top(pred.dom, ONE), "eq", f"{name} EM"))
        axioms.append(Axiom(meet(pred, bar), bot(pred.dom, ONE), "eq", f"{name} NC"))
    return tuple(axioms)


def functions_theory(signature: Signature, names: Iterable[str] | None = None) -> Theory:
    """Return the theory forcing the named symbols (default: all) to be functions."""
    chosen = sorted(signature.symbols) if names is None else list(names)
    return Theory(signature, function_axioms(signature, chosen))


def kat_theory(sorts: Iterable[str], predicates: Mapping[str, Iterable[str]]) -> Theory:
    """Return the theory of predicates with genuine complements.

    Each predicate ``R : U → 1`` gets a complement ``!R`` with
    ``R ⊔ !R = ⊤`` and ``R ⊓ !R = ⊥``.
    """
    symbols: dict[str, tuple[Iterable[str], Iterable[str]]] = {}
    for name, arity in predicates.items():
        symbols[name] = (list(arity), [])
        symbols[complement_name(name)] = (list(arity), [])
    signature = Signature.build(sorts, symbols)
    return Theory(signature, predicate_axioms(signature, sorted(predicates)))


def theory_from_axioms(
    signature: Signature, axioms: Iterable[tuple[Tape, Tape, AxiomKind]]
) -> Theory:
    """Build a theory from plain (lhs, rhs, kind) triples, labelled by position."""
    return Theory(
        signature,
        tuple(
            Axiom(lhs, rhs, kind, label=f"axiom {index}")
            for index, (lhs, rhs, kind) in enumerate(axioms)
        ),
    )
