"""JSON documents read and written by the command line.

Interpretation files::

    {"sorts": {"A": 2},
     "symbols": {"R": {"arity": ["A"], "coarity": ["A"], "pairs": [[[0], [1]]]}}}

Theory files carry a signature and axioms whose sides are term dumps; inequality
files carry a signature and the two sides of ``lhs ≤ rhs``.
"""

from __future__ import annotations

from pathlib import Path
from typing import Literal

from pydantic import Field

from kctapes.base_model import KCBaseModel
from kctapes.interpretation import Interpretation, complete_complements
from kctapes.polynomial import Signature, as_polynomial
from kctapes.relations import Carrier, FinRel
from kctapes.sexpr import dump, parse_tape
from kctapes.terms import Tape
from kctapes.theories import Axiom, Theory

Element = list[int]


class SymbolDoc(KCBaseModel):
    """Typing of one symbol by lists of sort names."""

    arity: list[str] = Field(default_factory=list)
    coarity: list[str] = Field(default_factory=list)


class SignatureDoc(KCBaseModel):
    """Sorts and typed symbols."""

    sorts: list[str]
    symbols: dict[str, SymbolDoc] = Field(default_factory=dict)

    def to_signature(self) -> Signature:
        """Build the signature, validating names and sorts."""
        return Signature.build(
            self.sorts,
            {name: (doc.arity, doc.coarity) for name, doc in self.symbols.items()},
        )

    @classmethod
    def from_signature(cls, sig: Signature) -> SignatureDoc:
        """Describe a signature."""
        return cls(
            sorts=sorted(sig.sorts),
            symbols={
                name: SymbolDoc(arity=list(arity), coarity=list(coarity))
                for name, (arity, coarity) in sorted(sig.symbols.items())
            },
        )


class RelationDoc(SymbolDoc):
    """A symbol with its relation as pairs of element arrays."""

    pairs: list[tuple[Element, Element]] = Field(default_factory=list)


class InterpretationDoc(KCBaseModel):
    """Carrier sizes plus one relation per symbol."""

    sorts: dict[str, int]
    symbols: dict[str, RelationDoc] = Field(default_factory=dict)

    def signature(self) -> Signature:
        """Return the signature the document declares."""
        return Signature.build(
            self.sorts,
            {name: (doc.arity, doc.coarity) for name, doc in self.symbols.items()},
        )

    def to_interpretation(self) -> Interpretation:
        """Build the interpretation; a missing ``!R`` becomes the complement of ``R``."""
        sig = self.signature()
        relations: dict[str, FinRel] = {}
        for name, doc in self.symbols.items():
            arity, coarity = sig.symbol(name)
            dom = Carrier.of(as_polynomial(arity), self.sorts)
            cod = Carrier.of(as_polynomial(coarity), self.sorts)
            relations[name] = FinRel.build(
                dom,
                cod,
                ((dom.encode(0, tuple(x)), cod.encode(0, tuple(y))) for x, y in doc.pairs),
            )
        return complete_complements(sig, self.sorts, relations)

    @classmethod
    def from_interpretation(cls, interp: Interpretation) -> InterpretationDoc:
        """Describe an interpretation, complements included."""
        return cls(
            sorts=dict(sorted(interp.sizes.items())),
            symbols={
                name: RelationDoc(
                    arity=list(arity),
                    coarity=list(coarity),
                    pairs=[(list(x), list(y)) for x, y in interp.element_pairs(name)],
                )
                for name, (arity, coarity) in sorted(interp.signature.symbols.items())
            },
        )


class AxiomDoc(KCBaseModel):
    """One axiom; both sides are term dumps."""

    lhs: str
    rhs: str
    kind: Literal["leq", "eq"] = "leq"
    label: str = ""


class TheoryDoc(KCBaseModel):
    """A signature with axioms over it."""

    signature: SignatureDoc
    axioms: list[AxiomDoc] = Field(default_factory=list)

    def to_theory(self) -> Theory:
        """Parse every axiom against the signature."""
        sig = self.signature.to_signature()
        return Theory(
            sig,
            tuple(
                Axiom(
                    parse_tape(doc.lhs, sig),
                    parse_tape(doc.rhs, sig),
                    doc.kind,
                    doc.label or f"axiom {index}",
                )
                for index, doc in enumerate(self.axioms)
            ),
        )

    @classmethod
    def from_theory(cls, theory: Theory) -> TheoryDoc:
        """Describe a theory with dumped terms."""
        return cls(
            signature=SignatureDoc.from_signature(theory.signature),
            axioms=[
                AxiomDoc(lhs=dump(ax.lhs), rhs=dump(ax.rhs), kind=ax.kind, label=ax.label)
                for ax in theory.axioms
            ],
        )


class InequalityDoc(KCBaseModel):
    """An inequality ``lhs ≤ rhs`` to refute, with its signature.

    Symbols listed in ``functions`` are searched among total functions only.
    """

    signature: SignatureDoc
    lhs: str
    rhs: str
    functions: list[str] = Field(default_factory=list)

    def tapes(self) -> tuple[Signature, Tape, Tape]:
        """Return the signature and both parsed sides."""
        sig = self.signature.to_signature()
        return sig, parse_tape(self.lhs, sig), parse_tape(self.rhs, sig)


def load_interpretation(path: Path) -> Interpretation:
    """Read an interpretation file."""
    return InterpretationDoc.model_validate_json(path.read_text()).to_interpretation()


def load_signature(path: Path) -> Signature:
    """Read a signature file."""
    return SignatureDoc.model_validate_json(path.read_text()).to_signature()


def load_theory(path: Path) -> Theory:
    """Read a theory file."""
    return TheoryDoc.model_validate_json(path.read_text()).to_theory()


def load_inequality(path: Path) -> InequalityDoc:
    """Read an inequality file."""
    return InequalityDoc.model_validate_json(path.read_text())
