"""Interpretations of signatures in finite relations."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from kctapes.exceptions import CarrierMismatch, SignatureError, UnknownSymbol
from kctapes.polynomial import Monomial, Polynomial, Signature, as_polynomial
from kctapes.relations import Carrier, FinRel

COMPLEMENT_PREFIX = "!"

Element = tuple[int, ...]


def complement_name(name: str) -> str:
    """Return the name of the complement symbol of a predicate."""
    return f"{COMPLEMENT_PREFIX}{name}"


def is_complement(name: str) -> bool:
    """Return whether a symbol names a complement ``!R``."""
    return name.startswith(COMPLEMENT_PREFIX)


@dataclass(frozen=True)
class Interpretation:
    """Carrier sizes for sorts plus a relation for every symbol.

    Sort ``A`` of size ``n`` has elements ``0..n-1``.
    """

    signature: Signature
    sizes: Mapping[str, int]
    relations: Mapping[str, FinRel] = field(default_factory=dict)

    def __post_init__(self) -> None:
        """Check sizes for every sort and carriers for every symbol."""
        missing = self.signature.sorts - self.sizes.keys()
        if missing:
            raise SignatureError(f"no carrier size for sorts {sorted(missing)}")
        for sort, size in self.sizes.items():
            if size < 0:
                raise SignatureError(f"sort {sort} has negative size {size}")
        for name in self.relations:
            if name not in self.signature.symbols:
                raise UnknownSymbol(f"relation given for undeclared symbol {name!r}")
        for name, (arity, coarity) in self.signature.symbols.items():
            if name not in self.relations:
                raise UnknownSymbol(f"symbol {name!r} is not interpreted")
            rel = self.relations[name]
            if rel.dom != self.carrier(arity) or rel.cod != self.carrier(coarity):
                raise CarrierMismatch(
                    f"relation for {name} does not live on {arity} → {coarity}"
                )

    @classmethod
    def from_pairs(
        cls,
        signature: Signature,
        sizes: Mapping[str, int],
        pairs: Mapping[str, Iterable[tuple[Element, Element]]],
    ) -> Interpretation:
        """Build an interpretation from pairs of sort-element tuples."""
        relations = {}
        for name, items in pairs.items():
            arity, coarity = signature.symbol(name)
            dom, cod = Carrier.of(as_polynomial(arity), sizes), Carrier.of(
                as_polynomial(coarity), sizes
            )
            relations[name] = FinRel.build(
                dom,
                cod,
                ((dom.encode(0, tuple(x)), cod.encode(0, tuple(y))) for x, y in items),
            )
        return cls(signature, dict(sizes), relations)

    def carrier(self, obj: Monomial | Polynomial) -> Carrier:
        """Return the carrier of a monomial or polynomial."""
        return Carrier.of(as_polynomial(obj), self.sizes)

    def relation(self, name: str) -> FinRel:
        """Return the relation interpreting a symbol."""
        try:
            return self.relations[name]
        except KeyError as exc:
            raise UnknownSymbol(f"symbol {name!r} is not interpreted") from exc

    def replace(self, relations: Mapping[str, FinRel]) -> Interpretation:
        """Return a copy with some symbol relations replaced."""
        return Interpretation(self.signature, self.sizes, {**self.relations, **relations})

    def element_pairs(self, name: str) -> list[tuple[Element, Element]]:
        """Return the pairs of a relation as sort-element tuples, sorted."""
        rel = self.relation(name)
        return [(rel.dom.decode(x)[1], rel.cod.decode(y)[1]) for x, y in rel.sorted_pairs()]

    def describe(self) -> dict[str, str]:
        """Render sizes and relations for reports."""
        described = {f"|{sort}|": str(size) for sort, size in sorted(self.sizes.items())}
        described.update({name: str(rel) for name, rel in sorted(self.relations.items())})
        return described


def predicate_names(signature: Signature) -> list[str]:
    """Return the symbols typed ``U → 1`` that are not complements."""
    return sorted(
        name
        for name, (_, coarity) in signature.symbols.items()
        if not coarity.factors and not is_complement(name)
    )


def complete_complements(
    signature: Signature,
    sizes: Mapping[str, int],
    relations: Mapping[str, FinRel],
) -> Interpretation:
    """Declare and interpret ``!R`` as the complement of ``R`` where missing."""
    symbols = dict(signature.symbols)
    completed = dict(relations)
    for name in predicate_names(signature):
        bar = complement_name(name)
        symbols.setdefault(bar, signature.symbols[name])
        if bar not in completed and name in relations:
            completed[bar] = relations[name].complement()
    return Interpretation(Signature(signature.sorts, symbols), sizes, completed)
