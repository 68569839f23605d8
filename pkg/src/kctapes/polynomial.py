"""Objects of the free rig category: monomials, polynomials and signatures.

A monomial is a word over sorts (the empty word is the unit ``1``); a
polynomial is a word of monomials (the empty word is the zero ``0``).  ``⊕`` is
concatenation of summands and ``⊗`` is the product distributing on the left,
so ``(A⊕B)⊗(C⊕D) = AC ⊕ AD ⊕ BC ⊕ BD``.  No other normalisation is applied.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field

from kctapes.exceptions import ParseError, SignatureError, UnknownSymbol
from kctapes.lexer import END, TokenStream, tokenize

SORT_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_']*$")
SYMBOL_NAME = re.compile(r"^!?[A-Za-z_][A-Za-z0-9_']*$")


@dataclass(frozen=True, slots=True)
class Monomial:
    """A word of sorts, read as their ``⊗``-product."""

    factors: tuple[str, ...] = ()

    @classmethod
    def of(cls, *sorts: str) -> Monomial:
        """Build a monomial from sort names."""
        return cls(tuple(sorts))

    def __mul__(self, other: Monomial) -> Monomial:
        return Monomial(self.factors + other.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def __iter__(self) -> Iterator[str]:
        return iter(self.factors)

    def __str__(self) -> str:
        return "*".join(self.factors) if self.factors else "1"


UNIT = Monomial()


@dataclass(frozen=True, slots=True)
class Polynomial:
    """A word of monomials, read as their ``⊕``-sum."""

    summands: tuple[Monomial, ...] = ()

    @classmethod
    def of(cls, *monomials: Monomial) -> Polynomial:
        """Build a polynomial from monomials."""
        return cls(tuple(monomials))

    @classmethod
    def mono(cls, *sorts: str) -> Polynomial:
        """Build the one-summand polynomial of a monomial."""
        return cls((Monomial(tuple(sorts)),))

    def __add__(self, other: Polynomial) -> Polynomial:
        return Polynomial(self.summands + other.summands)

    def __mul__(self, other: Polynomial) -> Polynomial:
        return poly_product(self, other)

    def __len__(self) -> int:
        return len(self.summands)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.summands)

    def __getitem__(self, index: int) -> Monomial:
        return self.summands[index]

    def __str__(self) -> str:
        return " + ".join(str(m) for m in self.summands) if self.summands else "0"

    @property
    def is_monomial(self) -> bool:
        """Return whether the polynomial has exactly one summand."""
        return len(self.summands) == 1

    def sorts(self) -> frozenset[str]:
        """Return every sort occurring in some summand."""
        return frozenset(s for m in self.summands for s in m.factors)

    def tail(self, count: int = 1) -> Polynomial:
        """Drop the first ``count`` summands."""
        return Polynomial(self.summands[count:])


ZERO = Polynomial()
ONE = Polynomial((UNIT,))


def as_polynomial(value: Monomial | Polynomial) -> Polynomial:
    """Lift a monomial to its one-summand polynomial."""
    return Polynomial((value,)) if isinstance(value, Monomial) else value


def poly_product(p: Polynomial, q: Polynomial) -> Polynomial:
    """Return ``P ⊗ Q`` in i-major order: ``⊕_i ⊕_j U_i V_j``."""
    return Polynomial(tuple(u * v for u in p.summands for v in q.summands))


def power(m: Monomial, n: int) -> Monomial:
    """Return ``m`` multiplied with itself ``n`` times (``1`` for ``n = 0``)."""
    return Monomial(m.factors * n)


_POLY_RULES = (
    ("punct", r"[*+]|[01](?![A-Za-z0-9_'])"),
    ("ident", r"[A-Za-z_][A-Za-z0-9_']*"),
)


def _monomial(stream: TokenStream) -> Monomial:
    factors = []
    while True:
        if not stream.accept("1"):
            token = stream.peek()
            if token.kind != "ident":
                found = "end of input" if token.kind == END else repr(token.text)
                raise ParseError(f"expected a sort or 1, found {found}", token.start)
            factors.append(stream.advance().text)
        if not stream.accept("*"):
            return Monomial(tuple(factors))


def parse_monomial(text: str) -> Monomial:
    """Parse ``"A*B"`` or ``"1"`` into a monomial; blank text is ``1``."""
    stream = TokenStream(tokenize(text, _POLY_RULES))
    if stream.at(END):
        return UNIT
    mono = _monomial(stream)
    stream.finish()
    return mono


def parse_polynomial(text: str) -> Polynomial:
    """Parse ``"A*B + 1 + C"`` (or ``"0"``) into a polynomial."""
    stream = TokenStream(tokenize(text, _POLY_RULES))
    if stream.at(END):
        raise ParseError("empty polynomial", len(text))
    if stream.accept("0"):
        stream.finish()
        return ZERO
    summands = [_monomial(stream)]
    while stream.accept("+"):
        summands.append(_monomial(stream))
    stream.finish()
    return Polynomial(tuple(summands))


@dataclass(frozen=True)
class Signature:
    """A monoidal signature: sorts plus symbols typed by monomials."""

    sorts: frozenset[str] = frozenset()
    symbols: Mapping[str, tuple[Monomial, Monomial]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        """Validate names and check every (co)arity uses declared sorts."""
        for sort in self.sorts:
            if not SORT_NAME.match(sort):
                raise SignatureError(f"invalid sort name {sort!r}")
        for name, (arity, coarity) in self.symbols.items():
            if not SYMBOL_NAME.match(name):
                raise SignatureError(f"invalid symbol name {name!r}")
            undeclared = (set(arity) | set(coarity)) - self.sorts
            if undeclared:
                raise SignatureError(
                    f"symbol {name} uses undeclared sorts {sorted(undeclared)}"
                )

    @classmethod
    def build(
        cls,
        sorts: Iterable[str],
        symbols: Mapping[str, tuple[Iterable[str], Iterable[str]]] | None = None,
    ) -> Signature:
        """Build a signature from plain sort-name sequences."""
        return cls(
            frozenset(sorts),
            {
                name: (Monomial(tuple(ar)), Monomial(tuple(coar)))
                for name, (ar, coar) in (symbols or {}).items()
            },
        )

    def symbol(self, name: str) -> tuple[Monomial, Monomial]:
        """Return the (arity, coarity) of a declared symbol."""
        try:
            return self.symbols[name]
        except KeyError as exc:
            raise UnknownSymbol(f"symbol {name!r} is not declared") from exc

    def extend(self, other: Signature) -> Signature:
        """Return the union of two signatures; shared symbols must agree."""
        for name, typing in other.symbols.items():
            if name in self.symbols and self.symbols[name] != typing:
                raise SignatureError(f"symbol {name} declared with two types")
        return Signature(self.sorts | other.sorts, {**self.symbols, **other.symbols})
