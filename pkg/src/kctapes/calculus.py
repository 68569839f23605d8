"""The calculus of relations over a single sort, and its encoding into tapes.

Concrete syntax, loosest binding first::

    E ::= E | E        union
        | E & E        intersection
        | E ; E        composition
        | E^ | E*      converse, reflexive-transitive closure (postfix)
        | R | id | top | bot | ( E )

Binary operators associate to the left.  Postfix operators apply left to
right, so ``R^*`` and ``(R^)*`` are the same expression.
"""

from __future__ import annotations

import random
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass

from kctapes import relations as rel
from kctapes.exceptions import ParseError, UnknownSymbol
from kctapes.interpretation import Interpretation
from kctapes.lexer import Token, TokenStream, tokenize
from kctapes.options import SearchOptions
from kctapes.polynomial import Monomial, Polynomial, Signature
from kctapes.relations import FinRel
from kctapes.reports import CheckReport
from kctapes.search import refute
from kctapes.sugar import bot, converse, join, meet, star, top
from kctapes.terms import CId, Embed, Gen, Tape, TSeq

CR_SORT = "A"

_RULES = (
    ("keyword", r"(?:id|top|bot)(?![A-Za-z0-9_'])"),
    ("ident", r"[A-Za-z_][A-Za-z0-9_']*"),
    ("punct", r"[;&|^*()]"),
)


class CRExpr:
    """Base class of relational expressions."""

    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Sym(CRExpr):
    """A relation symbol ``R : A → A``."""

    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class CRId(CRExpr):
    def __str__(self) -> str:
        return "id"


@dataclass(frozen=True, slots=True)
class CRTop(CRExpr):
    def __str__(self) -> str:
        return "top"


@dataclass(frozen=True, slots=True)
class CRBot(CRExpr):
    def __str__(self) -> str:
        return "bot"


@dataclass(frozen=True, slots=True)
class CRSeq(CRExpr):
    left: CRExpr
    right: CRExpr

    def __str__(self) -> str:
        return f"({self.left};{self.right})"


@dataclass(frozen=True, slots=True)
class CRMeet(CRExpr):
    left: CRExpr
    right: CRExpr

    def __str__(self) -> str:
        return f"({self.left} & {self.right})"


@dataclass(frozen=True, slots=True)
class CRJoin(CRExpr):
    left: CRExpr
    right: CRExpr

    def __str__(self) -> str:
        return f"({self.left} | {self.right})"


@dataclass(frozen=True, slots=True)
class CRConverse(CRExpr):
    body: CRExpr

    def __str__(self) -> str:
        return f"{self.body}^"


@dataclass(frozen=True, slots=True)
class CRStar(CRExpr):
    body: CRExpr

    def __str__(self) -> str:
        return f"{self.body}*"


_BINARY: dict[str, type[CRSeq] | type[CRMeet] | type[CRJoin]] = {
    "|": CRJoin,
    "&": CRMeet,
    ";": CRSeq,
}
_LEVELS = ("|", "&", ";")
_CONSTANTS = {"id": CRId, "top": CRTop, "bot": CRBot}


class _CRParser:
    def __init__(self, tokens: list[Token]):
        self._stream = TokenStream(tokens)

    def parse(self) -> CRExpr:
        expr = self._binary(0)
        self._stream.finish()
        return expr

    def _binary(self, level: int) -> CRExpr:
        if level == len(_LEVELS):
            return self._postfix()
        operator = _LEVELS[level]
        expr = self._binary(level + 1)
        while self._stream.accept(operator):
            expr = _BINARY[operator](expr, self._binary(level + 1))
        return expr

    def _postfix(self) -> CRExpr:
        expr = self._atom()
        while self._stream.at("^", "*"):
            expr = CRConverse(expr) if self._stream.advance().kind == "^" else CRStar(expr)
        return expr

    def _atom(self) -> CRExpr:
        token = self._stream.peek()
        if token.kind == "ident":
            return Sym(self._stream.advance().text)
        if token.kind in _CONSTANTS:
            return _CONSTANTS[self._stream.advance().kind]()
        if self._stream.accept("("):
            expr = self._binary(0)
            self._stream.expect(")")
            return expr
        found = "end of input" if not token.text else repr(token.text)
        raise ParseError(f"expected a relation, found {found}", token.start)


def parse_cr(text: str) -> CRExpr:
    """Parse a relational expression."""
    return _CRParser(tokenize(text, _RULES)).parse()


def subterms(expr: CRExpr) -> Iterator[CRExpr]:
    """Yield ``expr`` and all of its subexpressions, parents first."""
    yield expr
    match expr:
        case CRSeq(left=left, right=right) | CRMeet(left=left, right=right) | CRJoin(
            left=left, right=right
        ):
            yield from subterms(left)
            yield from subterms(right)
        case CRConverse(body=body) | CRStar(body=body):
            yield from subterms(body)


def symbols(*exprs: CRExpr) -> list[str]:
    """Return the relation symbols used, sorted."""
    return sorted({sub.name for expr in exprs for sub in subterms(expr) if isinstance(sub, Sym)})


def cr_signature(*exprs: CRExpr) -> Signature:
    """Return the one-sorted signature declaring every symbol as ``A → A``."""
    return Signature.build([CR_SORT], {name: ([CR_SORT], [CR_SORT]) for name in symbols(*exprs)})


def cr_interpretation(
    size: int, relations: Mapping[str, Iterable[tuple[int, int]]]
) -> Interpretation:
    """Interpret each named symbol by pairs over ``{0..size-1}``."""
    sig = Signature.build([CR_SORT], {name: ([CR_SORT], [CR_SORT]) for name in relations})
    return Interpretation.from_pairs(
        sig,
        {CR_SORT: size},
        {name: [((x,), (y,)) for x, y in pairs] for name, pairs in relations.items()},
    )


def eval_cr(expr: CRExpr, interp: Interpretation) -> FinRel:
    """Evaluate an expression directly in finite relations."""
    carrier = interp.carrier(Polynomial.mono(CR_SORT))
    match expr:
        case Sym(name=name):
            if name not in interp.relations:
                raise UnknownSymbol(f"symbol {name!r} is not interpreted")
            return interp.relations[name]
        case CRId():
            return rel.identity(carrier)
        case CRTop():
            return rel.full(carrier, carrier)
        case CRBot():
            return rel.empty(carrier, carrier)
        case CRSeq(left=left, right=right):
            return rel.compose(eval_cr(left, interp), eval_cr(right, interp))
        case CRMeet(left=left, right=right):
            return eval_cr(left, interp) & eval_cr(right, interp)
        case CRJoin(left=left, right=right):
            return eval_cr(left, interp) | eval_cr(right, interp)
        case CRConverse(body=body):
            return eval_cr(body, interp).converse()
        case CRStar(body=body):
            return rel.star(eval_cr(body, interp))
    raise TypeError(f"not a relational expression: {expr!r}")


def encode_cr(expr: CRExpr) -> Tape:
    """Encode an expression as a tape ``A → A``, homomorphically."""
    sort = Polynomial.mono(CR_SORT)
    match expr:
        case Sym(name=name):
            return Embed(Gen(name, Monomial.of(CR_SORT), Monomial.of(CR_SORT)))
        case CRId():
            return Embed(CId(CR_SORT))
        case CRTop():
            return top(sort, sort)
        case CRBot():
            return bot(sort, sort)
        case CRSeq(left=left, right=right):
            return TSeq(encode_cr(left), encode_cr(right))
        case CRMeet(left=left, right=right):
            return meet(encode_cr(left), encode_cr(right))
        case CRJoin(left=left, right=right):
            return join(encode_cr(left), encode_cr(right))
        case CRConverse(body=body):
            return converse(encode_cr(body))
        case CRStar(body=body):
            return star(encode_cr(body))
    raise TypeError(f"not a relational expression: {expr!r}")


def random_cr(rng: random.Random, depth: int, names: Sequence[str] = ("R", "S")) -> CRExpr:
    """Draw an expression of at most ``depth`` nested operators."""
    if depth <= 0 or rng.random() < 0.25:
        choice = rng.randrange(len(names) + 3)
        if choice < len(names):
            return Sym(names[choice])
        return (CRId, CRTop, CRBot)[choice - len(names)]()
    kind = rng.randrange(5)
    if kind < 3:
        binary = (CRSeq, CRMeet, CRJoin)[kind]
        return binary(random_cr(rng, depth - 1, names), random_cr(rng, depth - 1, names))
    unary = (CRConverse, CRStar)[kind - 3]
    return unary(random_cr(rng, depth - 1, names))


def check_cr(
    lhs: CRExpr, rhs: CRExpr, options: SearchOptions | None = None
) -> CheckReport:
    """Search for a relational model refuting ``lhs ⊆ rhs``."""
    return refute(
        encode_cr(lhs), encode_cr(rhs), cr_signature(lhs, rhs), options, law=f"{lhs} ≤ {rhs}"
    )
