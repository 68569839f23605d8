"""S-expression dump and parse for terms.

Circuits::

    (id A) (id1) (gen R (A) (B C)) (swap A B) (seq c d) (tensor c d)
    (discard A) (copy A) (codiscard A) (cocopy A)

Tapes::

    (tid (A B)) (tid0) (tape c) (tswap (U) (V)) (tseq t s) (sum t s)
    (bang (U)) (diag (U)) (cobang (U)) (codiag (U)) (trace (U) t)

Monomials are parenthesised lists of sorts, ``()`` being the unit.  When a
signature is supplied, ``(gen R)`` may omit the (co)arity.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from kctapes.exceptions import ParseError, TypeMismatch
from kctapes.polynomial import Monomial, Signature
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
    Term,
    TId,
    TIdZero,
    Trace,
    TSeq,
    TSum,
    TSwap,
)

_TOKEN = re.compile(r"\s*(?:(\()|(\))|([^\s()]+))")

_SORT_HEADS = {
    "id": CId,
    "discard": Discharger,
    "copy": Copier,
    "codiscard": Codischarger,
    "cocopy": Cocopier,
}
_MONO_HEADS = {"tid": TId, "bang": Bang, "diag": Diag, "cobang": Cobang, "codiag": Codiag}


def _mono(mono: Monomial) -> str:
    return "(" + " ".join(mono.factors) + ")"


def dump(term: Term) -> str:
    """Render a term as a single-line S-expression."""
    match term:
        case CId(sort=sort):
            return f"(id {sort})"
        case CIdUnit():
            return "(id1)"
        case Gen(name=name, arity=arity, coarity=coarity):
            return f"(gen {name} {_mono(arity)} {_mono(coarity)})"
        case CSwap(left=left, right=right):
            return f"(swap {left} {right})"
        case CSeq(first=first, second=second):
            return f"(seq {dump(first)} {dump(second)})"
        case CTensor(left=left, right=right):
            return f"(tensor {dump(left)} {dump(right)})"
        case Discharger(sort=sort):
            return f"(discard {sort})"
        case Copier(sort=sort):
            return f"(copy {sort})"
        case Codischarger(sort=sort):
            return f"(codiscard {sort})"
        case Cocopier(sort=sort):
            return f"(cocopy {sort})"
        case TId(mono=mono):
            return f"(tid {_mono(mono)})"
        case TIdZero():
            return "(tid0)"
        case Embed(circuit=circuit):
            return f"(tape {dump(circuit)})"
        case TSwap(left=left, right=right):
            return f"(tswap {_mono(left)} {_mono(right)})"
        case TSeq(first=first, second=second):
            return f"(tseq {dump(first)} {dump(second)})"
        case TSum(left=left, right=right):
            return f"(sum {dump(left)} {dump(right)})"
        case Bang(mono=mono):
            return f"(bang {_mono(mono)})"
        case Diag(mono=mono):
            return f"(diag {_mono(mono)})"
        case Cobang(mono=mono):
            return f"(cobang {_mono(mono)})"
        case Codiag(mono=mono):
            return f"(codiag {_mono(mono)})"
        case Trace(mono=mono, body=body):
            return f"(trace {_mono(mono)} {dump(body)})"
    raise TypeMismatch(f"cannot dump {type(term).__name__}")


@dataclass(frozen=True, slots=True)
class _Atom:
    text: str
    position: int


@dataclass(frozen=True, slots=True)
class _List:
    items: tuple[_Atom | _List, ...]
    position: int


def _read(text: str) -> _Atom | _List:
    """Read one S-expression; trailing input is an error."""
    stack: list[tuple[int, list[_Atom | _List]]] = []
    result: _Atom | _List | None = None
    position = 0
    while position < len(text):
        match = _TOKEN.match(text, position)
        if match is None:
            if text[position:].strip():
                raise ParseError("unexpected character", position)
            break
        start = match.start(match.lastindex or 0)
        position = match.end()
        if result is not None:
            raise ParseError("trailing input after term", start)
        if match.group(1):
            stack.append((start, []))
        elif match.group(2):
            if not stack:
                raise ParseError("unbalanced ')'", start)
            opened, items = stack.pop()
            node = _List(tuple(items), opened)
            if stack:
                stack[-1][1].append(node)
            else:
                result = node
        else:
            atom = _Atom(match.group(3), start)
            if stack:
                stack[-1][1].append(atom)
            else:
                result = atom
    if stack:
        raise ParseError("unclosed '('", len(text))
    if result is None:
        raise ParseError("empty input", 0)
    return result


class _Builder:
    """Turn read S-expressions into terms."""

    def __init__(self, sig: Signature | None):
        self._sig = sig

    def _atom(self, node: _Atom | _List, what: str) -> str:
        if not isinstance(node, _Atom):
            raise ParseError(f"expected {what}", node.position)
        return node.text

    def _monomial(self, node: _Atom | _List) -> Monomial:
        if not isinstance(node, _List):
            raise ParseError("expected a parenthesised list of sorts", node.position)
        return Monomial(tuple(self._atom(item, "a sort") for item in node.items))

    def _head(self, node: _Atom | _List, arity: int) -> tuple[str, tuple[_Atom | _List, ...]]:
        if not isinstance(node, _List) or not node.items:
            raise ParseError("expected a term", node.position)
        head = self._atom(node.items[0], "a constructor name")
        args = node.items[1:]
        if len(args) != arity:
            raise ParseError(
                f"'{head}' takes {arity} arguments, got {len(args)}", node.position
            )
        return head, args

    def circuit(self, node: _Atom | _List) -> Circuit:
        """Build a circuit term."""
        if not isinstance(node, _List) or not node.items:
            raise ParseError("expected a circuit", node.position)
        head = self._atom(node.items[0], "a constructor name")
        if head == "gen":
            return self._generator(node)
        if head == "id1":
            self._head(node, 0)
            return CIdUnit()
        if head in _SORT_HEADS:
            _, (sort,) = self._head(node, 1)
            return _SORT_HEADS[head](self._atom(sort, "a sort"))
        if head == "swap":
            _, (left, right) = self._head(node, 2)
            return CSwap(self._atom(left, "a sort"), self._atom(right, "a sort"))
        if head in ("seq", "tensor"):
            _, (left, right) = self._head(node, 2)
            build = CSeq if head == "seq" else CTensor
            return build(self.circuit(left), self.circuit(right))
        raise ParseError(f"unknown circuit constructor '{head}'", node.position)

    def _generator(self, node: _List) -> Circuit:
        args = node.items[1:]
        if len(args) == 1 and self._sig is not None:
            name = self._atom(args[0], "a symbol name")
            arity, coarity = self._sig.symbol(name)
            return Gen(name, arity, coarity)
        if len(args) != 3:
            raise ParseError("'gen' takes a name, an arity and a coarity", node.position)
        return Gen(
            self._atom(args[0], "a symbol name"),
            self._monomial(args[1]),
            self._monomial(args[2]),
        )

    def tape(self, node: _Atom | _List) -> Tape:
        """Build a tape term."""
        if not isinstance(node, _List) or not node.items:
            raise ParseError("expected a tape", node.position)
        head = self._atom(node.items[0], "a constructor name")
        if head == "tid0":
            self._head(node, 0)
            return TIdZero()
        if head in _MONO_HEADS:
            _, (mono,) = self._head(node, 1)
            return _MONO_HEADS[head](self._monomial(mono))
        if head == "tape":
            _, (circuit,) = self._head(node, 1)
            return Embed(self.circuit(circuit))
        if head == "tswap":
            _, (left, right) = self._head(node, 2)
            return TSwap(self._monomial(left), self._monomial(right))
        if head in ("tseq", "sum"):
            _, (left, right) = self._head(node, 2)
            build = TSeq if head == "tseq" else TSum
            return build(self.tape(left), self.tape(right))
        if head == "trace":
            _, (mono, body) = self._head(node, 2)
            return Trace(self._monomial(mono), self.tape(body))
        raise ParseError(f"unknown tape constructor '{head}'", node.position)


def parse_tape(text: str, sig: Signature | None = None) -> Tape:
    """Parse a tape S-expression.

    Construction errors (composition or trace shape mismatches) propagate as
    the typing exceptions of :mod:`kctapes.exceptions`.
    """
    return _Builder(sig).tape(_read(text))


def parse_circuit(text: str, sig: Signature | None = None) -> Circuit:
    """Parse a circuit S-expression."""
    return _Builder(sig).circuit(_read(text))


def parse_term(text: str, sig: Signature | None = None) -> Tape:
    """Parse a tape, accepting a bare circuit as its embedding."""
    node = _read(text)
    builder = _Builder(sig)
    if isinstance(node, _List) and node.items and isinstance(node.items[0], _Atom):
        if node.items[0].text in {"gen", "id1", "swap", "seq", "tensor", *_SORT_HEADS}:
            return Embed(builder.circuit(node))
    return builder.tape(node)
