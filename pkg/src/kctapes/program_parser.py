"""Concrete syntax for programs, predicates, contexts and triples.

Commands::

    skip | abort | x := e | c1 ; c2
    if P then c1 else c2 end | while P do c end

Predicates: ``R(e, …)``, ``!R(e, …)``, ``true``, ``false``, ``P && Q`` and
``P || Q``, with ``&&`` binding tighter.  A bare name is a nullary symbol.

Triple files start with a context line and hold one triple::

    context x:A, y:A
    {P} C {Q}          Hoare
    [P] C [Q]          incorrectness
    <<P>> C <<Q>>      sufficient incorrectness
    (P) C (Q)          necessary (Q is the final bracket group)

Quadruple files separate the two contexts and programs with ``~``::

    context x:A ~ u:A
    rel {P} C1 ~ C2 {Q}
"""

from __future__ import annotations

from collections.abc import Callable

from kctapes.exceptions import ParseError
from kctapes.lexer import END, Token, TokenStream, tokenize
from kctapes.logics import Quadruple, Triple, TripleKind
from kctapes.program import (
    Abort,
    App,
    Assign,
    Atom,
    Cmd,
    Context,
    Expr,
    If,
    NAtom,
    PAnd,
    PFalse,
    POr,
    Pred,
    PTrue,
    Seq,
    Skip,
    Var,
    While,
)

_KEYWORDS = (
    "skip",
    "abort",
    "if",
    "then",
    "else",
    "end",
    "while",
    "do",
    "true",
    "false",
    "rel",
    "context",
)
_RULES = (
    ("keyword", rf"(?:{'|'.join(_KEYWORDS)})(?![A-Za-z0-9_'])"),
    ("ident", r"[A-Za-z_][A-Za-z0-9_']*"),
    ("punct", r":=|&&|\|\||<<|>>|[;,:(){}\[\]!~]"),
)
_BRACKETS: dict[str, tuple[str, TripleKind]] = {
    "{": ("}", "hoare"),
    "[": ("]", "incorrectness"),
    "<<": (">>", "sufficient-incorrectness"),
    "(": (")", "necessary"),
}


class _ProgramParser:
    def __init__(self, stream: TokenStream):
        self._stream = stream

    def _fail(self, what: str) -> ParseError:
        token = self._stream.peek()
        found = "end of input" if not token.text else repr(token.text)
        return ParseError(f"expected {what}, found {found}", token.start)

    def done(self) -> None:
        self._stream.finish()

    # Expressions.

    def _arguments(self) -> tuple[Expr, ...]:
        if not self._stream.accept("("):
            return ()
        args: list[Expr] = []
        if not self._stream.at(")"):
            args.append(self.expr())
            while self._stream.accept(","):
                args.append(self.expr())
        self._stream.expect(")")
        return tuple(args)

    def expr(self) -> Expr:
        if not self._stream.at("ident"):
            raise self._fail("an expression")
        name = self._stream.advance().text
        if self._stream.at("("):
            return App(name, self._arguments())
        return Var(name)

    # Predicates.

    def pred(self) -> Pred:
        result = self._conjunction()
        while self._stream.accept("||"):
            result = POr(result, self._conjunction())
        return result

    def _conjunction(self) -> Pred:
        result = self._pred_atom()
        while self._stream.accept("&&"):
            result = PAnd(result, self._pred_atom())
        return result

    def _pred_atom(self) -> Pred:
        if self._stream.accept("true"):
            return PTrue()
        if self._stream.accept("false"):
            return PFalse()
        if self._stream.accept("!"):
            name = self._stream.expect("ident").text
            return NAtom(name, self._arguments())
        if self._stream.at("ident"):
            name = self._stream.advance().text
            return Atom(name, self._arguments())
        if self._stream.accept("("):
            inner = self.pred()
            self._stream.expect(")")
            return inner
        raise self._fail("a predicate")

    # Commands.

    def cmd(self) -> Cmd:
        result = self._simple()
        while self._stream.accept(";"):
            result = Seq(result, self._simple())
        return result

    def _simple(self) -> Cmd:
        if self._stream.accept("skip"):
            return Skip()
        if self._stream.accept("abort"):
            return Abort()
        if self._stream.accept("if"):
            guard = self.pred()
            self._stream.expect("then")
            then = self.cmd()
            self._stream.expect("else")
            orelse = self.cmd()
            self._stream.expect("end")
            return If(guard, then, orelse)
        if self._stream.accept("while"):
            guard = self.pred()
            self._stream.expect("do")
            body = self.cmd()
            self._stream.expect("end")
            return While(guard, body)
        if self._stream.at("ident"):
            var = self._stream.advance().text
            self._stream.expect(":=")
            return Assign(var, self.expr())
        raise self._fail("a command")

    # Contexts and triples.

    def context(self, *stops: str) -> Context:
        entries: list[tuple[str, str]] = []
        if self._stream.at(END, *stops):
            return Context()
        while True:
            var = self._stream.expect("ident")
            self._stream.expect(":")
            sort = self._stream.expect("ident").text
            if var.text in (seen for seen, _ in entries):
                raise ParseError(f"variable {var.text} is declared twice", var.start)
            entries.append((var.text, sort))
            if not self._stream.accept(","):
                return Context(tuple(entries))

    def header(self) -> tuple[Context, Context | None]:
        self._stream.expect("context")
        first = self.context("~", "{", "[", "<<", "(", "rel")
        if self._stream.accept("~"):
            return first, self.context("rel")
        return first, None

    def bracketed(self) -> tuple[TripleKind, Pred]:
        opener: Token = self._stream.peek()
        if opener.kind not in _BRACKETS:
            raise self._fail("a bracketed predicate")
        self._stream.advance()
        closer, kind = _BRACKETS[opener.kind]
        pred = self.pred()
        self._stream.expect(closer)
        return kind, pred

    def triple(self) -> Triple | Quadruple:
        ctx, other = self.header()
        if other is None:
            kind, pre = self.bracketed()
            cmd = self._necessary_cmd() if kind == "necessary" else self.cmd()
            post = self._closing(kind)
            return Triple(kind, ctx, pre, cmd, post)
        self._stream.expect("rel")
        start = self._stream.peek().start
        kind, pre = self.bracketed()
        if kind != "hoare":
            raise ParseError("quadruples use {P} ... {Q} brackets", start)
        left = self.cmd()
        self._stream.expect("~")
        right = self.cmd()
        post = self._closing("hoare")
        if set(ctx.variables) & set(other.variables):
            raise ParseError("the two contexts of a quadruple share variables", start)
        return Quadruple(ctx, other, pre, left, right, post)

    def _necessary_cmd(self) -> Cmd:
        # In (P) C (Q) the command ends where the final bracket group opens.
        stop = self._stream.last_group("(", ")")
        if stop is None:
            return self.cmd()
        inner = _ProgramParser(self._stream.cut(stop))
        cmd = inner.cmd()
        inner.done()
        return cmd

    def _closing(self, kind: TripleKind) -> Pred:
        start = self._stream.peek().start
        found, pred = self.bracketed()
        if found != kind:
            raise ParseError(f"{kind} triple closed with {found} brackets", start)
        return pred


def _parse[T](text: str, rule: Callable[[_ProgramParser], T]) -> T:
    parser = _ProgramParser(TokenStream(tokenize(text, _RULES)))
    result = rule(parser)
    parser.done()
    return result


def parse_program(text: str) -> Cmd:
    """Parse a command."""
    return _parse(text, _ProgramParser.cmd)


def parse_pred(text: str) -> Pred:
    """Parse a predicate."""
    return _parse(text, _ProgramParser.pred)


def parse_expr(text: str) -> Expr:
    """Parse an expression."""
    return _parse(text, _ProgramParser.expr)


def parse_context(text: str) -> Context:
    """Parse ``x:A, y:B``; the empty string is the empty context."""
    return _parse(text, _ProgramParser.context)


def parse_triple(text: str) -> Triple | Quadruple:
    """Parse a triple or quadruple file."""
    return _parse(text, _ProgramParser.triple)
