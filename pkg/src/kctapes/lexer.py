"""Regex tokenizer and token cursor shared by the text front ends."""

from __future__ import annotations

import re
from collections.abc import Sequence
from dataclasses import dataclass

from kctapes.exceptions import ParseError

END = "end of input"


@dataclass(frozen=True, slots=True)
class Token:
    """A lexeme with its kind and start offset."""

    kind: str
    text: str
    start: int


def tokenize(text: str, rules: Sequence[tuple[str, str]]) -> list[Token]:
    """Split ``text`` with ``(kind, regex)`` rules tried in order.

    Whitespace is skipped.  Tokens matched by the ``"keyword"`` and ``"punct"``
    rules take their own text as kind.  A final ``END`` token is appended.
    """
    pattern = re.compile("|".join(f"(?P<{kind}>{regex})" for kind, regex in rules))
    tokens = []
    position = 0
    while position < len(text):
        if text[position].isspace():
            position += 1
            continue
        match = pattern.match(text, position)
        if match is None or not match.group():
            raise ParseError(f"unexpected character {text[position]!r}", position)
        kind = match.lastgroup or ""
        lexeme = match.group()
        tokens.append(Token(lexeme if kind in ("keyword", "punct") else kind, lexeme, position))
        position = match.end()
    tokens.append(Token(END, "", len(text)))
    return tokens


class TokenStream:
    """A cursor over tokens with one token of lookahead."""

    def __init__(self, tokens: list[Token]):
        self._tokens = tokens
        self._index = 0

    def peek(self) -> Token:
        """Return the current token without consuming it."""
        return self._tokens[self._index]

    def at(self, *kinds: str) -> bool:
        """Return whether the current token has one of ``kinds``."""
        return self.peek().kind in kinds

    def advance(self) -> Token:
        """Consume and return the current token."""
        token = self.peek()
        if token.kind != END:
            self._index += 1
        return token

    def accept(self, kind: str) -> Token | None:
        """Consume the current token if it has ``kind``."""
        return self.advance() if self.at(kind) else None

    def expect(self, kind: str) -> Token:
        """Consume a token of ``kind`` or raise :class:`ParseError`."""
        token = self.peek()
        if token.kind != kind:
            found = END if token.kind == END else repr(token.text)
            raise ParseError(f"expected {kind!r}, found {found}", token.start)
        return self.advance()

    def finish(self) -> None:
        """Raise unless every token was consumed."""
        token = self.peek()
        if token.kind != END:
            raise ParseError(f"unexpected {token.text!r}", token.start)

    def last_group(self, opener: str, closer: str) -> int | None:
        """Return the index of the ``opener`` matching a final ``closer``.

        ``None`` when the input does not end with a balanced group.
        """
        last = len(self._tokens) - 2
        if last < self._index or self._tokens[last].kind != closer:
            return None
        depth = 0
        for index in range(last, self._index - 1, -1):
            kind = self._tokens[index].kind
            depth += (kind == closer) - (kind == opener)
            if depth == 0:
                return index
        return None

    def cut(self, stop: int) -> TokenStream:
        """Split off the tokens before ``stop`` as a stream of their own.

        This cursor moves to ``stop``; the new stream ends there.
        """
        head = self._tokens[self._index : stop]
        self._index = stop
        return TokenStream([*head, Token(END, "", self._tokens[stop].start)])
