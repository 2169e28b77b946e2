"""S-expressions: the value domain, the two readers, the canonical printer,
and the expression<->bits codec.

Values are plain Python data: naturals are ``int``, symbols are ``str``,
lists are ``tuple``.  The empty tuple is the atom ``nil``; the reader maps
the token ``nil`` to ``()`` and the printer maps ``()`` back to ``nil``, so
they are one value throughout.

Two readers share one tokenizer:

* ``parse_full`` reads plain, fully parenthesized text.  An apostrophe glued
  to the next token is sugar for the quote form; a free-standing apostrophe
  is an ordinary one-character symbol, which is what lets the canonical
  printed quote form ``(' x)`` read back as itself.

* ``parse_implicit`` reads the dialect's abbreviated notation, where a
  symbol of known arity k consumes the next k complete expressions and a
  zero-arity primitive becomes a call, so ``read-exp`` reads as
  ``(read-exp)``.  Parentheses group; a pair of parentheses whose content
  reduces to a single arity-built application is redundant and drops out,
  which makes fully parenthesized source mean the same thing it means to
  ``parse_full``.
"""

from __future__ import annotations

from typing import Iterator, Union

SExpr = Union[int, str, tuple]

NIL: SExpr = ()
QUOTE = "'"

# Fixed argument count for every primitive form.  User functions get their
# own arities recorded in an ArityTable as `define` forms are read.
PRIMITIVE_ARITY = {
    QUOTE: 1,
    "if": 3,
    "define": 2,
    "lambda": 2,
    "let": 3,
    "car": 1,
    "cdr": 1,
    "cadr": 1,
    "cons": 2,
    "append": 2,
    "atom": 1,
    "=": 2,
    "+": 2,
    "-": 2,
    "*": 2,
    "<": 2,
    "size": 1,
    "bits": 1,
    "display": 1,
    "eval": 1,
    "read-bit": 0,
    "read-exp": 0,
    "try": 3,
    "run-utm-on": 1,
}


class SExprSyntaxError(ValueError):
    """Reader failure, with the source position when one is known."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        if line is not None:
            message = f"{message} (line {line}, column {col})"
        super().__init__(message)


class ArityTable:
    """Primitive arities plus arities of user-defined functions."""

    def __init__(self, user: dict[str, int] | None = None):
        self.user = dict(user or {})

    def arity(self, name: str) -> int | None:
        k = PRIMITIVE_ARITY.get(name)
        if k is not None:
            return k
        return self.user.get(name)

    def define(self, name: str, arity: int) -> None:
        if name not in PRIMITIVE_ARITY:
            self.user[name] = arity

    def copy(self) -> "ArityTable":
        return ArityTable(self.user)


_WHITESPACE = " \t\r\n"
_SPECIAL = "()'"


def _symbol_char(c: str) -> bool:
    return 33 <= ord(c) <= 126 and c not in _SPECIAL


class _Token:
    __slots__ = ("text", "line", "col", "attached")

    def __init__(self, text: str, line: int, col: int, attached: bool = False):
        self.text = text
        self.line = line
        self.col = col
        self.attached = attached


def tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        c = text[i]
        if c in _WHITESPACE:
            if c == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1
            continue
        if c in "()":
            tokens.append(_Token(c, line, col))
            i += 1
            col += 1
            continue
        if c == QUOTE:
            attached = i + 1 < n and text[i + 1] not in _WHITESPACE and text[i + 1] != ")"
            tokens.append(_Token(c, line, col, attached))
            i += 1
            col += 1
            continue
        if not _symbol_char(c):
            raise SExprSyntaxError(f"illegal character {c!r}", line, col)
        start = i
        while i < n and _symbol_char(text[i]):
            i += 1
        tokens.append(_Token(text[start:i], line, col))
        col += i - start
    return tokens


def _atom(text: str) -> SExpr:
    if text.isdigit():
        return int(text)
    if text == "nil":
        return NIL
    return text


class _Reader:
    def __init__(self, tokens: list[_Token], table: ArityTable | None = None):
        self.tokens = tokens
        self.pos = 0
        self.table = table or ArityTable()

    def at_end(self) -> bool:
        return self.pos >= len(self.tokens)

    def _next(self) -> _Token:
        if self.at_end():
            last = self.tokens[-1] if self.tokens else None
            raise SExprSyntaxError(
                "unexpected end of input",
                last.line if last else 1,
                last.col if last else 1,
            )
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def _peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    # Plain reader: parentheses build lists, nothing consumes by arity.
    def read_plain(self) -> SExpr:
        tok = self._next()
        if tok.text == "(":
            items = []
            while True:
                nxt = self._peek()
                if nxt is None:
                    raise SExprSyntaxError("unbalanced parenthesis", tok.line, tok.col)
                if nxt.text == ")":
                    self.pos += 1
                    return tuple(items)
                items.append(self.read_plain())
        if tok.text == ")":
            raise SExprSyntaxError("unexpected ')'", tok.line, tok.col)
        if tok.text == QUOTE:
            if tok.attached:
                return (QUOTE, self.read_plain())
            return QUOTE
        return _atom(tok.text)

    # Arity-driven reader.  Returns (expression, built-by-arity flag); the
    # flag is what lets grouping parentheses around one application drop out.
    def read_arity(self) -> tuple[SExpr, bool]:
        tok = self._next()
        if tok.text == "(":
            items = []
            built = []
            while True:
                nxt = self._peek()
                if nxt is None:
                    raise SExprSyntaxError("unbalanced parenthesis", tok.line, tok.col)
                if nxt.text == ")":
                    self.pos += 1
                    break
                e, b = self.read_arity()
                items.append(e)
                built.append(b)
            if len(items) == 1 and built[0]:
                return items[0], False
            return tuple(items), False
        if tok.text == ")":
            raise SExprSyntaxError("unexpected ')'", tok.line, tok.col)
        if tok.text == QUOTE:
            arg, _ = self.read_arity()
            return (QUOTE, arg), True
        a = _atom(tok.text)
        if isinstance(a, str):
            k = self.table.arity(a)
            if k is not None:
                if a == "define":
                    sig, _ = self.read_arity()
                    if isinstance(sig, tuple) and sig and isinstance(sig[0], str):
                        # Register the arity up front so the body may call
                        # the function being defined without parentheses.
                        self.table.define(sig[0], len(sig) - 1)
                    body, _ = self.read_arity()
                    return ("define", sig, body), True
                args = [self.read_arity()[0] for _ in range(k)]
                return (a, *args), True
        return a, False


def parse_full(text: str) -> SExpr:
    """Read one complete, fully parenthesized expression."""
    reader = _Reader(tokenize(text))
    if reader.at_end():
        raise SExprSyntaxError("empty input")
    expr = reader.read_plain()
    if not reader.at_end():
        tok = reader.tokens[reader.pos]
        raise SExprSyntaxError(f"trailing input {tok.text!r}", tok.line, tok.col)
    return expr


def parse_implicit(text: str, table: ArityTable | None = None) -> SExpr:
    """Read one expression in the abbreviated (implicit-parenthesis) notation."""
    reader = _Reader(tokenize(text), table)
    if reader.at_end():
        raise SExprSyntaxError("empty input")
    expr, _ = reader.read_arity()
    if not reader.at_end():
        tok = reader.tokens[reader.pos]
        raise SExprSyntaxError(f"trailing input {tok.text!r}", tok.line, tok.col)
    return expr


def iter_forms(text: str, table: ArityTable | None = None) -> Iterator[SExpr]:
    """Read successive top-level forms lazily.

    Laziness matters: a `define` read now extends the arity table used to
    read the forms after it.
    """
    reader = _Reader(tokenize(text), table)
    while not reader.at_end():
        yield reader.read_arity()[0]


def print_canonical(e: SExpr) -> str:
    """Deterministic canonical text: full parentheses, single blanks,
    ``nil`` for the empty list, no apostrophe sugar."""
    if isinstance(e, bool):
        raise TypeError("booleans are not S-expressions")
    if isinstance(e, int):
        return str(e)
    if isinstance(e, str):
        return e
    if e == ():
        return "nil"
    return "(" + " ".join(print_canonical(x) for x in e) + ")"


def size_chars(e: SExpr) -> int:
    """Character size of the canonical text; the dialect's complexity unit."""
    return len(print_canonical(e))


NEWLINE_BITS = format(10, "08b")


def to_bits(e: SExpr) -> str:
    """Canonical text as bits, 8 per character (MSB first), newline appended."""
    text = print_canonical(e) + "\n"
    return "".join(format(ord(c), "08b") for c in text)


def read_prefix_text(stream) -> str:
    """Consume 8-bit characters up to and including a newline.

    Raises OutOfData if the stream ends first and SExprSyntaxError on a
    character outside printable ASCII; the two conditions stay distinct.
    """
    chars = []
    while True:
        value = int(stream.read(8), 2)
        if value == 10:
            return "".join(chars)
        if not 32 <= value <= 126:
            raise SExprSyntaxError(f"unprintable character code {value} in expression bits")
        chars.append(chr(value))


def read_exp_from_stream(stream, table: ArityTable | None = None) -> SExpr:
    """Read one newline-delimited expression from a bit stream.

    The text is read with the implicit reader, so a printed zero-arity
    primitive like ``read-bit`` comes back as the call ``(read-bit)``.
    """
    return parse_implicit(read_prefix_text(stream), table)
