"""Hand-rolled lexer shared by both grammar families.

Tokens carry a kind (identifier, keyword, literal, operator, punct) plus
their source position.  Comments are consumed and never emitted, so every
downstream consumer (n-gram scoring, parsing, dataflow) is invariant under
comment-only edits by construction.  Python's line structure is not encoded
as tokens; the parser recovers logical lines from token positions.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import DataError
from .grammar import Grammar

KINDS = ("identifier", "keyword", "literal", "operator", "punct")

PUNCT_CHARS = set("()[]{},;:")

# Multi-character operators, longest first within each family.
C_OPERATORS = [
    "<<=", ">>=", "...",
    "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=", "&&", "||",
    "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "::",
    "+", "-", "*", "/", "%", "<", ">", "=", "!", "&", "|", "^", "~", "?", ".", "#",
]
PY_OPERATORS = [
    "**=", "//=", ">>=", "<<=", "...",
    "**", "//", "->", ":=", "<=", ">=", "==", "!=", "<<", ">>",
    "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "@=",
    "+", "-", "*", "/", "%", "<", ">", "=", "&", "|", "^", "~", "@", ".",
]


class LexError(DataError):
    """Raised for byte sequences no token rule accepts."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    lexeme: str
    kind: str
    line: int
    col: int

    def __post_init__(self):
        if not self.lexeme:
            raise DataError("token lexeme must be non-empty")


@dataclass(frozen=True)
class TokenSequence:
    tokens: tuple[Token, ...]

    def lexemes(self) -> list[str]:
        return [t.lexeme for t in self.tokens]

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    def __getitem__(self, i):
        return self.tokens[i]


def _is_ident_start(ch: str) -> bool:
    return ch.isalpha() or ch == "_"


def _is_ident_char(ch: str) -> bool:
    return ch.isalnum() or ch == "_"


def tokenize(code: str, grammar: Grammar) -> TokenSequence:
    """Lex ``code`` under ``grammar``; comments are dropped.

    Raises LexError on unterminated strings/comments or characters outside
    the grammar's alphabet.
    """
    lexer = _Lexer(code, grammar)
    return TokenSequence(tuple(lexer.run()))


class _Lexer:
    def __init__(self, code: str, grammar: Grammar):
        self.code = code
        self.grammar = grammar
        self.pos = 0
        self.line = 1
        self.col = 1
        self.operators = C_OPERATORS if grammar.family == "c" else PY_OPERATORS

    def error(self, message: str) -> LexError:
        return LexError(message, self.line, self.col)

    def peek(self, offset: int = 0) -> str:
        i = self.pos + offset
        return self.code[i] if i < len(self.code) else ""

    def advance(self, n: int = 1) -> str:
        text = self.code[self.pos : self.pos + n]
        for ch in text:
            if ch == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
        self.pos += n
        return text

    def startswith(self, s: str) -> bool:
        return self.code.startswith(s, self.pos)

    def run(self) -> list[Token]:
        out: list[Token] = []
        while self.pos < len(self.code):
            ch = self.peek()
            if ch in " \t\r\n\f\v":
                self.advance()
                continue
            if self.grammar.family == "python" and ch == "\\" and self.peek(1) in ("\n", "\r"):
                # Explicit continuation: swallow the newline without bumping
                # the line counter so the continued tokens stay on the same
                # logical line for the indentation-aware parser.
                self.pos += 2
                continue
            if self._skip_comment():
                continue
            token = self._next_token()
            out.append(token)
        return out

    def _skip_comment(self) -> bool:
        for prefix in self.grammar.line_comments:
            if self.startswith(prefix):
                while self.pos < len(self.code) and self.peek() != "\n":
                    self.advance()
                return True
        for open_, close in self.grammar.block_comments:
            if self.startswith(open_):
                start_line, start_col = self.line, self.col
                self.advance(len(open_))
                while self.pos < len(self.code) and not self.startswith(close):
                    self.advance()
                if self.pos >= len(self.code):
                    raise LexError("unterminated block comment", start_line, start_col)
                self.advance(len(close))
                return True
        return False

    def _next_token(self) -> Token:
        line, col = self.line, self.col
        ch = self.peek()

        if _is_ident_start(ch):
            return self._identifier(line, col)
        if ch.isdigit() or (ch == "." and self.peek(1).isdigit()):
            return self._number(line, col)
        if self.grammar.family == "python" and ch in "rbfuRBFU":
            # String prefixes: one or two prefix letters directly before a quote.
            for width in (2, 1):
                prefix = self.code[self.pos : self.pos + width]
                if (
                    len(prefix) == width
                    and all(c in "rbfuRBFU" for c in prefix)
                    and self.peek(width) in "'\""
                ):
                    self.advance(width)
                    return self._string(line, col, prefix=prefix)
        if ch == '"' or (ch == "'" and self.grammar.family == "python"):
            return self._string(line, col)
        if ch == "'" and self.grammar.family == "c":
            return self._char_literal(line, col)
        # Multi-character operators first: ':=' and '::' share a prefix with
        # the ':' punct.
        for op in self.operators:
            if self.startswith(op):
                self.advance(len(op))
                return Token(op, "operator", line, col)
        if ch in PUNCT_CHARS:
            self.advance()
            return Token(ch, "punct", line, col)
        raise self.error(f"unlexable byte sequence {ch!r}")

    def _identifier(self, line: int, col: int) -> Token:
        start = self.pos
        while self.pos < len(self.code) and _is_ident_char(self.peek()):
            self.advance()
        lexeme = self.code[start : self.pos]
        kind = "keyword" if self.grammar.is_keyword(lexeme) else "identifier"
        return Token(lexeme, kind, line, col)

    def _number(self, line: int, col: int) -> Token:
        start = self.pos
        if self.peek() == "0" and self.peek(1) in "xXbBoO":
            self.advance(2)
            while self.pos < len(self.code) and (self.peek().isalnum() or self.peek() == "_"):
                self.advance()
        else:
            seen_dot = False
            seen_exp = False
            while self.pos < len(self.code):
                ch = self.peek()
                if ch.isdigit() or ch == "_":
                    self.advance()
                elif ch == "." and not seen_dot and not seen_exp:
                    seen_dot = True
                    self.advance()
                elif ch in "eE" and not seen_exp and self.peek(1).isdigit():
                    seen_exp = True
                    self.advance(2)
                elif ch in "eE" and not seen_exp and self.peek(1) in "+-" and self.peek(2).isdigit():
                    seen_exp = True
                    self.advance(3)
                else:
                    break
        # Trailing type suffixes (C: uUlLfF; python: jJ).
        suffixes = "uUlLfF" if self.grammar.family == "c" else "jJ"
        while self.pos < len(self.code) and self.peek() in suffixes:
            self.advance()
        return Token(self.code[start : self.pos], "literal", line, col)

    def _string(self, line: int, col: int, prefix: str = "") -> Token:
        quote = self.peek()
        triple = self.grammar.family == "python" and self.startswith(quote * 3)
        delim = quote * 3 if triple else quote
        start = self.pos - len(prefix)
        self.advance(len(delim))
        while self.pos < len(self.code):
            if self.peek() == "\\":
                self.advance(2)
                continue
            if self.startswith(delim):
                self.advance(len(delim))
                return Token(self.code[start : self.pos], "literal", line, col)
            if not triple and self.peek() == "\n":
                break
            self.advance()
        raise LexError("unterminated string literal", line, col)

    def _char_literal(self, line: int, col: int) -> Token:
        start = self.pos
        self.advance()  # opening quote
        while self.pos < len(self.code):
            if self.peek() == "\\":
                self.advance(2)
                continue
            if self.peek() == "'":
                self.advance()
                return Token(self.code[start : self.pos], "literal", line, col)
            if self.peek() == "\n":
                break
            self.advance()
        raise LexError("unterminated character literal", line, col)
