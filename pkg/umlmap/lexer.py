"""Tokenizer for the .uml DSL."""
import enum
import re
from dataclasses import dataclass

from umlmap.diagnostics import PARSE_UNEXPECTED_TOKEN, SourceSpan, error


class TokenKind(enum.Enum):
    NAME = "name"
    NUMBER = "number"
    LBRACE = "{"
    RBRACE = "}"
    LPAREN = "("
    RPAREN = ")"
    LBRACKET = "["
    RBRACKET = "]"
    SEMI = ";"
    COLON = ":"
    COMMA = ","
    ARROW = "->"
    MINUS = "-"
    HASH = "#"
    PLUS = "+"
    EOF = "end of input"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    span: SourceSpan

    def describe(self) -> str:
        if self.kind is TokenKind.EOF:
            return "end of input"
        return repr(self.text)


_PUNCTUATION = {
    "->": TokenKind.ARROW,
    "{": TokenKind.LBRACE,
    "}": TokenKind.RBRACE,
    "(": TokenKind.LPAREN,
    ")": TokenKind.RPAREN,
    "[": TokenKind.LBRACKET,
    "]": TokenKind.RBRACKET,
    ";": TokenKind.SEMI,
    ":": TokenKind.COLON,
    ",": TokenKind.COMMA,
    "-": TokenKind.MINUS,
    "#": TokenKind.HASH,
    "+": TokenKind.PLUS,
}

# `usecase-diagram` is the only keyword containing a hyphen; it must win over
# NAME followed by the private-visibility marker.
_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r\f\v]+)"
    r"|(?P<newline>\n)"
    r"|(?P<comment>//[^\n]*)"
    r"|(?P<name>usecase-diagram(?![A-Za-z0-9_])|[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<number>[0-9]+)"
    r"|(?P<punct>->|[{}()\[\];:,\-#+])"
)


def tokenize(text: str, file: str = "<input>"):
    """Split `text` into tokens.

    Returns (tokens, diagnostics). The token list always ends with an EOF
    token; characters that start no token are reported and skipped.
    """
    tokens = []
    diagnostics = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        column = pos - line_start + 1
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            diagnostics.append(error(
                PARSE_UNEXPECTED_TOKEN,
                f"unexpected character {text[pos]!r}",
                SourceSpan(file, line, column, 1),
            ))
            pos += 1
            continue
        kind = match.lastgroup
        value = match.group()
        if kind == "newline":
            line += 1
            line_start = match.end()
        elif kind == "name":
            tokens.append(Token(TokenKind.NAME, value, SourceSpan(file, line, column, len(value))))
        elif kind == "number":
            tokens.append(Token(TokenKind.NUMBER, value, SourceSpan(file, line, column, len(value))))
        elif kind == "punct":
            tokens.append(Token(_PUNCTUATION[value], value, SourceSpan(file, line, column, len(value))))
        pos = match.end()
    tokens.append(Token(TokenKind.EOF, "", SourceSpan(file, line, pos - line_start + 1, 0)))
    return tokens, diagnostics
