"""Recursive-descent parser for .uml documents.

Grammar (line-oriented blocks, `//` comments):

    document   := diagram*
    diagram    := 'usecase-diagram' NAME '{' uc_item* '}'
                | 'classdiagram' NAME '{' cd_item* '}'
    uc_item    := 'actor' NAME ';' | 'usecase' NAME ';'
                | NAME '->' NAME ';' | NAME 'extends' NAME ';'
    cd_item    := 'class' NAME [':' NAME] '{' member* '}' | NAME 'uses' NAME ';'
    member     := VIS NAME ':' type ';'
                | VIS NAME '(' [param (',' param)*] ')' [':' type] ';'
    param      := NAME ':' type
    type       := 'int' | 'char' | 'string' '[' NUMBER ']'
                | 'record' NAME '{' (NAME ':' type ';')* '}'
    VIS        := '-' | '#' | '+'

After an error the parser skips to the next `;` or `}` of the current block,
so one run can report several diagnostics.
"""
import logging
from pathlib import Path

from umlmap.diagnostics import (
    PARSE_BAD_CARDINALITY,
    PARSE_UNEXPECTED_TOKEN,
    PARSE_UNTERMINATED_BLOCK,
    ParseError,
    SourceSpan,
    error,
)
from umlmap.lexer import TokenKind, tokenize
from umlmap.syntax import (
    ActorDecl,
    ActorLinkDecl,
    AttributeDecl,
    ClassDecl,
    ClassDiagramDecl,
    ExtendDecl,
    FieldDecl,
    OperationDecl,
    ParamDecl,
    RecordTypeExpr,
    ScalarTypeExpr,
    StringTypeExpr,
    SyntaxTree,
    UseCaseDecl,
    UseCaseDiagramDecl,
    UsesDecl,
)

logger = logging.getLogger(__name__)

MIN_STRING_CAPACITY = 2
SCALAR_TYPES = ("int", "char")
_VISIBILITY_KINDS = (TokenKind.MINUS, TokenKind.HASH, TokenKind.PLUS)


def parse_document(text: str, file: str = "<input>") -> SyntaxTree:
    """Parse DSL source into a SyntaxTree.

    Raises ParseError carrying every diagnostic when any error was found.
    Empty input yields an empty tree.
    """
    tokens, diagnostics = tokenize(text, file)
    parser = _Parser(tokens)
    tree = parser.parse()
    diagnostics = sorted(diagnostics + parser.diagnostics,
                         key=lambda d: (d.span.line, d.span.column))
    logger.debug("parsed %s: %d token(s), %d diagnostic(s)", file, len(tokens), len(diagnostics))
    if any(d.is_error for d in diagnostics):
        raise ParseError(diagnostics)
    return tree


def decode_source(data: bytes, file: str = "<input>") -> str:
    """UTF-8 text of `data`. An undecodable byte is a ParseError at its position."""
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        line_start = data.rfind(b"\n", 0, exc.start) + 1
        line = data.count(b"\n", 0, exc.start) + 1
        column = len(data[line_start:exc.start].decode("utf-8", errors="replace")) + 1
        span = SourceSpan(file, line, column, 1)
        raise ParseError([error(PARSE_UNEXPECTED_TOKEN,
                                f"byte 0x{data[exc.start]:02x} is not valid UTF-8", span)]) from exc


def parse_file(path) -> SyntaxTree:
    """Read a UTF-8 .uml file and parse it. OSError propagates to the caller."""
    path = Path(path)
    return parse_document(decode_source(path.read_bytes(), str(path)), file=str(path))


class _SyntaxProblem(Exception):
    def __init__(self, code, message, span):
        super().__init__(message)
        self.code = code
        self.message = message
        self.span = span


class _Parser:
    def __init__(self, tokens):
        self._tokens = tokens
        self._pos = 0
        self.diagnostics = []

    # --- Token access ---

    def _current(self):
        return self._tokens[self._pos]

    def _peek(self, offset=1):
        index = min(self._pos + offset, len(self._tokens) - 1)
        return self._tokens[index]

    def _advance(self):
        tok = self._tokens[self._pos]
        if tok.kind is not TokenKind.EOF:
            self._pos += 1
        return tok

    def _at(self, kind, text=None):
        tok = self._current()
        return tok.kind is kind and (text is None or tok.text == text)

    def _expect(self, kind, what):
        tok = self._current()
        if tok.kind is not kind:
            raise _SyntaxProblem(PARSE_UNEXPECTED_TOKEN,
                                 f"expected {what}, found {tok.describe()}", tok.span)
        return self._advance()

    def _expect_name(self, what, after=None):
        tok = self._current()
        if tok.kind is not TokenKind.NAME:
            context = f" after {after!r}" if after else ""
            raise _SyntaxProblem(PARSE_UNEXPECTED_TOKEN,
                                 f"expected {what}{context}, found {tok.describe()}", tok.span)
        return self._advance()

    def _report(self, problem):
        self.diagnostics.append(error(problem.code, problem.message, problem.span))

    def _synchronize(self, top_level=False):
        """Skip to the next `;` (consumed) or to the `}` closing the current block."""
        depth = 0
        while not self._at(TokenKind.EOF):
            tok = self._current()
            if tok.kind is TokenKind.SEMI and depth == 0:
                self._advance()
                return
            if tok.kind is TokenKind.LBRACE:
                depth += 1
            elif tok.kind is TokenKind.RBRACE:
                if depth == 0:
                    if top_level:
                        self._advance()
                    return
                depth -= 1
                if depth == 0:
                    self._advance()
                    return
            self._advance()

    def _block(self, opener, parse_item):
        """Parse `item* '}'` after an already consumed `{`."""
        items = []
        while True:
            if self._at(TokenKind.RBRACE):
                self._advance()
                return items
            if self._at(TokenKind.EOF):
                self.diagnostics.append(error(
                    PARSE_UNTERMINATED_BLOCK,
                    f"block opened by {opener.text!r} is never closed with '}}'",
                    opener.span,
                ))
                return items
            try:
                items.append(parse_item())
            except _SyntaxProblem as problem:
                self._report(problem)
                self._synchronize()

    # --- Document ---

    def parse(self):
        diagrams = []
        while not self._at(TokenKind.EOF):
            try:
                if self._at(TokenKind.NAME, "classdiagram"):
                    diagrams.append(self._class_diagram())
                elif self._at(TokenKind.NAME, "usecase-diagram"):
                    diagrams.append(self._usecase_diagram())
                elif self._at(TokenKind.NAME, "class"):
                    self._stray_class()
                else:
                    tok = self._current()
                    raise _SyntaxProblem(
                        PARSE_UNEXPECTED_TOKEN,
                        f"expected 'classdiagram' or 'usecase-diagram', found {tok.describe()}",
                        tok.span,
                    )
            except _SyntaxProblem as problem:
                self._report(problem)
                self._synchronize(top_level=True)
        return SyntaxTree(tuple(diagrams))

    def _stray_class(self):
        keyword = self._advance()
        name = self._expect_name("class name", after="class")
        raise _SyntaxProblem(
            PARSE_UNEXPECTED_TOKEN,
            f"class {name.text!r} must be declared inside a 'classdiagram' block",
            keyword.span,
        )

    # --- Class diagrams ---

    def _class_diagram(self):
        keyword = self._advance()
        name = self._expect_name("diagram name", after=keyword.text)
        self._expect(TokenKind.LBRACE, "'{'")
        items = self._block(keyword, self._class_diagram_item)
        return ClassDiagramDecl(name.text, tuple(items), keyword.span)

    def _class_diagram_item(self):
        if self._at(TokenKind.NAME, "class"):
            return self._class_decl()
        tok = self._current()
        if tok.kind is TokenKind.NAME and self._peek().kind is TokenKind.NAME and self._peek().text == "uses":
            source = self._advance()
            self._advance()
            target = self._expect_name("class name", after="uses")
            self._expect(TokenKind.SEMI, "';'")
            return UsesDecl(source.text, target.text, source.span, target.span)
        raise _SyntaxProblem(
            PARSE_UNEXPECTED_TOKEN,
            f"expected 'class' or '<Class> uses <Class>;', found {tok.describe()}",
            tok.span,
        )

    def _class_decl(self):
        keyword = self._advance()
        name = self._expect_name("class name", after="class")
        parent = None
        parent_span = None
        if self._at(TokenKind.COLON):
            self._advance()
            parent_tok = self._expect_name("parent class name", after=":")
            parent, parent_span = parent_tok.text, parent_tok.span
            if self._at(TokenKind.COMMA):
                raise _SyntaxProblem(
                    PARSE_UNEXPECTED_TOKEN,
                    f"class {name.text!r} lists more than one parent; only single inheritance is supported",
                    self._current().span,
                )
        self._expect(TokenKind.LBRACE, "'{'")
        members = self._block(keyword, self._member)
        return ClassDecl(name.text, parent, tuple(members), name.span, parent_span)

    def _member(self):
        tok = self._current()
        if tok.kind not in _VISIBILITY_KINDS:
            raise _SyntaxProblem(
                PARSE_UNEXPECTED_TOKEN,
                f"expected visibility marker '-', '#' or '+', found {tok.describe()}",
                tok.span,
            )
        visibility = self._advance().text
        name = self._expect_name("member name", after=visibility)
        if self._at(TokenKind.LPAREN):
            self._advance()
            params = []
            if not self._at(TokenKind.RPAREN):
                params.append(self._param())
                while self._at(TokenKind.COMMA):
                    self._advance()
                    params.append(self._param())
            self._expect(TokenKind.RPAREN, "')' or ','")
            return_type = None
            if self._at(TokenKind.COLON):
                self._advance()
                return_type = self._type()
            self._expect(TokenKind.SEMI, "';'")
            return OperationDecl(visibility, name.text, tuple(params), return_type, name.span)
        if self._at(TokenKind.COLON):
            self._advance()
            type_expr = self._type()
            self._expect(TokenKind.SEMI, "';'")
            return AttributeDecl(visibility, name.text, type_expr, name.span)
        tok = self._current()
        raise _SyntaxProblem(PARSE_UNEXPECTED_TOKEN,
                             f"expected ':' or '(' after member {name.text!r}, found {tok.describe()}",
                             tok.span)

    def _param(self):
        name = self._expect_name("parameter name")
        self._expect(TokenKind.COLON, "':'")
        return ParamDecl(name.text, self._type(), name.span)

    def _type(self):
        tok = self._expect_name("type")
        if tok.text in SCALAR_TYPES:
            return ScalarTypeExpr(tok.text, tok.span)
        if tok.text == "string":
            return self._string_type(tok)
        if tok.text == "record":
            name = self._expect_name("record name", after="record")
            self._expect(TokenKind.LBRACE, "'{'")
            fields = self._block(tok, self._record_field)
            return RecordTypeExpr(name.text, tuple(fields), name.span)
        raise _SyntaxProblem(PARSE_UNEXPECTED_TOKEN,
                             f"unknown type {tok.text!r}; expected int, char, string[N] or record",
                             tok.span)

    def _string_type(self, keyword):
        if not self._at(TokenKind.LBRACKET):
            raise _SyntaxProblem(PARSE_BAD_CARDINALITY,
                                 "string type needs a capacity, e.g. string[8]", keyword.span)
        self._advance()
        tok = self._current()
        if tok.kind is not TokenKind.NUMBER:
            raise _SyntaxProblem(PARSE_BAD_CARDINALITY,
                                 f"string capacity must be an integer, found {tok.describe()}", tok.span)
        self._advance()
        capacity = int(tok.text)
        if capacity < MIN_STRING_CAPACITY:
            raise _SyntaxProblem(
                PARSE_BAD_CARDINALITY,
                f"string capacity {capacity} leaves no usable character; minimum is {MIN_STRING_CAPACITY}",
                tok.span,
            )
        self._expect(TokenKind.RBRACKET, "']'")
        return StringTypeExpr(capacity, keyword.span)

    def _record_field(self):
        name = self._expect_name("record field name")
        self._expect(TokenKind.COLON, "':'")
        type_expr = self._type()
        self._expect(TokenKind.SEMI, "';'")
        return FieldDecl(name.text, type_expr, name.span)

    # --- Use-case diagrams ---

    def _usecase_diagram(self):
        keyword = self._advance()
        name = self._expect_name("diagram name", after=keyword.text)
        self._expect(TokenKind.LBRACE, "'{'")
        items = self._block(keyword, self._usecase_item)
        return UseCaseDiagramDecl(name.text, tuple(items), keyword.span)

    def _usecase_item(self):
        first = self._current()
        if first.kind is not TokenKind.NAME:
            raise _SyntaxProblem(
                PARSE_UNEXPECTED_TOKEN,
                f"expected 'actor', 'usecase' or a link, found {first.describe()}",
                first.span,
            )
        second = self._peek()
        if second.kind is TokenKind.ARROW:
            self._advance()
            self._advance()
            target = self._expect_name("use case name", after="->")
            self._expect(TokenKind.SEMI, "';'")
            return ActorLinkDecl(first.text, target.text, first.span, target.span)
        if first.text in ("actor", "usecase") and second.kind is TokenKind.NAME \
                and self._peek(2).kind is not TokenKind.NAME:
            self._advance()
            name = self._expect_name(f"{first.text} name", after=first.text)
            self._expect(TokenKind.SEMI, "';'")
            if first.text == "actor":
                return ActorDecl(name.text, name.span)
            return UseCaseDecl(name.text, name.span)
        if second.kind is TokenKind.NAME and second.text == "extends":
            self._advance()
            self._advance()
            target = self._expect_name("use case name", after="extends")
            self._expect(TokenKind.SEMI, "';'")
            return ExtendDecl(first.text, target.text, first.span, target.span)
        if first.text in ("actor", "usecase"):
            self._advance()
            name = self._expect_name(f"{first.text} name", after=first.text)
            self._expect(TokenKind.SEMI, "';'")
            return ActorDecl(name.text, name.span) if first.text == "actor" else UseCaseDecl(name.text, name.span)
        raise _SyntaxProblem(
            PARSE_UNEXPECTED_TOKEN,
            f"expected '->' or 'extends' after {first.text!r}, found {second.describe()}",
            second.span,
        )
