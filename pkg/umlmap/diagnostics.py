import enum
from dataclasses import dataclass

# ----------------------------
# Code Catalog
# ----------------------------
PARSE_UNEXPECTED_TOKEN = "PARSE_UNEXPECTED_TOKEN"
PARSE_UNTERMINATED_BLOCK = "PARSE_UNTERMINATED_BLOCK"
PARSE_BAD_CARDINALITY = "PARSE_BAD_CARDINALITY"
RESOLVE_DUPLICATE_NAME = "RESOLVE_DUPLICATE_NAME"
RESOLVE_UNKNOWN_NAME = "RESOLVE_UNKNOWN_NAME"
RESOLVE_SELF_EXTEND = "RESOLVE_SELF_EXTEND"
RESOLVE_BAD_CONSTRUCTOR = "RESOLVE_BAD_CONSTRUCTOR"
TRACE_UNMAPPED_USECASE = "TRACE_UNMAPPED_USECASE"
TRACE_AMBIGUOUS_USECASE = "TRACE_AMBIGUOUS_USECASE"

DIAGNOSTIC_CODES = frozenset({
    PARSE_UNEXPECTED_TOKEN,
    PARSE_UNTERMINATED_BLOCK,
    PARSE_BAD_CARDINALITY,
    RESOLVE_DUPLICATE_NAME,
    RESOLVE_UNKNOWN_NAME,
    RESOLVE_SELF_EXTEND,
    RESOLVE_BAD_CONSTRUCTOR,
    TRACE_UNMAPPED_USECASE,
    TRACE_AMBIGUOUS_USECASE,
})


class Severity(enum.Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class SourceSpan:
    """A single-line region of a source file. Line and column are 1-based."""
    file: str
    line: int
    column: int
    length: int = 0

    def __post_init__(self):
        if self.line < 1 or self.column < 1:
            raise ValueError(f"span position must be 1-based, got {self.line}:{self.column}")
        if self.length < 0:
            raise ValueError("span length must be non-negative")

    def __str__(self):
        return f"{self.file}:{self.line}:{self.column}"


def render_finding(span: SourceSpan, severity: Severity, code: str, message: str) -> str:
    """Shared `file:line:col: severity CODE: message` rendering."""
    return f"{span}: {severity.value} {code}: {message}"


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    code: str
    message: str
    span: SourceSpan

    def __post_init__(self):
        if self.code not in DIAGNOSTIC_CODES:
            raise ValueError(f"unknown diagnostic code {self.code!r}")

    @property
    def is_error(self) -> bool:
        return self.severity is Severity.ERROR

    def render(self) -> str:
        return render_finding(self.span, self.severity, self.code, self.message)


def error(code: str, message: str, span: SourceSpan) -> Diagnostic:
    return Diagnostic(Severity.ERROR, code, message, span)


# ----------------------------
# Exceptions
# ----------------------------
class UmlMapError(Exception):
    """Base class for every failure raised by the toolchain."""


class DiagnosticError(UmlMapError):
    """Raised when a stage produced error diagnostics; carries all of them."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        first = self.diagnostics[0].render() if self.diagnostics else "no diagnostics"
        extra = len(self.diagnostics) - 1
        super().__init__(first if extra <= 0 else f"{first} (+{extra} more)")


class ParseError(DiagnosticError):
    pass


class ResolveError(DiagnosticError):
    pass


class TraceError(DiagnosticError):
    pass


class ModelQueryError(UmlMapError):
    code = "MODEL_QUERY"

    def __init__(self, message: str, subject=()):
        super().__init__(message)
        self.subject = tuple(subject)


class UnknownClassError(ModelQueryError):
    code = "UNKNOWN_CLASS"


class CycleDetectedError(ModelQueryError):
    code = "CYCLE_DETECTED"


class PreconditionError(UmlMapError):
    code = "PRECONDITION_UNVALIDATED"

    def __init__(self, message: str, violations=()):
        super().__init__(message)
        self.violations = list(violations)
