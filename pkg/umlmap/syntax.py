"""Raw syntax tree of a .uml document.

Names are unresolved text here: duplicates and dangling references are
representable. Every node carries the span of its opening token; spans are
excluded from equality so that two trees compare structurally.
"""
from dataclasses import dataclass, field
from typing import Optional, Union

from umlmap.diagnostics import SourceSpan

VISIBILITY_SYMBOLS = ("-", "#", "+")


def _span():
    return field(default=None, compare=False, repr=False)


# ----------------------------
# Type Expressions
# ----------------------------
@dataclass(frozen=True)
class ScalarTypeExpr:
    name: str  # 'int' or 'char'
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class StringTypeExpr:
    capacity: int
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class FieldDecl:
    name: str
    type: "TypeExpr"
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class RecordTypeExpr:
    name: str
    fields: tuple = ()
    span: Optional[SourceSpan] = _span()


TypeExpr = Union[ScalarTypeExpr, StringTypeExpr, RecordTypeExpr]


# ----------------------------
# Class Diagram Nodes
# ----------------------------
@dataclass(frozen=True)
class AttributeDecl:
    visibility: str
    name: str
    type: TypeExpr
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class ParamDecl:
    name: str
    type: TypeExpr
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class OperationDecl:
    visibility: str
    name: str
    params: tuple = ()
    return_type: Optional[TypeExpr] = None
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class ClassDecl:
    name: str
    parent: Optional[str] = None
    members: tuple = ()
    span: Optional[SourceSpan] = _span()
    parent_span: Optional[SourceSpan] = _span()

    @property
    def attributes(self):
        return [m for m in self.members if isinstance(m, AttributeDecl)]

    @property
    def operations(self):
        return [m for m in self.members if isinstance(m, OperationDecl)]


@dataclass(frozen=True)
class UsesDecl:
    source: str
    target: str
    span: Optional[SourceSpan] = _span()
    target_span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class ClassDiagramDecl:
    name: str
    items: tuple = ()
    span: Optional[SourceSpan] = _span()

    @property
    def classes(self):
        return [i for i in self.items if isinstance(i, ClassDecl)]

    @property
    def uses(self):
        return [i for i in self.items if isinstance(i, UsesDecl)]


# ----------------------------
# Use-Case Diagram Nodes
# ----------------------------
@dataclass(frozen=True)
class ActorDecl:
    name: str
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class UseCaseDecl:
    name: str
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class ActorLinkDecl:
    actor: str
    usecase: str
    span: Optional[SourceSpan] = _span()
    target_span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class ExtendDecl:
    source: str
    target: str
    span: Optional[SourceSpan] = _span()
    target_span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class UseCaseDiagramDecl:
    name: str
    items: tuple = ()
    span: Optional[SourceSpan] = _span()

    @property
    def actors(self):
        return [i for i in self.items if isinstance(i, ActorDecl)]

    @property
    def usecases(self):
        return [i for i in self.items if isinstance(i, UseCaseDecl)]

    @property
    def links(self):
        return [i for i in self.items if isinstance(i, ActorLinkDecl)]

    @property
    def extends(self):
        return [i for i in self.items if isinstance(i, ExtendDecl)]


# ----------------------------
# Document
# ----------------------------
@dataclass(frozen=True)
class SyntaxTree:
    """Diagrams in document order; the per-kind views keep their relative order."""
    diagrams: tuple = ()

    @property
    def usecase_diagrams(self):
        return [d for d in self.diagrams if isinstance(d, UseCaseDiagramDecl)]

    @property
    def class_diagrams(self):
        return [d for d in self.diagrams if isinstance(d, ClassDiagramDecl)]

    def to_dict(self) -> dict:
        """JSON-ready structure with a stable key order."""
        return {"diagrams": [_node_dict(d) for d in self.diagrams]}


def _node_dict(node) -> dict:
    kind = type(node).__name__
    if isinstance(node, UseCaseDiagramDecl):
        body = {"name": node.name, "items": [_node_dict(i) for i in node.items]}
    elif isinstance(node, ClassDiagramDecl):
        body = {"name": node.name, "items": [_node_dict(i) for i in node.items]}
    elif isinstance(node, ClassDecl):
        body = {"name": node.name, "parent": node.parent,
                "members": [_node_dict(m) for m in node.members]}
    elif isinstance(node, AttributeDecl):
        body = {"visibility": node.visibility, "name": node.name, "type": _node_dict(node.type)}
    elif isinstance(node, OperationDecl):
        body = {"visibility": node.visibility, "name": node.name,
                "params": [_node_dict(p) for p in node.params],
                "return_type": _node_dict(node.return_type) if node.return_type else None}
    elif isinstance(node, (ParamDecl, FieldDecl)):
        body = {"name": node.name, "type": _node_dict(node.type)}
    elif isinstance(node, ScalarTypeExpr):
        body = {"name": node.name}
    elif isinstance(node, StringTypeExpr):
        body = {"capacity": node.capacity}
    elif isinstance(node, RecordTypeExpr):
        body = {"name": node.name, "fields": [_node_dict(f) for f in node.fields]}
    elif isinstance(node, (UsesDecl, ExtendDecl)):
        body = {"source": node.source, "target": node.target}
    elif isinstance(node, ActorLinkDecl):
        body = {"actor": node.actor, "usecase": node.usecase}
    else:  # ActorDecl, UseCaseDecl
        body = {"name": node.name}
    result = {"kind": kind}
    result.update(body)
    if node.span is not None:
        result["line"] = node.span.line
        result["column"] = node.span.column
    return result
