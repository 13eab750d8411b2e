import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Union

from umlmap.diagnostics import SourceSpan


def _span():
    return field(default=None, compare=False, repr=False)


# ----------------------------
# Enums
# ----------------------------
class Visibility(enum.Enum):
    PRIVATE = "private"
    PROTECTED = "protected"
    PUBLIC = "public"

    @property
    def symbol(self) -> str:
        return _VISIBILITY_SYMBOLS[self]

    @classmethod
    def from_symbol(cls, symbol: str) -> "Visibility":
        for visibility, sym in _VISIBILITY_SYMBOLS.items():
            if sym == symbol:
                return visibility
        raise ValueError(f"unknown visibility marker {symbol!r}")


_VISIBILITY_SYMBOLS = {
    Visibility.PRIVATE: "-",
    Visibility.PROTECTED: "#",
    Visibility.PUBLIC: "+",
}

# Section order used wherever members are grouped by visibility.
VISIBILITY_ORDER = (Visibility.PRIVATE, Visibility.PROTECTED, Visibility.PUBLIC)


class LinkKind(enum.Enum):
    ACTOR_ASSOCIATION = "actor_association"
    EXTEND = "extend"


class RelationKind(enum.Enum):
    INHERITANCE = "inheritance"
    USES = "uses"


class Access(enum.Enum):
    OWN = "own"
    INHERITED_ACCESSIBLE = "inherited_accessible"
    INHERITED_HIDDEN = "inherited_hidden"


# ----------------------------
# Types
# ----------------------------
@dataclass(frozen=True)
class ScalarType:
    kind: str  # 'int' or 'char'

    def render(self) -> str:
        return self.kind


@dataclass(frozen=True)
class FixedString:
    """Capacity includes one reserved terminator slot: capacity - 1 usable characters."""
    capacity: int

    @property
    def usable(self) -> int:
        return self.capacity - 1

    def render(self) -> str:
        return f"string[{self.capacity}]"


@dataclass(frozen=True)
class RecordType:
    name: str
    fields: tuple = ()

    def render(self) -> str:
        return f"record {self.name}"


TypeRef = Union[ScalarType, FixedString, RecordType]


# ----------------------------
# Members
# ----------------------------
@dataclass(frozen=True)
class AttributeDef:
    name: str
    visibility: Visibility
    type: TypeRef
    span: Optional[SourceSpan] = _span()

    @property
    def is_record(self) -> bool:
        return isinstance(self.type, RecordType)


@dataclass(frozen=True)
class Param:
    name: str
    type: TypeRef


@dataclass(frozen=True)
class OperationDef:
    name: str
    visibility: Visibility
    params: tuple = ()
    return_type: Optional[TypeRef] = None
    is_constructor: bool = False
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class ClassNode:
    name: str
    parent: Optional[str] = None
    attributes: tuple = ()
    operations: tuple = ()
    span: Optional[SourceSpan] = _span()
    parent_span: Optional[SourceSpan] = _span()

    @property
    def members(self):
        """Attributes and operations in declaration order.

        Models built in memory carry no positions; their attributes come first.
        """
        members = list(self.attributes) + list(self.operations)
        if all(m.span is not None for m in members):
            members.sort(key=lambda m: (m.span.line, m.span.column))
        return members

    def operation(self, name: str) -> Optional[OperationDef]:
        return next((op for op in self.operations if op.name == name), None)


# ----------------------------
# Diagram Entities
# ----------------------------
@dataclass(frozen=True)
class ActorDef:
    name: str
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class UseCaseDef:
    name: str
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class UseCaseLink:
    kind: LinkKind
    source: str
    target: str
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class ClassRelation:
    kind: RelationKind
    source: str
    target: str
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class TraceEntry:
    usecase: str
    class_name: str
    operation: str

    def to_dict(self) -> dict:
        return {"usecase": self.usecase, "class": self.class_name, "operation": self.operation}


@dataclass(frozen=True)
class CallObligation:
    caller_class: str
    caller_op: str
    callee_class: str
    callee_op: str
    span: Optional[SourceSpan] = _span()

    def as_tuple(self):
        return (self.caller_class, self.caller_op, self.callee_class, self.callee_op)


# ----------------------------
# Model
# ----------------------------
@dataclass(frozen=True)
class Model:
    """Resolved, immutable semantic model of one .uml document."""
    name: str = "model"
    actors: tuple = ()
    usecases: tuple = ()
    usecase_links: tuple = ()
    classes: tuple = ()
    class_relations: tuple = ()

    @cached_property
    def classes_by_name(self) -> dict:
        # first declaration wins; duplicates never survive resolve
        index = {}
        for node in self.classes:
            index.setdefault(node.name, node)
        return index

    @cached_property
    def actor_names(self) -> frozenset:
        return frozenset(a.name for a in self.actors)

    @cached_property
    def usecase_names(self) -> frozenset:
        return frozenset(u.name for u in self.usecases)

    def get_class(self, name: str) -> Optional[ClassNode]:
        return self.classes_by_name.get(name)

    @property
    def extend_links(self):
        return [link for link in self.usecase_links if link.kind is LinkKind.EXTEND]

    @property
    def actor_links(self):
        return [link for link in self.usecase_links if link.kind is LinkKind.ACTOR_ASSOCIATION]

    def relations(self, kind: RelationKind):
        return [rel for rel in self.class_relations if rel.kind is kind]

    def subclasses_of(self, name: str):
        return [node.name for node in self.classes if node.parent == name]
