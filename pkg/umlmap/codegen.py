"""Model -> SkeletonDoc -> declaration-only text.

Canonical `.skel` layout (bit-exact, `\\n` line ends):

    skeleton Activity extends Research {
      public:
        ctor Activity()
        op Commit(Amt: int) // calls Order.RecordOrder
    }

Sections appear in the order private, protected, public and are omitted when
empty. Record attributes open a nested `record <name>: <Type> {` block.
"""
import enum
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from umlmap.diagnostics import PreconditionError
from umlmap.model import (
    VISIBILITY_ORDER,
    AttributeDef,
    ClassNode,
    FixedString,
    Model,
    OperationDef,
    Param,
    RecordType,
    RelationKind,
    ScalarType,
    Visibility,
)
from umlmap.queries import call_obligations
from umlmap.validator import has_errors, validate

logger = logging.getLogger(__name__)

INDENT = "  "
SKELETON_SUFFIX = ".skel"
HEADER_SUFFIX = ".h"


class ConstructorPolicy(enum.Enum):
    MODEL_DECLARED_ONLY = "model_declared_only"
    INHERITANCE_PARTICIPANTS = "inheritance_participants"


class MemberKind(enum.Enum):
    ATTRIBUTE = "attribute"
    RECORD_ATTRIBUTE = "record_attribute"
    OPERATION = "operation"
    CONSTRUCTOR = "constructor"


class Origin(enum.Enum):
    DECLARED = "declared"
    SYNTHESIZED = "synthesized"


@dataclass(frozen=True)
class EmitOptions:
    synthesize_accessors: bool = False
    constructor_policy: ConstructorPolicy = ConstructorPolicy.INHERITANCE_PARTICIPANTS


@dataclass(frozen=True)
class MemberDecl:
    kind: MemberKind
    name: str
    type: object = None            # attribute type or operation return type
    params: tuple = ()
    fields: tuple = ()             # nested MemberDecl for record attributes
    record_name: Optional[str] = None
    origin: Origin = Origin.DECLARED
    calls: tuple = ()              # "Class.Op" targets of call obligations


@dataclass(frozen=True)
class ClassSkeleton:
    name: str
    parent: Optional[str] = None
    sections: tuple = ()           # ((Visibility, (MemberDecl, ...)), ...)
    call_notes: tuple = ()         # CallObligation annotations on caller operations

    def section(self, visibility: Visibility):
        return next((members for vis, members in self.sections if vis is visibility), ())


@dataclass(frozen=True)
class SkeletonDoc:
    units: tuple = ()

    def unit(self, name: str) -> Optional[ClassSkeleton]:
        return next((u for u in self.units if u.name == name), None)


# ----------------------------
# Mapping
# ----------------------------
def map_model(model: Model, opts: EmitOptions = EmitOptions()) -> SkeletonDoc:
    """Map a validated model to one ClassSkeleton per class.

    Raises PreconditionError when the model still has error-severity findings.
    """
    findings = validate(model)
    if has_errors(findings):
        errors = [v for v in findings if v.is_error]
        raise PreconditionError(
            f"model {model.name!r} has {len(errors)} validation error(s); generation refused", errors)

    obligations = call_obligations(model)
    participants = set()
    for relation in model.relations(RelationKind.INHERITANCE):
        participants.update((relation.source, relation.target))

    units = []
    for node in model.classes:
        notes = tuple(o for o in obligations if o.caller_class == node.name)
        units.append(_map_class(node, opts, node.name in participants, notes))
    logger.debug("mapped %d class(es) with %d call obligation(s)", len(units), len(obligations))
    return SkeletonDoc(tuple(units))


def _map_class(node: ClassNode, opts, in_inheritance, notes) -> ClassSkeleton:
    buckets = {vis: [] for vis in VISIBILITY_ORDER}

    has_declared_ctor = any(op.is_constructor for op in node.operations)
    if opts.constructor_policy is ConstructorPolicy.INHERITANCE_PARTICIPANTS \
            and in_inheritance and not has_declared_ctor:
        buckets[Visibility.PUBLIC].append(
            MemberDecl(MemberKind.CONSTRUCTOR, node.name, origin=Origin.SYNTHESIZED))

    for member in node.members:
        if isinstance(member, AttributeDef):
            decl = _attribute_member(member)
        else:
            kind = MemberKind.CONSTRUCTOR if member.is_constructor else MemberKind.OPERATION
            decl = _operation_member(member, kind, notes)
        buckets[member.visibility].append(decl)
    if opts.synthesize_accessors:
        for op in synthesize_accessors(node):
            buckets[op.visibility].append(
                _operation_member(op, MemberKind.OPERATION, (), origin=Origin.SYNTHESIZED))

    sections = tuple((vis, tuple(buckets[vis])) for vis in VISIBILITY_ORDER if buckets[vis])
    return ClassSkeleton(node.name, node.parent, sections, notes)


def _attribute_member(attribute) -> MemberDecl:
    if isinstance(attribute.type, RecordType):
        return MemberDecl(
            MemberKind.RECORD_ATTRIBUTE, attribute.name,
            fields=tuple(_attribute_member(f) for f in attribute.type.fields),
            record_name=attribute.type.name,
        )
    return MemberDecl(MemberKind.ATTRIBUTE, attribute.name, type=attribute.type)


def _operation_member(op: OperationDef, kind, notes, origin=Origin.DECLARED) -> MemberDecl:
    calls = tuple(f"{o.callee_class}.{o.callee_op}" for o in notes if o.caller_op == op.name)
    return MemberDecl(kind, op.name, type=op.return_type, params=op.params, origin=origin, calls=calls)


def synthesize_accessors(node: ClassNode):
    """Setter/getter pairs for scalar and fixed-string attributes that lack them.

    Existing accessors (matched ignoring case) are never duplicated; record
    attributes get none.
    """
    existing = {op.name.casefold() for op in node.operations}
    synthesized = []
    for attribute in node.attributes:
        if not isinstance(attribute.type, (ScalarType, FixedString)):
            continue
        setter, getter = f"Set{attribute.name}", f"Get{attribute.name}"
        if setter.casefold() not in existing:
            param = Param(attribute.name[:3].lower(), attribute.type)
            synthesized.append(OperationDef(setter, Visibility.PUBLIC, (param,), None))
        if getter.casefold() not in existing:
            synthesized.append(OperationDef(getter, Visibility.PUBLIC, (), attribute.type))
    return synthesized


# ----------------------------
# Canonical Emission
# ----------------------------
def emit_canonical(doc: SkeletonDoc) -> str:
    return "\n".join(emit_unit(unit) for unit in doc.units)


def emit_unit(unit: ClassSkeleton) -> str:
    header = f"skeleton {unit.name}"
    if unit.parent is not None:
        header += f" extends {unit.parent}"
    lines = [header + " {"]
    for visibility, members in unit.sections:
        lines.append(f"{INDENT}{visibility.value}:")
        for member in members:
            _emit_member(member, lines, INDENT * 2)
    lines.append("}")
    return "".join(line + "\n" for line in lines)


def _emit_member(member: MemberDecl, lines, indent):
    if member.kind is MemberKind.RECORD_ATTRIBUTE:
        lines.append(f"{indent}record {member.name}: {member.record_name} {{")
        for sub in member.fields:
            _emit_member(sub, lines, indent + INDENT)
        lines.append(f"{indent}}}")
    elif member.kind is MemberKind.ATTRIBUTE:
        lines.append(f"{indent}attr {member.name}: {member.type.render()}")
    else:
        keyword = "ctor" if member.kind is MemberKind.CONSTRUCTOR else "op"
        params = ", ".join(f"{p.name}: {p.type.render()}" for p in member.params)
        line = f"{indent}{keyword} {member.name}({params})"
        if member.type is not None:
            line += f": {member.type.render()}"
        if member.calls:
            line += f" // calls {', '.join(member.calls)}"
        lines.append(line)


# ----------------------------
# C++ Header Transliteration
# ----------------------------
def emit_cpp_header(unit: ClassSkeleton) -> str:
    """Render a unit the way a C++ class declaration reads. Not normative."""
    header = f"class {unit.name}"
    if unit.parent is not None:
        header += f" : public {unit.parent}"
    lines = [header + " {"]
    for visibility, members in unit.sections:
        lines.append(f"{visibility.value}:")
        for member in members:
            _cpp_member(member, lines, INDENT)
    lines.append(f"}}; // class {unit.name}")
    return "".join(line + "\n" for line in lines)


def _cpp_declarator(type_ref, name) -> str:
    if isinstance(type_ref, FixedString):
        return f"char {name}[{type_ref.capacity}]"
    return f"{type_ref.render()} {name}"


def _cpp_return(type_ref) -> str:
    if type_ref is None:
        return "void "
    if isinstance(type_ref, FixedString):
        return "char *"
    return f"{type_ref.render()} "


def _cpp_member(member: MemberDecl, lines, indent):
    if member.kind is MemberKind.RECORD_ATTRIBUTE:
        lines.append(f"{indent}struct {member.record_name} {{")
        for sub in member.fields:
            _cpp_member(sub, lines, indent + INDENT)
        lines.append(f"{indent}}} {member.name};")
    elif member.kind is MemberKind.ATTRIBUTE:
        lines.append(f"{indent}{_cpp_declarator(member.type, member.name)};")
    else:
        params = ", ".join(_cpp_declarator(p.type, p.name) for p in member.params)
        if member.kind is MemberKind.CONSTRUCTOR:
            line = f"{indent}{member.name}({params}); //constructor"
        else:
            line = f"{indent}{_cpp_return(member.type)}{member.name}({params});"
        if member.calls:
            line += f" // calls {', '.join(member.calls)}"
        lines.append(line)


# ----------------------------
# Output Files
# ----------------------------
def write_skeletons(doc: SkeletonDoc, output_dir, model_name: str, target: str = "skel"):
    """Write one file per class plus, for `.skel`, a combined `<model>.skel`.

    The combined file becomes `<model>.model.skel` when a class has the model's name.

    Returns the written paths, per-class files first in declaration order.
    """
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    written = []
    if target == "cpp":
        for unit in doc.units:
            path = output_dir / f"{unit.name.lower()}{HEADER_SUFFIX}"
            path.write_text(emit_cpp_header(unit), encoding="utf-8", newline="\n")
            written.append(path)
    else:
        for unit in doc.units:
            path = output_dir / f"{unit.name.lower()}{SKELETON_SUFFIX}"
            path.write_text(emit_unit(unit), encoding="utf-8", newline="\n")
            written.append(path)
        combined = output_dir / f"{model_name.lower()}{SKELETON_SUFFIX}"
        if combined in written:
            # model named like one of its classes
            combined = output_dir / f"{model_name.lower()}.model{SKELETON_SUFFIX}"
        combined.write_text(emit_canonical(doc), encoding="utf-8", newline="\n")
        written.append(combined)
    for path in written:
        logger.info("wrote %s", path)
    return written
