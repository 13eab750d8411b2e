"""Canonical pretty-printer for SyntaxTree.

Two-space indentation, one declaration per line, single spacing, `\\n` line
ends, diagrams separated by one blank line. Comments are not preserved.
"""
from umlmap.syntax import (
    ActorDecl,
    ActorLinkDecl,
    AttributeDecl,
    ClassDecl,
    ClassDiagramDecl,
    ExtendDecl,
    OperationDecl,
    RecordTypeExpr,
    ScalarTypeExpr,
    StringTypeExpr,
    SyntaxTree,
    UseCaseDecl,
    UsesDecl,
)

INDENT = "  "


def print_canonical(tree: SyntaxTree) -> str:
    blocks = []
    for diagram in tree.diagrams:
        lines = []
        if isinstance(diagram, ClassDiagramDecl):
            _class_diagram(diagram, lines)
        else:
            _usecase_diagram(diagram, lines)
        blocks.append("".join(line + "\n" for line in lines))
    return "\n".join(blocks)


def _usecase_diagram(diagram, lines):
    lines.append(f"usecase-diagram {diagram.name} {{")
    for item in diagram.items:
        if isinstance(item, ActorDecl):
            lines.append(f"{INDENT}actor {item.name};")
        elif isinstance(item, UseCaseDecl):
            lines.append(f"{INDENT}usecase {item.name};")
        elif isinstance(item, ActorLinkDecl):
            lines.append(f"{INDENT}{item.actor} -> {item.usecase};")
        elif isinstance(item, ExtendDecl):
            lines.append(f"{INDENT}{item.source} extends {item.target};")
    lines.append("}")


def _class_diagram(diagram, lines):
    lines.append(f"classdiagram {diagram.name} {{")
    for item in diagram.items:
        if isinstance(item, ClassDecl):
            _class(item, lines, INDENT)
        elif isinstance(item, UsesDecl):
            lines.append(f"{INDENT}{item.source} uses {item.target};")
    lines.append("}")


def _class(decl: ClassDecl, lines, indent):
    header = f"{indent}class {decl.name}"
    if decl.parent is not None:
        header += f" : {decl.parent}"
    lines.append(header + " {")
    for member in decl.members:
        inner = indent + INDENT
        if isinstance(member, AttributeDecl):
            _typed_line(f"{inner}{member.visibility} {member.name}: ", member.type, ";", lines, inner)
        elif isinstance(member, OperationDecl):
            params = ", ".join(f"{p.name}: {_inline_type(p.type)}" for p in member.params)
            signature = f"{inner}{member.visibility} {member.name}({params})"
            if member.return_type is None:
                lines.append(signature + ";")
            else:
                _typed_line(signature + ": ", member.return_type, ";", lines, inner)
    lines.append(f"{indent}}}")


def _typed_line(prefix, type_expr, suffix, lines, indent):
    """Emit `prefix TYPE suffix`, opening a block when TYPE is a record."""
    if isinstance(type_expr, RecordTypeExpr):
        lines.append(f"{prefix}record {type_expr.name} {{")
        inner = indent + INDENT
        for field in type_expr.fields:
            _typed_line(f"{inner}{field.name}: ", field.type, ";", lines, inner)
        lines.append(f"{indent}}}{suffix}")
    else:
        lines.append(f"{prefix}{_inline_type(type_expr)}{suffix}")


def _inline_type(type_expr) -> str:
    if isinstance(type_expr, ScalarTypeExpr):
        return type_expr.name
    if isinstance(type_expr, StringTypeExpr):
        return f"string[{type_expr.capacity}]"
    # A record in a parameter list stays on one line.
    fields = " ".join(f"{f.name}: {_inline_type(f.type)};" for f in type_expr.fields)
    return f"record {type_expr.name} {{ {fields} }}" if fields else f"record {type_expr.name} {{ }}"
