"""Consistency rules over a resolved Model.

    TRACE_UNMAPPED_USECASE / TRACE_AMBIGUOUS_USECASE   error
    INHERITANCE_CYCLE                                  error
    DANGLING_RELATION                                  error
    OBLIGATION_UNSATISFIED                             error
    PROTECTED_WITHOUT_SUBCLASS                         warning
    DUPLICATE_MEMBER (error) / MEMBER_SHADOWS_INHERITED (warning)
    ACTOR_UNUSED                                       warning

Errors block code generation; warnings do not.
"""
import logging
from dataclasses import dataclass, field
from typing import Optional

from umlmap.diagnostics import Severity, SourceSpan, render_finding
from umlmap.model import LinkKind, Model, RelationKind, Visibility
from umlmap.queries import (
    collect_trace,
    obligations_from,
    trace_failure_diagnostic,
    trace_failures,
)

logger = logging.getLogger(__name__)

INHERITANCE_CYCLE = "INHERITANCE_CYCLE"
DANGLING_RELATION = "DANGLING_RELATION"
OBLIGATION_UNSATISFIED = "OBLIGATION_UNSATISFIED"
PROTECTED_WITHOUT_SUBCLASS = "PROTECTED_WITHOUT_SUBCLASS"
DUPLICATE_MEMBER = "DUPLICATE_MEMBER"
MEMBER_SHADOWS_INHERITED = "MEMBER_SHADOWS_INHERITED"
ACTOR_UNUSED = "ACTOR_UNUSED"

RULES = {
    "trace": ("TRACE_UNMAPPED_USECASE", "TRACE_AMBIGUOUS_USECASE"),
    "cycles": (INHERITANCE_CYCLE,),
    "dangling": (DANGLING_RELATION,),
    "obligations": (OBLIGATION_UNSATISFIED,),
    "protected": (PROTECTED_WITHOUT_SUBCLASS,),
    "members": (DUPLICATE_MEMBER, MEMBER_SHADOWS_INHERITED),
    "actors": (ACTOR_UNUSED,),
}
VIOLATION_CODES = frozenset(code for codes in RULES.values() for code in codes)

# Used when a finding has no source position (models built in memory).
UNKNOWN_SPAN = SourceSpan("<model>", 1, 1, 0)


@dataclass(frozen=True)
class Violation:
    code: str
    severity: Severity
    subject: tuple
    message: str
    span: Optional[SourceSpan] = field(default=None, compare=False)

    def __post_init__(self):
        if self.code not in VIOLATION_CODES:
            raise ValueError(f"unknown violation code {self.code!r}")

    @property
    def is_error(self) -> bool:
        return self.severity is Severity.ERROR

    @property
    def location(self) -> SourceSpan:
        return self.span or UNKNOWN_SPAN

    def render(self) -> str:
        return render_finding(self.location, self.severity, self.code, self.message)

    def to_dict(self) -> dict:
        return {
            "code": self.code,
            "severity": self.severity.value,
            "subject": list(self.subject),
            "message": self.message,
            "file": self.location.file,
            "line": self.location.line,
            "column": self.location.column,
        }


def validate(model: Model):
    """Run every rule; findings sorted by (file, line, code). Empty means consistent."""
    findings = []
    for check in (_check_trace, _check_cycles, _check_dangling, _check_obligations,
                  _check_protected, _check_members, _check_actors):
        findings.extend(check(model))
    findings.sort(key=lambda v: (v.location.file, v.location.line, v.code,
                                 v.location.column, v.subject, v.message))
    logger.info("validated %s: %d error(s), %d warning(s)", model.name,
                sum(v.is_error for v in findings), sum(not v.is_error for v in findings))
    return findings


def has_errors(findings) -> bool:
    return any(v.is_error for v in findings)


def ancestors(model: Model, class_name: str):
    """Ancestors nearest first; stops at a missing class or a repeated one."""
    seen = [class_name]
    node = model.get_class(class_name)
    while node is not None and node.parent is not None and node.parent not in seen:
        seen.append(node.parent)
        node = model.get_class(node.parent)
    return seen[1:]


# ----------------------------
# Traceability
# ----------------------------
def _check_trace(model):
    for usecase, candidates in trace_failures(model):
        diagnostic = trace_failure_diagnostic(usecase, candidates)
        subject = (usecase.name,) + tuple(f"{c}.{o}" for c, o in candidates)
        yield Violation(diagnostic.code, Severity.ERROR, subject, diagnostic.message, diagnostic.span)


# ----------------------------
# Inheritance Cycles
# ----------------------------
def _check_cycles(model):
    reported = set()
    for node in model.classes:
        path = [node.name]
        current = node
        while current is not None and current.parent is not None:
            if current.parent in path:
                cycle = path[path.index(current.parent):]
                key = frozenset(cycle)
                if key not in reported:
                    reported.add(key)
                    order = {c.name: i for i, c in enumerate(model.classes)}
                    start = min(cycle, key=lambda name: order.get(name, len(order)))
                    rotated = cycle[cycle.index(start):] + cycle[:cycle.index(start)]
                    first = model.get_class(start)
                    yield Violation(
                        INHERITANCE_CYCLE, Severity.ERROR, tuple(rotated),
                        f"inheritance cycle: {' -> '.join(rotated + [start])}",
                        first.parent_span or first.span,
                    )
                break
            path.append(current.parent)
            current = model.get_class(current.parent)


# ----------------------------
# Dangling Relations
# ----------------------------
def _check_dangling(model):
    classes = model.classes_by_name
    for relation in model.class_relations:
        missing = [n for n in (relation.source, relation.target) if n not in classes]
        if missing:
            yield Violation(
                DANGLING_RELATION, Severity.ERROR, (relation.source, relation.target),
                f"{relation.kind.value} relation {relation.source} -> {relation.target} "
                f"refers to undeclared class {', '.join(missing)}",
                relation.span,
            )
    declared_parents = {(r.source, r.target) for r in model.relations(RelationKind.INHERITANCE)}
    for node in model.classes:
        if node.parent is not None and node.parent not in classes \
                and (node.name, node.parent) not in declared_parents:
            yield Violation(
                DANGLING_RELATION, Severity.ERROR, (node.name, node.parent),
                f"class {node.name} inherits from undeclared class {node.parent}",
                node.parent_span or node.span,
            )
    for link in model.usecase_links:
        if link.kind is LinkKind.ACTOR_ASSOCIATION:
            missing = [n for n, ok in ((link.source, link.source in model.actor_names),
                                       (link.target, link.target in model.usecase_names)) if not ok]
        else:
            missing = [n for n in (link.source, link.target) if n not in model.usecase_names]
        if missing:
            yield Violation(
                DANGLING_RELATION, Severity.ERROR, (link.source, link.target),
                f"{link.kind.value} link {link.source} -> {link.target} "
                f"refers to undeclared {', '.join(missing)}",
                link.span,
            )


# ----------------------------
# Call Obligations
# ----------------------------
def uses_reaches(model: Model, caller: str, callee: str) -> bool:
    """True when `caller` or one of its ancestors has a uses relation to `callee`."""
    sources = {caller, *ancestors(model, caller)}
    return any(r.source in sources and r.target == callee for r in model.relations(RelationKind.USES))


def _check_obligations(model):
    entries, _ = collect_trace(model)
    for obligation in obligations_from(model, entries):
        if obligation.caller_class == obligation.callee_class:
            continue
        if uses_reaches(model, obligation.caller_class, obligation.callee_class):
            continue
        caller = model.get_class(obligation.caller_class)
        op = caller.operation(obligation.caller_op) if caller else None
        yield Violation(
            OBLIGATION_UNSATISFIED, Severity.ERROR, obligation.as_tuple(),
            f"{obligation.caller_class}.{obligation.caller_op} must call "
            f"{obligation.callee_class}.{obligation.callee_op}, but {obligation.caller_class} "
            f"has no uses relation to {obligation.callee_class}",
            (op.span if op else None) or obligation.span,
        )


# ----------------------------
# Protected Members
# ----------------------------
def _check_protected(model):
    for node in model.classes:
        protected = [m.name for m in node.members if m.visibility is Visibility.PROTECTED]
        if protected and not model.subclasses_of(node.name):
            yield Violation(
                PROTECTED_WITHOUT_SUBCLASS, Severity.WARNING, (node.name,),
                f"class {node.name} has protected member(s) {', '.join(protected)} but no subclass",
                node.span,
            )


# ----------------------------
# Member Names
# ----------------------------
def _check_members(model):
    for node in model.classes:
        seen = set()
        for member in node.members:
            if member.name in seen:
                yield Violation(
                    DUPLICATE_MEMBER, Severity.ERROR, (node.name, member.name),
                    f"class {node.name} declares {member.name!r} more than once",
                    member.span or node.span,
                )
            seen.add(member.name)
        inherited = {}
        for ancestor_name in ancestors(model, node.name):
            ancestor = model.get_class(ancestor_name)
            if ancestor is None:
                continue
            for member in ancestor.members:
                if member.visibility is not Visibility.PRIVATE and not getattr(member, "is_constructor", False):
                    inherited.setdefault(member.name, ancestor_name)
        reported = set()
        for member in node.members:
            if member.name in inherited and member.name not in reported:
                reported.add(member.name)
                yield Violation(
                    MEMBER_SHADOWS_INHERITED, Severity.WARNING, (node.name, member.name),
                    f"{node.name}.{member.name} shadows {inherited[member.name]}.{member.name}",
                    member.span or node.span,
                )


# ----------------------------
# Actors
# ----------------------------
def _check_actors(model):
    linked = {link.source for link in model.actor_links}
    for actor in model.actors:
        if actor.name not in linked:
            yield Violation(
                ACTOR_UNUSED, Severity.WARNING, (actor.name,),
                f"actor {actor.name} takes part in no use case", actor.span,
            )
