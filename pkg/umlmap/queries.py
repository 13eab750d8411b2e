"""Read-only queries over a resolved Model."""
from collections import namedtuple

from umlmap.diagnostics import (
    TRACE_AMBIGUOUS_USECASE,
    TRACE_UNMAPPED_USECASE,
    CycleDetectedError,
    TraceError,
    UnknownClassError,
    error,
)
from umlmap.model import Access, CallObligation, Model, TraceEntry, Visibility

EffectiveAttribute = namedtuple("EffectiveAttribute", ["attribute", "origin", "access"])


def inheritance_chain(model: Model, class_name: str):
    """Return [class, parent, grandparent, ...], root last."""
    node = model.get_class(class_name)
    if node is None:
        raise UnknownClassError(f"unknown class {class_name!r}", (class_name,))
    chain = [node.name]
    while node.parent is not None:
        if node.parent in chain:
            cycle = chain[chain.index(node.parent):]
            raise CycleDetectedError(
                f"inheritance cycle through {' -> '.join(cycle + [node.parent])}", cycle)
        parent = model.get_class(node.parent)
        if parent is None:
            raise UnknownClassError(
                f"class {node.name!r} inherits from unknown class {node.parent!r}", (node.parent,))
        chain.append(parent.name)
        node = parent
    return chain


def effective_attributes(model: Model, class_name: str):
    """Own attributes first, then each ancestor's, nearest ancestor first.

    Inherited private attributes are part of the object's storage but not
    accessible from the subclass.
    """
    result = []
    for depth, name in enumerate(inheritance_chain(model, class_name)):
        for attribute in model.get_class(name).attributes:
            if depth == 0:
                access = Access.OWN
            elif attribute.visibility is Visibility.PRIVATE:
                access = Access.INHERITED_HIDDEN
            else:
                access = Access.INHERITED_ACCESSIBLE
            result.append(EffectiveAttribute(attribute, name, access))
    return result


def trace_candidates(model: Model, usecase_name: str):
    """Non-constructor operations whose name equals the use case, ignoring case.

    Every match counts, in class then member declaration order.
    """
    wanted = usecase_name.casefold()
    candidates = []
    for node in model.classes:
        for op in node.operations:
            if not op.is_constructor and op.name.casefold() == wanted:
                candidates.append((node.name, op.name))
    return candidates


def trace_failures(model: Model):
    """Yield (usecase, candidates) for every use case without exactly one candidate."""
    for usecase in model.usecases:
        candidates = trace_candidates(model, usecase.name)
        if len(candidates) != 1:
            yield usecase, candidates


def trace_failure_diagnostic(usecase, candidates):
    if not candidates:
        return error(TRACE_UNMAPPED_USECASE,
                     f"use case {usecase.name!r} is realized by no class operation", usecase.span)
    listed = ", ".join(f"{c}.{o}" for c, o in candidates)
    return error(TRACE_AMBIGUOUS_USECASE,
                 f"use case {usecase.name!r} matches several operations: {listed}", usecase.span)


def collect_trace(model: Model):
    """Return (entries, diagnostics); entries only for uniquely mapped use cases."""
    entries = []
    for usecase in model.usecases:
        candidates = trace_candidates(model, usecase.name)
        if len(candidates) == 1:
            class_name, op_name = candidates[0]
            entries.append(TraceEntry(usecase.name, class_name, op_name))
    diagnostics = [trace_failure_diagnostic(u, c) for u, c in trace_failures(model)]
    return entries, diagnostics


def trace_matrix(model: Model):
    """Map every use case to the single operation realizing it.

    Raises TraceError when a use case has zero or several candidates.
    """
    entries, diagnostics = collect_trace(model)
    if diagnostics:
        raise TraceError(diagnostics)
    return entries


def obligations_from(model: Model, entries):
    """Join extend links with trace entries; links with an untraced end are skipped."""
    by_usecase = {entry.usecase: entry for entry in entries}
    obligations = []
    for link in model.extend_links:
        caller = by_usecase.get(link.source)
        callee = by_usecase.get(link.target)
        if caller is None or callee is None:
            continue
        obligations.append(CallObligation(
            caller.class_name, caller.operation, callee.class_name, callee.operation, link.span))
    return obligations


def call_obligations(model: Model):
    """For each extend link, the realization of its source must invoke its target's."""
    return obligations_from(model, trace_matrix(model))
