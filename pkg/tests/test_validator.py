import dataclasses

from hypothesis import given, settings, strategies as st

from umlmap.diagnostics import Severity
from umlmap.model import (
    ActorDef,
    ClassNode,
    ClassRelation,
    LinkKind,
    Model,
    OperationDef,
    RelationKind,
    UseCaseDef,
    UseCaseLink,
    Visibility,
)
from umlmap.parser import parse_document
from umlmap.resolver import resolve
from umlmap.validator import (
    ACTOR_UNUSED,
    DANGLING_RELATION,
    DUPLICATE_MEMBER,
    INHERITANCE_CYCLE,
    MEMBER_SHADOWS_INHERITED,
    OBLIGATION_UNSATISFIED,
    PROTECTED_WITHOUT_SUBCLASS,
    has_errors,
    validate,
)


def model_of(text):
    return resolve(parse_document(text, file="m.uml"))


def test_corpus_models_are_consistent(rms_model, student_faculty_model):
    assert validate(rms_model) == []
    assert validate(student_faculty_model) == []


def test_missing_uses_relation_breaks_the_obligation(rms_source):
    model = model_of(rms_source.replace("  Activity uses Order;\n", ""))
    [violation] = validate(model)
    assert violation.code == OBLIGATION_UNSATISFIED
    assert violation.subject == ("Activity", "Commit", "Order", "RecordOrder")
    assert violation.is_error
    assert violation.span.line == model.get_class("Activity").operation("Commit").span.line


def test_obligation_satisfied_through_an_ancestor(rms_source):
    text = rms_source.replace("  Activity uses Order;\n", "  Research uses Order;\n")
    assert validate(model_of(text)) == []


def test_unmapped_usecase(rms_source):
    text = rms_source.replace("  usecase Login;\n", "  usecase Login;\n  usecase Logout;\n")
    [violation] = validate(model_of(text))
    assert violation.code == "TRACE_UNMAPPED_USECASE"
    assert violation.subject == ("Logout",)


def test_inheritance_cycle_is_reported_once():
    model = model_of("classdiagram M {\n  class A : B { }\n  class B : A { }\n}\n")
    [violation] = validate(model)
    assert violation.code == INHERITANCE_CYCLE
    assert violation.subject == ("A", "B")
    assert "A -> B -> A" in violation.message
    assert violation.render() == f"m.uml:2:13: error {INHERITANCE_CYCLE}: {violation.message}"


def test_dangling_relations_in_memory_models():
    model = Model(
        actors=(),
        usecases=(UseCaseDef("U"),),
        usecase_links=(UseCaseLink(LinkKind.ACTOR_ASSOCIATION, "Nobody", "U"),),
        classes=(ClassNode("A", "Gone", operations=(OperationDef("U", Visibility.PUBLIC),)),),
        class_relations=(ClassRelation(RelationKind.USES, "A", "Missing"),),
    )
    dangling = {v.subject for v in validate(model) if v.code == DANGLING_RELATION}
    assert dangling == {("A", "Missing"), ("A", "Gone"), ("Nobody", "U")}
    # in-memory findings fall back to a placeholder location
    assert all(str(v.location) == "<model>:1:1" for v in validate(model))


def test_warnings_do_not_block():
    model = model_of(
        "usecase-diagram U { actor Idle; }\n"
        "classdiagram M { class A { # kept: int; } }\n"
    )
    findings = validate(model)
    assert {v.code for v in findings} == {ACTOR_UNUSED, PROTECTED_WITHOUT_SUBCLASS}
    assert all(v.severity is Severity.WARNING for v in findings)
    assert not has_errors(findings)


def test_duplicate_member_and_shadowing():
    model = model_of(
        "classdiagram M {\n"
        "  class A { + f(); - f: int; + g(); - h: int; }\n"
        "  class B : A { + g(); + h(); }\n"
        "}\n"
    )
    found = {(v.code, v.subject) for v in validate(model)}
    assert found == {
        (DUPLICATE_MEMBER, ("A", "f")),
        (MEMBER_SHADOWS_INHERITED, ("B", "g")),
    }


def test_findings_sorted_by_position(rms_source):
    text = rms_source.replace("  actor Administrator;\n", "  actor Administrator;\n  actor Visitor;\n")
    text = text.replace("  Activity uses Order;\n", "")
    findings = validate(model_of(text))
    assert [v.code for v in findings] == [ACTOR_UNUSED, OBLIGATION_UNSATISFIED]
    assert findings[0].location.line < findings[1].location.line


def test_violation_json_keys(rms_source):
    model = model_of(rms_source.replace("  Activity uses Order;\n", ""))
    [violation] = validate(model)
    assert list(violation.to_dict()) == ["code", "severity", "subject", "message", "file", "line", "column"]
    assert violation.to_dict()["subject"] == ["Activity", "Commit", "Order", "RecordOrder"]


# ----------------------------
# Perturbations against a brute-force oracle
# ----------------------------
def oracle_findings(model):
    """Every finding of every rule as (code, subject), recomputed naively."""
    found = set()
    classes = {}
    for node in model.classes:
        classes.setdefault(node.name, node)
    order = [node.name for node in model.classes]
    usecase_names = {u.name for u in model.usecases}
    actor_names = {a.name for a in model.actors}

    def parent_of(name):
        node = classes.get(name)
        return node.parent if node else None

    # trace
    realized = {}
    for usecase in model.usecases:
        hits = []
        for node in model.classes:
            for op in node.operations:
                if op.name.lower() == usecase.name.lower() and not op.is_constructor:
                    hits.append(f"{node.name}.{op.name}")
        if len(hits) == 1:
            realized[usecase.name] = tuple(hits[0].split("."))
        else:
            code = "TRACE_UNMAPPED_USECASE" if not hits else "TRACE_AMBIGUOUS_USECASE"
            found.add((code, (usecase.name, *hits)))

    # cycles
    for name in order:
        walk = [name]
        while parent_of(walk[-1]) is not None and parent_of(walk[-1]) in classes:
            nxt = parent_of(walk[-1])
            if nxt in walk:
                members = walk[walk.index(nxt):]
                start = min(members, key=order.index)
                cycle = [start]
                while parent_of(cycle[-1]) != start:
                    cycle.append(parent_of(cycle[-1]))
                found.add((INHERITANCE_CYCLE, tuple(cycle)))
                break
            walk.append(nxt)

    # dangling
    for relation in model.class_relations:
        if relation.source not in classes or relation.target not in classes:
            found.add((DANGLING_RELATION, (relation.source, relation.target)))
    for node in model.classes:
        if node.parent is not None and node.parent not in classes:
            found.add((DANGLING_RELATION, (node.name, node.parent)))
    for link in model.usecase_links:
        if link.kind is LinkKind.ACTOR_ASSOCIATION:
            ok = link.source in actor_names and link.target in usecase_names
        else:
            ok = link.source in usecase_names and link.target in usecase_names
        if not ok:
            found.add((DANGLING_RELATION, (link.source, link.target)))

    # obligations
    uses = {(r.source, r.target) for r in model.class_relations if r.kind is RelationKind.USES}
    for link in model.usecase_links:
        if link.kind is not LinkKind.EXTEND:
            continue
        if link.source not in realized or link.target not in realized:
            continue
        (caller, caller_op), (callee, callee_op) = realized[link.source], realized[link.target]
        if caller == callee:
            continue
        lineage, current = [], caller
        while current is not None and current not in lineage:
            lineage.append(current)
            current = parent_of(current)
        if not any((c, callee) in uses for c in lineage):
            found.add((OBLIGATION_UNSATISFIED, (caller, caller_op, callee, callee_op)))

    # protected members need a subclass
    for node in model.classes:
        members = list(node.attributes) + list(node.operations)
        has_subclass = any(other.parent == node.name for other in model.classes)
        if any(m.visibility is Visibility.PROTECTED for m in members) and not has_subclass:
            found.add((PROTECTED_WITHOUT_SUBCLASS, (node.name,)))

    # member names
    for node in model.classes:
        names = [m.name for m in list(node.attributes) + list(node.operations)]
        for name in names:
            if names.count(name) > 1:
                found.add((DUPLICATE_MEMBER, (node.name, name)))
        visible = set()
        lineage, current = [node.name], parent_of(node.name)
        while current is not None and current not in lineage:
            lineage.append(current)
            if current in classes:
                ancestor = classes[current]
                visible.update(a.name for a in ancestor.attributes if a.visibility is not Visibility.PRIVATE)
                visible.update(o.name for o in ancestor.operations
                               if o.visibility is not Visibility.PRIVATE and not o.is_constructor)
            current = parent_of(current)
        for name in names:
            if name in visible:
                found.add((MEMBER_SHADOWS_INHERITED, (node.name, name)))

    # actors
    for actor in model.actors:
        if not any(l.kind is LinkKind.ACTOR_ASSOCIATION and l.source == actor.name
                   for l in model.usecase_links):
            found.add((ACTOR_UNUSED, (actor.name,)))
    return found


OPERATION_NAMES = ["Login", "commit", "RecordOrder", "ViewOrder", "Fresh", "CheckBalance"]


@st.composite
def perturbed(draw, base):
    """Apply one random edit to the bundled RMS model."""
    classes = list(base.classes)
    relations = list(base.class_relations)
    usecases = list(base.usecases)
    links = list(base.usecase_links)
    actors = list(base.actors)
    class_names = [c.name for c in classes]
    usecase_names = [u.name for u in usecases]
    edit = draw(st.sampled_from([
        "drop_relation", "add_uses", "drop_operation", "rename_operation",
        "reparent", "drop_class", "add_extend", "drop_usecase", "add_usecase",
        "change_visibility", "unlink_actor", "add_actor",
    ]))
    if edit == "drop_relation":
        relations.pop(draw(st.integers(0, len(relations) - 1)))
    elif edit == "add_uses":
        source = draw(st.sampled_from(class_names + ["Ghost"]))
        target = draw(st.sampled_from(class_names))
        relations.append(ClassRelation(RelationKind.USES, source, target))
    elif edit in ("drop_operation", "rename_operation"):
        index = draw(st.sampled_from([i for i, c in enumerate(classes) if c.operations]))
        node = classes[index]
        ops = list(node.operations)
        op_index = draw(st.integers(0, len(ops) - 1))
        if edit == "drop_operation":
            ops.pop(op_index)
        else:
            ops[op_index] = dataclasses.replace(ops[op_index], name=draw(st.sampled_from(OPERATION_NAMES)))
        classes[index] = dataclasses.replace(node, operations=tuple(ops))
    elif edit == "reparent":
        index = draw(st.integers(0, len(classes) - 1))
        node = classes[index]
        parent = draw(st.sampled_from([None, "Missing"] + class_names))
        classes[index] = dataclasses.replace(node, parent=parent)
        relations = [r for r in relations
                     if not (r.kind is RelationKind.INHERITANCE and r.source == node.name)]
        if parent is not None:
            relations.append(ClassRelation(RelationKind.INHERITANCE, node.name, parent))
    elif edit == "drop_class":
        classes.pop(draw(st.integers(0, len(classes) - 1)))
    elif edit == "add_extend":
        source = draw(st.sampled_from(usecase_names))
        target = draw(st.sampled_from(usecase_names + ["Nowhere"]))
        links.append(UseCaseLink(LinkKind.EXTEND, source, target))
    elif edit == "change_visibility":
        index = draw(st.integers(0, len(classes) - 1))
        node = classes[index]
        visibility = draw(st.sampled_from(list(Visibility)))
        if node.attributes and (not node.operations or draw(st.booleans())):
            attributes = list(node.attributes)
            at = draw(st.integers(0, len(attributes) - 1))
            attributes[at] = dataclasses.replace(attributes[at], visibility=visibility)
            classes[index] = dataclasses.replace(node, attributes=tuple(attributes))
        else:
            ops = list(node.operations)
            at = draw(st.integers(0, len(ops) - 1))
            ops[at] = dataclasses.replace(ops[at], visibility=visibility)
            classes[index] = dataclasses.replace(node, operations=tuple(ops))
    elif edit == "unlink_actor":
        actor = draw(st.sampled_from([a.name for a in actors]))
        links = [l for l in links
                 if not (l.kind is LinkKind.ACTOR_ASSOCIATION and l.source == actor)]
    elif edit == "add_actor":
        actors.append(ActorDef(draw(st.sampled_from(["Visitor", "Auditor"]))))
    elif edit == "drop_usecase":
        usecases.pop(draw(st.integers(0, len(usecases) - 1)))
    else:
        usecases.append(UseCaseDef(draw(st.sampled_from(["Audit", "Fresh", "menu", "login"]))))
    return dataclasses.replace(
        base,
        classes=tuple(classes),
        class_relations=tuple(relations),
        usecases=tuple(usecases),
        usecase_links=tuple(links),
        actors=tuple(actors),
    )


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_validator_agrees_with_oracle(data):
    from umlmap.corpus import load_corpus

    base = resolve(parse_document(load_corpus("rms")))
    model = data.draw(perturbed(base))
    reported = {(v.code, v.subject) for v in validate(model)}
    assert reported == oracle_findings(model)
