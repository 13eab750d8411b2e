import itertools

import pytest

from umlmap.diagnostics import (
    RESOLVE_BAD_CONSTRUCTOR,
    RESOLVE_DUPLICATE_NAME,
    RESOLVE_SELF_EXTEND,
    RESOLVE_UNKNOWN_NAME,
    TRACE_AMBIGUOUS_USECASE,
    TRACE_UNMAPPED_USECASE,
    CycleDetectedError,
    ResolveError,
    TraceError,
    UnknownClassError,
)
from umlmap.model import (
    Access,
    ClassNode,
    ClassRelation,
    FixedString,
    Model,
    RelationKind,
    ScalarType,
    TraceEntry,
    Visibility,
)
from umlmap.parser import parse_document
from umlmap.queries import call_obligations, effective_attributes, inheritance_chain, trace_matrix
from umlmap.resolver import model_name_for, resolve
from umlmap.syntax import SyntaxTree
from umlmap.validator import INHERITANCE_CYCLE, validate


def model_of(text):
    return resolve(parse_document(text))


def resolve_errors(text):
    with pytest.raises(ResolveError) as excinfo:
        model_of(text)
    return excinfo.value.diagnostics


# ----------------------------
# Resolution
# ----------------------------
def test_rms_model_contents(rms_model):
    assert rms_model.name == "RMS"
    assert sorted(rms_model.actor_names) == ["Administrator", "Researcher"]
    assert len(rms_model.usecases) == 6
    assert len(rms_model.actor_links) == 6
    assert [(l.source, l.target) for l in rms_model.extend_links] == [("Commit", "RecordOrder")]
    assert [c.name for c in rms_model.classes] == ["System", "Research", "Activity", "Order"]
    assert [(r.source, r.target) for r in rms_model.relations(RelationKind.INHERITANCE)] == [
        ("Activity", "Research")]
    assert [(r.source, r.target) for r in rms_model.relations(RelationKind.USES)] == [
        ("System", "Activity"), ("Activity", "Order")]


def test_rms_member_types(rms_model):
    research = rms_model.get_class("Research")
    assert research.attributes[4].visibility is Visibility.PROTECTED
    assert research.attributes[4].type == ScalarType("int")
    assert research.operation("GetPassword").return_type == FixedString(7)
    assert FixedString(7).usable == 6
    assert not any(op.is_constructor for op in research.operations)
    assert rms_model.get_class("System").attributes[0].is_record


def test_model_name_fallbacks():
    assert model_name_for(SyntaxTree()) == "model"
    assert model_of("usecase-diagram U { } classdiagram C { }").name == "C"
    assert model_of("usecase-diagram U { }").name == "U"


def test_duplicate_class_names_the_first_line():
    [diagnostic] = resolve_errors("classdiagram M {\n  class A { }\n  class A { }\n}")
    assert diagnostic.code == RESOLVE_DUPLICATE_NAME
    assert diagnostic.span.line == 3
    assert "line 2" in diagnostic.message


def test_duplicate_record_field():
    [diagnostic] = resolve_errors("classdiagram M { class A { - r: record R { x: int; x: char; }; } }")
    assert diagnostic.code == RESOLVE_DUPLICATE_NAME


@pytest.mark.parametrize("text", [
    "usecase-diagram U { actor A; A -> Missing; }",
    "usecase-diagram U { usecase X; Ghost -> X; }",
    "usecase-diagram U { usecase X; X extends Y; }",
    "classdiagram M { class A : Ghost { } }",
    "classdiagram M { class A { } A uses Ghost; }",
])
def test_unknown_names(text):
    codes = {d.code for d in resolve_errors(text)}
    assert codes == {RESOLVE_UNKNOWN_NAME}


def test_self_extend():
    [diagnostic] = resolve_errors("usecase-diagram U { usecase X; X extends X; }")
    assert diagnostic.code == RESOLVE_SELF_EXTEND


def test_constructors():
    model = model_of("classdiagram M { class A { + A(x: int); + B(); } }")
    ctor, other = model.get_class("A").operations
    assert ctor.is_constructor and not other.is_constructor

    [diagnostic] = resolve_errors("classdiagram M { class A { + A(): int; } }")
    assert diagnostic.code == RESOLVE_BAD_CONSTRUCTOR


def test_resolve_keeps_member_clashes_and_cycles_for_the_validator():
    model = model_of("classdiagram M { class A : B { + f(); + f(); } class B : A { } }")
    assert len(model.get_class("A").operations) == 2
    assert len(model.relations(RelationKind.INHERITANCE)) == 2


def test_structural_equality_ignores_positions(rms_source, rms_model):
    shifted = resolve(parse_document("\n\n" + rms_source))
    assert shifted == rms_model


# ----------------------------
# Inheritance
# ----------------------------
def test_inheritance_chain(rms_model):
    assert inheritance_chain(rms_model, "Activity") == ["Activity", "Research"]
    assert inheritance_chain(rms_model, "Order") == ["Order"]


def test_inheritance_chain_unknown_class(rms_model):
    with pytest.raises(UnknownClassError) as excinfo:
        inheritance_chain(rms_model, "Nobody")
    assert excinfo.value.code == "UNKNOWN_CLASS"


def test_inheritance_chain_cycle():
    model = model_of("classdiagram M { class A : B { } class B : A { } }")
    with pytest.raises(CycleDetectedError) as excinfo:
        inheritance_chain(model, "A")
    assert excinfo.value.code == "CYCLE_DETECTED"


def _functional_graph(parents):
    """Model with class i inheriting from parents[i] (None = root)."""
    names = [f"C{i}" for i in range(len(parents))]
    classes = tuple(
        ClassNode(name, None if p is None else names[p]) for name, p in zip(names, parents))
    relations = tuple(
        ClassRelation(RelationKind.INHERITANCE, c.name, c.parent) for c in classes if c.parent)
    return Model(classes=classes, class_relations=relations)


def _reaches_cycle(parents, start):
    seen, node = set(), start
    while node is not None:
        if node in seen:
            return True
        seen.add(node)
        node = parents[node]
    return False


def _cycle_count(parents):
    cycles = set()
    for start in range(len(parents)):
        path, node = [], start
        while node is not None and node not in path:
            path.append(node)
            node = parents[node]
        if node is not None:
            cycles.add(frozenset(path[path.index(node):]))
    return len(cycles)


@pytest.mark.parametrize("size", [1, 2, 3])
def test_cycle_detection_on_every_small_hierarchy(size):
    # single inheritance: each class has no parent or exactly one, possibly itself
    for parents in itertools.product([None, *range(size)], repeat=size):
        model = _functional_graph(parents)
        for index in range(size):
            name = f"C{index}"
            if _reaches_cycle(parents, index):
                with pytest.raises(CycleDetectedError):
                    inheritance_chain(model, name)
            else:
                chain = inheritance_chain(model, name)
                assert len(chain) == len(set(chain))
                assert chain[0] == name
        found = [v for v in validate(model) if v.code == INHERITANCE_CYCLE]
        assert len(found) == _cycle_count(parents), parents


def test_effective_attributes_of_activity(rms_model):
    effective = effective_attributes(rms_model, "Activity")
    access = {e.attribute.name: e.access for e in effective}
    assert access == {
        "Password": Access.INHERITED_HIDDEN,
        "Name": Access.INHERITED_HIDDEN,
        "VoteNo": Access.INHERITED_HIDDEN,
        "Allocation": Access.INHERITED_HIDDEN,
        "Balance": Access.INHERITED_ACCESSIBLE,
    }
    assert {e.origin for e in effective} == {"Research"}


def test_effective_attributes_own_first():
    model = model_of(
        "classdiagram M { class A { + a: int; } class B : A { - b: int; } class C : B { # c: int; } }")
    effective = effective_attributes(model, "C")
    assert [(e.attribute.name, e.origin, e.access) for e in effective] == [
        ("c", "C", Access.OWN),
        ("b", "B", Access.INHERITED_HIDDEN),
        ("a", "A", Access.INHERITED_ACCESSIBLE),
    ]


# ----------------------------
# Traceability
# ----------------------------
def test_rms_trace_matrix(rms_model):
    assert trace_matrix(rms_model) == [
        TraceEntry("Login", "System", "Login"),
        TraceEntry("Commit", "Activity", "Commit"),
        TraceEntry("CheckBalance", "Activity", "CheckBalance"),
        TraceEntry("DisplayDetails", "Activity", "DisplayDetails"),
        TraceEntry("ViewOrder", "Order", "ViewOrder"),
        TraceEntry("RecordOrder", "Order", "RecordOrder"),
    ]


def test_trace_matches_ignoring_case():
    model = model_of("usecase-diagram U { usecase login; } classdiagram M { class S { + Login(); } }")
    assert trace_matrix(model) == [TraceEntry("login", "S", "Login")]


def test_trace_ignores_constructors():
    model = model_of("usecase-diagram U { usecase Shop; } classdiagram M { class Shop { + Shop(); } }")
    with pytest.raises(TraceError) as excinfo:
        trace_matrix(model)
    assert [d.code for d in excinfo.value.diagnostics] == [TRACE_UNMAPPED_USECASE]


def test_trace_ambiguous():
    model = model_of(
        "usecase-diagram U { usecase Pay; } classdiagram M { class A { + Pay(); } class B { + pay(); } }")
    with pytest.raises(TraceError) as excinfo:
        trace_matrix(model)
    [diagnostic] = excinfo.value.diagnostics
    assert diagnostic.code == TRACE_AMBIGUOUS_USECASE
    assert "A.Pay" in diagnostic.message and "B.pay" in diagnostic.message


def test_trace_ambiguous_within_one_class():
    model = model_of(
        "usecase-diagram U { usecase Login; } classdiagram M { class S { + Login(); + LOGIN(); } }")
    with pytest.raises(TraceError) as excinfo:
        trace_matrix(model)
    [diagnostic] = excinfo.value.diagnostics
    assert diagnostic.code == TRACE_AMBIGUOUS_USECASE
    assert "S.Login" in diagnostic.message and "S.LOGIN" in diagnostic.message
    [violation] = [v for v in validate(model) if v.code == TRACE_AMBIGUOUS_USECASE]
    assert violation.subject == ("Login", "S.Login", "S.LOGIN")


def test_trace_entry_per_usecase(student_faculty_model):
    entries = trace_matrix(student_faculty_model)
    assert len(entries) == len(student_faculty_model.usecases)
    assert entries[1].to_dict() == {"usecase": "RegisterCourse", "class": "Faculty",
                                    "operation": "RegisterCourse"}


def test_call_obligations(rms_model, student_faculty_model):
    assert [o.as_tuple() for o in call_obligations(rms_model)] == [
        ("Activity", "Commit", "Order", "RecordOrder")]
    assert call_obligations(student_faculty_model) == []
