"""Name resolution: SyntaxTree -> Model."""
import logging

from umlmap.diagnostics import (
    RESOLVE_BAD_CONSTRUCTOR,
    RESOLVE_DUPLICATE_NAME,
    RESOLVE_SELF_EXTEND,
    RESOLVE_UNKNOWN_NAME,
    ResolveError,
    error,
)
from umlmap.model import (
    ActorDef,
    AttributeDef,
    ClassNode,
    ClassRelation,
    FixedString,
    LinkKind,
    Model,
    OperationDef,
    Param,
    RecordType,
    RelationKind,
    ScalarType,
    UseCaseDef,
    UseCaseLink,
    Visibility,
)
from umlmap.syntax import (
    ActorLinkDecl,
    ClassDecl,
    ExtendDecl,
    RecordTypeExpr,
    ScalarTypeExpr,
    StringTypeExpr,
    SyntaxTree,
)

logger = logging.getLogger(__name__)


def resolve(tree: SyntaxTree) -> Model:
    """Resolve every name in `tree`.

    Raises ResolveError with all diagnostics on duplicate or dangling names.
    Member-name clashes and inheritance cycles are left for the validator.
    """
    resolver = _Resolver()
    model = resolver.run(tree)
    if resolver.diagnostics:
        raise ResolveError(resolver.diagnostics)
    logger.debug(
        "resolved model %s: %d actor(s), %d use case(s), %d class(es), %d relation(s)",
        model.name, len(model.actors), len(model.usecases), len(model.classes),
        len(model.class_relations),
    )
    return model


def model_name_for(tree: SyntaxTree) -> str:
    if tree.class_diagrams:
        return tree.class_diagrams[0].name
    if tree.usecase_diagrams:
        return tree.usecase_diagrams[0].name
    return "model"


class _Resolver:
    def __init__(self):
        self.diagnostics = []

    def _fail(self, code, message, span):
        self.diagnostics.append(error(code, message, span))

    def run(self, tree):
        actors, usecases = {}, {}
        for diagram in tree.usecase_diagrams:
            for decl in diagram.actors:
                self._declare(actors, decl, "actor")
            for decl in diagram.usecases:
                self._declare(usecases, decl, "use case")

        links = []
        for diagram in tree.usecase_diagrams:
            for item in diagram.items:
                if isinstance(item, ActorLinkDecl):
                    links.append(self._actor_link(item, actors, usecases))
                elif isinstance(item, ExtendDecl):
                    links.append(self._extend_link(item, usecases))

        class_decls = {}
        for diagram in tree.class_diagrams:
            for decl in diagram.classes:
                self._declare(class_decls, decl, "class")

        classes, relations = [], []
        for diagram in tree.class_diagrams:
            for item in diagram.items:
                if isinstance(item, ClassDecl):
                    if class_decls.get(item.name) is not item:
                        continue
                    classes.append(self._class(item))
                    if item.parent is not None:
                        if item.parent in class_decls:
                            relations.append(ClassRelation(
                                RelationKind.INHERITANCE, item.name, item.parent, item.parent_span))
                        else:
                            self._fail(RESOLVE_UNKNOWN_NAME,
                                       f"class {item.name!r} inherits from unknown class {item.parent!r}",
                                       item.parent_span)
                else:
                    for endpoint, span in ((item.source, item.span), (item.target, item.target_span)):
                        if endpoint not in class_decls:
                            self._fail(RESOLVE_UNKNOWN_NAME,
                                       f"'uses' refers to unknown class {endpoint!r}", span)
                    relations.append(ClassRelation(RelationKind.USES, item.source, item.target, item.span))

        return Model(
            name=model_name_for(tree),
            actors=tuple(ActorDef(d.name, d.span) for d in actors.values()),
            usecases=tuple(UseCaseDef(d.name, d.span) for d in usecases.values()),
            usecase_links=tuple(link for link in links if link is not None),
            classes=tuple(classes),
            class_relations=tuple(relations),
        )

    def _declare(self, table, decl, kind):
        if decl.name in table:
            first = table[decl.name].span
            self._fail(RESOLVE_DUPLICATE_NAME,
                       f"{kind} {decl.name!r} is already declared at line {first.line}", decl.span)
        else:
            table[decl.name] = decl

    def _actor_link(self, item, actors, usecases):
        ok = True
        if item.actor not in actors:
            self._fail(RESOLVE_UNKNOWN_NAME, f"link source {item.actor!r} is not a declared actor", item.span)
            ok = False
        if item.usecase not in usecases:
            self._fail(RESOLVE_UNKNOWN_NAME,
                       f"link target {item.usecase!r} is not a declared use case", item.target_span)
            ok = False
        return UseCaseLink(LinkKind.ACTOR_ASSOCIATION, item.actor, item.usecase, item.span) if ok else None

    def _extend_link(self, item, usecases):
        ok = True
        for endpoint, span in ((item.source, item.span), (item.target, item.target_span)):
            if endpoint not in usecases:
                self._fail(RESOLVE_UNKNOWN_NAME, f"'extends' refers to unknown use case {endpoint!r}", span)
                ok = False
        if ok and item.source == item.target:
            self._fail(RESOLVE_SELF_EXTEND, f"use case {item.source!r} cannot extend itself", item.span)
            ok = False
        return UseCaseLink(LinkKind.EXTEND, item.source, item.target, item.span) if ok else None

    def _class(self, decl):
        attributes = tuple(
            AttributeDef(a.name, Visibility.from_symbol(a.visibility), self._type(a.type), a.span)
            for a in decl.attributes
        )
        operations = []
        for op in decl.operations:
            is_constructor = op.name == decl.name
            if is_constructor and op.return_type is not None:
                self._fail(RESOLVE_BAD_CONSTRUCTOR,
                           f"constructor {decl.name}() cannot declare a return type", op.span)
            operations.append(OperationDef(
                name=op.name,
                visibility=Visibility.from_symbol(op.visibility),
                params=tuple(Param(p.name, self._type(p.type)) for p in op.params),
                return_type=self._type(op.return_type) if op.return_type is not None else None,
                is_constructor=is_constructor,
                span=op.span,
            ))
        return ClassNode(decl.name, decl.parent, attributes, tuple(operations), decl.span, decl.parent_span)

    def _type(self, expr):
        if isinstance(expr, ScalarTypeExpr):
            return ScalarType(expr.name)
        if isinstance(expr, StringTypeExpr):
            return FixedString(expr.capacity)
        assert isinstance(expr, RecordTypeExpr)
        seen = {}
        fields = []
        for field_decl in expr.fields:
            if field_decl.name in seen:
                self._fail(RESOLVE_DUPLICATE_NAME,
                           f"record {expr.name} already has a field {field_decl.name!r}", field_decl.span)
                continue
            seen[field_decl.name] = field_decl
            fields.append(AttributeDef(field_decl.name, Visibility.PUBLIC,
                                       self._type(field_decl.type), field_decl.span))
        return RecordType(expr.name, tuple(fields))
