"""Def-use graph extraction from syntax trees.

The graph approximates def-use chains with a deliberately simple, fully
deterministic discipline:

* A scope is the translation unit / module or one function definition.
  Names resolve within their innermost scope only (no closure modeling).
* Occurrence events are emitted in evaluation order: for an assignment the
  right-hand side's uses precede the left-hand side's definition, so
  ``x = x + 1`` links the use of ``x`` to the previous definition.
* Each use links to the most recent definition of the same variable in the
  same scope (linear order, no branch sensitivity).

Edges are keyed by (variable, def ordinal, use ordinal) after renaming
variables to their order of first occurrence, which makes matching agnostic
to variable names.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .grammar import Grammar
from .syntax import SyntaxNode, parse

# Node kinds that open a fresh scope; their name child (if any) is a binding
# but not a variable occurrence.
_NAME_DEFINING = {"function_definition", "class_definition", "lambda_expression"}

# Leaf positions that never count as variable occurrences.
_NON_VARIABLE_PARENTS = {
    "preproc_directive",
    "import_statement",
    "goto_statement",
    "type_specifier",
    "struct_specifier",
    "keyword_argument",  # keyword name; its value child is handled separately
}


@dataclass(frozen=True)
class Occurrence:
    variable: str  # normalized name, var_0, var_1, ...
    role: str  # "def" | "use"
    ordinal: int  # per-variable ordinal within its role


@dataclass(frozen=True)
class Edge:
    variable: str
    def_ordinal: int
    use_ordinal: int

    def key(self) -> tuple[str, int, int]:
        return (self.variable, self.def_ordinal, self.use_ordinal)


@dataclass
class DataflowGraph:
    nodes: list[Occurrence] = field(default_factory=list)
    edges: list[Edge] = field(default_factory=list)


def extract_dataflow(tree_or_code: SyntaxNode | str, grammar: Grammar | None = None) -> DataflowGraph:
    if isinstance(tree_or_code, str):
        if grammar is None:
            raise ValueError("grammar required when passing source text")
        tree = parse(tree_or_code, grammar)
    else:
        tree = tree_or_code
    extractor = _Extractor()
    extractor.visit(tree, scope=0, mode="load")
    return extractor.finish()


class _Event:
    __slots__ = ("scope", "name", "role")

    def __init__(self, scope: int, name: str, role: str):
        self.scope = scope
        self.name = name
        self.role = role


class _Extractor:
    def __init__(self):
        self.events: list[_Event] = []
        self.next_scope = 1

    # -- event emission -------------------------------------------------------

    def emit(self, scope: int, name: str, role: str) -> None:
        self.events.append(_Event(scope, name, role))

    def visit(self, n: SyntaxNode, scope: int, mode: str) -> None:
        kind = n.kind
        if n.is_leaf:
            if kind == "identifier" and n.lexeme and mode != "skip":
                self.emit(scope, n.lexeme, "def" if mode == "store" else "use")
            return
        if kind in _NON_VARIABLE_PARENTS:
            return
        if kind in _NAME_DEFINING:
            self._visit_definition(n, scope)
            return
        if kind in ("assignment", "assignment_expression"):
            self._visit_assignment(n, scope)
            return
        if kind == "annotated_assignment":
            # [target, annotation(, value)] — annotation and value are reads.
            for child in n.children[1:]:
                self.visit(child, scope, "load")
            if len(n.children) >= 3:
                self._store_target(n.children[0], scope)
            else:
                # A bare annotation declares without binding a value; treat it
                # as a definition so later uses still resolve.
                self._store_target(n.children[0], scope, declaration=True)
            return
        if kind == "augmented_assignment":
            # value uses first, then target read+write.
            self.visit(n.children[1], scope, "load")
            self.visit(n.children[0], scope, "load")
            self._store_target(n.children[0], scope)
            return
        if kind == "update_expression":
            self.visit(n.children[0], scope, "load")
            self._store_target(n.children[0], scope)
            return
        if kind == "init_declarator":
            target = n.children[0]
            rest = n.children[1:]
            for child in rest:
                self.visit(child, scope, "load")
            self._store_target(target, scope, declaration=True)
            return
        if kind in ("for_statement",) and len(n.children) >= 2:
            self._visit_for(n, scope)
            return
        if kind == "for_clause" and len(n.children) == 2:
            self.visit(n.children[1], scope, "load")
            self._store_target(n.children[0], scope)
            return
        if kind == "except_clause" and len(n.children) >= 2 and n.children[-2].kind == "identifier":
            # "except E as name:" — children are [type, name, block].
            self.visit(n.children[0], scope, "load")
            self._store_target(n.children[-2], scope)
            self.visit(n.children[-1], scope, "load")
            return
        if kind == "call_expression":
            callee = n.children[0]
            if callee.is_leaf and callee.kind == "identifier":
                pass  # plain function name, not a variable occurrence
            else:
                self.visit(callee, scope, "load")
            for child in n.children[1:]:
                self.visit(child, scope, "load")
            return
        if kind in ("field_expression", "attribute_expression"):
            # The member name is not a variable; the object side is.
            self.visit(n.children[0], scope, "load")
            return
        if kind == "comprehension":
            # Clause order is element first in the tree but evaluation binds
            # the for targets before the element is computed.
            clauses = [c for c in n.children[1:]]
            for clause in clauses:
                self.visit(clause, scope, "load")
            self.visit(n.children[0], scope, "load")
            return
        for child in n.children:
            self.visit(child, scope, mode)

    def _visit_definition(self, n: SyntaxNode, scope: int) -> None:
        inner = self.next_scope
        self.next_scope += 1
        body_kinds = ("block", "compound_statement")
        is_lambda = n.kind == "lambda_expression"
        for i, child in enumerate(n.children):
            if child.kind == "parameter_list":
                self._visit_parameters(child, outer=scope, inner=inner)
            elif child.kind in body_kinds or (is_lambda and i == len(n.children) - 1):
                self.visit(child, inner, "load")
            elif child.kind == "identifier" and child.is_leaf:
                pass  # the defined name itself
            else:
                self.visit(child, scope, "load")

    def _visit_parameters(self, params: SyntaxNode, outer: int, inner: int) -> None:
        for param in params.children:
            name = None
            for kid in param.children:
                if name is None and (
                    (kid.is_leaf and kid.kind == "identifier")
                    or kid.kind == "subscript_expression"
                ):
                    name = kid
                elif kid.kind == "type_specifier":
                    continue
                else:
                    # Annotations and defaults evaluate in the outer scope.
                    self.visit(kid, outer, "load")
            if name is not None:
                self._store_target(name, inner, declaration=True)

    def _visit_assignment(self, n: SyntaxNode, scope: int) -> None:
        *targets, value = n.children
        self.visit(value, scope, "load")
        for target in targets:
            self._store_target(target, scope)

    def _visit_for(self, n: SyntaxNode, scope: int) -> None:
        # C: [init, cond, (step,) body]; Python: [target, iterable, body, (else)].
        first = n.children[0]
        if first.kind in ("declaration", "expression_statement", "empty_statement"):
            for child in n.children:
                self.visit(child, scope, "load")
            return
        target, iterable, *rest = n.children
        self.visit(iterable, scope, "load")
        self._store_target(target, scope)
        for child in rest:
            self.visit(child, scope, "load")

    def _store_target(self, target: SyntaxNode, scope: int, declaration: bool = False) -> None:
        """Record definition events for an assignment target.

        Subscript or member stores count as uses of everything they mention:
        writing ``a[i] = x`` reads both ``a`` and ``i``.
        """
        if target.is_leaf:
            if target.kind == "identifier" and target.lexeme:
                self.emit(scope, target.lexeme, "def")
            return
        if target.kind in ("tuple_expression", "list_expression", "starred_expression",
                           "parenthesized_expression"):
            for child in target.children:
                self._store_target(child, scope)
            return
        if target.kind == "subscript_expression" and declaration:
            # C array declarator: "int a[10]" defines a.
            self._store_target(target.children[0], scope, declaration=True)
            for child in target.children[1:]:
                self.visit(child, scope, "load")
            return
        self.visit(target, scope, "load")

    # -- graph assembly -------------------------------------------------------

    def finish(self) -> DataflowGraph:
        graph = DataflowGraph()
        norm: dict[tuple[int, str], str] = {}
        def_count: dict[str, int] = {}
        use_count: dict[str, int] = {}
        last_def: dict[str, int] = {}
        for event in self.events:
            symbol = (event.scope, event.name)
            if symbol not in norm:
                norm[symbol] = f"var_{len(norm)}"
            var = norm[symbol]
            if event.role == "def":
                ordinal = def_count.get(var, 0)
                def_count[var] = ordinal + 1
                last_def[var] = ordinal
                graph.nodes.append(Occurrence(var, "def", ordinal))
            else:
                ordinal = use_count.get(var, 0)
                use_count[var] = ordinal + 1
                graph.nodes.append(Occurrence(var, "use", ordinal))
                if var in last_def:
                    graph.edges.append(Edge(var, last_def[var], ordinal))
        return graph
