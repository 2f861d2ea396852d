"""Grammar descriptors and the grammar registry.

A grammar bundles everything the lexer and parser need for one corpus
language: the keyword table (also used for weighted n-gram scoring), comment
syntax, and which statement-layer parser applies (brace-delimited C family
or indentation-delimited Python family).  Additional grammars can be
registered at runtime from a JSON descriptor.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import ConfigError

C_FAMILY_KEYWORDS = frozenset(
    """
    auto break case char const continue default do double else enum extern
    float for goto if inline int long register restrict return short signed
    sizeof static struct switch typedef union unsigned void volatile while
    bool true false class namespace new delete using public private protected
    template typename this virtual friend operator try catch throw
    """.split()
)

PYTHON_FAMILY_KEYWORDS = frozenset(
    """
    False None True and as assert async await break class continue def del
    elif else except finally for from global if import in is lambda nonlocal
    not or pass raise return try while with yield
    """.split()
)


@dataclass(frozen=True)
class Grammar:
    name: str
    family: str  # "c" or "python": selects lexer/parser behavior
    keywords: frozenset[str]
    line_comments: tuple[str, ...] = ()
    block_comments: tuple[tuple[str, str], ...] = ()
    node_kinds: tuple[str, ...] = field(default=(), compare=False)

    def is_keyword(self, lexeme: str) -> bool:
        return lexeme in self.keywords


# Node-kind inventories are advertised through the descriptor so plugin
# authors know what the shipped parsers emit.
C_NODE_KINDS = (
    "translation_unit", "preproc_directive", "function_definition",
    "parameter_list", "parameter", "type_specifier", "struct_specifier",
    "declaration", "init_declarator", "compound_statement", "if_statement",
    "else_clause", "while_statement", "do_statement", "for_statement",
    "switch_statement", "case_clause", "default_clause", "return_statement",
    "break_statement", "continue_statement", "goto_statement",
    "expression_statement", "empty_statement", "comma_expression",
    "assignment_expression", "conditional_expression", "binary_expression",
    "unary_expression", "update_expression", "cast_expression", "call_expression",
    "argument_list", "subscript_expression", "field_expression",
    "parenthesized_expression", "initializer_list", "identifier",
    "number_literal", "string_literal", "char_literal",
)

PY_NODE_KINDS = (
    "module", "function_definition", "class_definition", "decorator",
    "parameter_list", "parameter", "block", "if_statement", "elif_clause",
    "else_clause", "for_statement", "while_statement", "try_statement",
    "except_clause", "finally_clause", "with_statement", "return_statement",
    "pass_statement", "break_statement", "continue_statement",
    "import_statement", "global_statement", "nonlocal_statement",
    "assert_statement", "raise_statement", "del_statement",
    "expression_statement", "assignment", "augmented_assignment",
    "annotated_assignment", "boolean_expression", "not_expression",
    "comparison_expression",
    "binary_expression", "unary_expression", "conditional_expression",
    "lambda_expression", "call_expression", "argument_list",
    "keyword_argument", "subscript_expression", "slice_expression",
    "attribute_expression", "parenthesized_expression", "tuple_expression",
    "list_expression", "dict_expression", "set_expression", "pair",
    "comprehension", "for_clause", "if_clause", "starred_expression",
    "yield_expression", "identifier", "number_literal", "string_literal",
)

C_FAMILY = Grammar(
    name="c_family",
    family="c",
    keywords=C_FAMILY_KEYWORDS,
    line_comments=("//",),
    block_comments=(("/*", "*/"),),
    node_kinds=C_NODE_KINDS,
)

PYTHON_FAMILY = Grammar(
    name="python_family",
    family="python",
    keywords=PYTHON_FAMILY_KEYWORDS,
    line_comments=("#",),
    block_comments=(),
    node_kinds=PY_NODE_KINDS,
)

_REGISTRY: dict[str, Grammar] = {
    C_FAMILY.name: C_FAMILY,
    PYTHON_FAMILY.name: PYTHON_FAMILY,
    # Convenience aliases for common corpus_language values.
    "c": C_FAMILY,
    "cpp": C_FAMILY,
    "python": PYTHON_FAMILY,
}

# Shipped operating thresholds for the syntactic filter, per grammar.
DEFAULT_THETA = {
    "c_family": 0.4,
    "python_family": 0.5,
}


def get_grammar(name: str) -> Grammar:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise ConfigError(
            f"no grammar registered for corpus_language {name!r} "
            f"(known: {sorted(set(g.name for g in _REGISTRY.values()))})"
        ) from None


def register_grammar(grammar: Grammar, aliases: tuple[str, ...] = ()) -> None:
    _REGISTRY[grammar.name] = grammar
    for alias in aliases:
        _REGISTRY[alias] = grammar


def load_grammar_descriptor(path: Path | str) -> Grammar:
    """Register a grammar plugin from a JSON descriptor file.

    The descriptor supplies the keyword table and comment syntax and names
    which statement family ("c" or "python") drives parsing.
    """
    path = Path(path)
    try:
        spec = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read grammar descriptor {path}: {exc}") from exc
    for key in ("name", "family", "keywords"):
        if key not in spec:
            raise ConfigError(f"{path}: grammar descriptor missing {key!r}")
    if spec["family"] not in ("c", "python"):
        raise ConfigError(f"{path}: family must be 'c' or 'python', got {spec['family']!r}")
    base_kinds = C_NODE_KINDS if spec["family"] == "c" else PY_NODE_KINDS
    grammar = Grammar(
        name=spec["name"],
        family=spec["family"],
        keywords=frozenset(spec["keywords"]),
        line_comments=tuple(spec.get("line_comments", ())),
        block_comments=tuple(tuple(pair) for pair in spec.get("block_comments", ())),
        node_kinds=base_kinds,
    )
    register_grammar(grammar, aliases=tuple(spec.get("aliases", ())))
    return grammar
