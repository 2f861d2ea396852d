"""Structural parsers for the two shipped grammar families.

Both parsers build the same ordered-tree shape: internal nodes carry a kind
and children, leaves carry the source lexeme and its token index.  The trees
are deliberately coarser than a compiler front end — they exist to support
subtree matching and def-use extraction, so operators and punctuation never
appear as nodes (renames and literal edits change leaf lexemes, not tree
shape).  Anything outside the supported surface raises ParseError and the
caller degrades gracefully.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import DataError
from .grammar import Grammar
from .tokens import Token, TokenSequence, tokenize


class ParseError(DataError):
    pass


@dataclass(frozen=True)
class SyntaxNode:
    kind: str
    children: tuple["SyntaxNode", ...] = ()
    lexeme: str | None = None
    token_index: int = -1

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def sexp(self) -> str:
        """Kind-only s-expression; lexemes are intentionally excluded."""
        if self.is_leaf:
            return f"({self.kind})"
        return "(" + self.kind + " " + " ".join(c.sexp() for c in self.children) + ")"

    def walk(self):
        yield self
        for child in self.children:
            yield from child.walk()

    def leaves(self):
        for node in self.walk():
            if node.is_leaf and node.lexeme is not None:
                yield node


def node(kind: str, *children: SyntaxNode) -> SyntaxNode:
    return SyntaxNode(kind, tuple(children))


def leaf(kind: str, token: Token, index: int) -> SyntaxNode:
    return SyntaxNode(kind, (), token.lexeme, index)


def parse(code: str, grammar: Grammar) -> SyntaxNode:
    tokens = tokenize(code, grammar)
    return parse_tokens(tokens, grammar)


def parse_tokens(tokens: TokenSequence, grammar: Grammar) -> SyntaxNode:
    if grammar.family == "c":
        return _CParser(tokens).parse_translation_unit()
    return _PyParser(tokens).parse_module()


def _literal_leaf_kind(lexeme: str, family: str = "c") -> str:
    if lexeme[0] in "0123456789." or (len(lexeme) > 1 and lexeme[0] in "+-" and lexeme[1].isdigit()):
        return "number_literal"
    if family == "c" and lexeme[0] == "'" and lexeme[-1] == "'":
        return "char_literal"
    return "string_literal"


class _Cursor:
    """Token cursor with save/restore for bounded backtracking."""

    def __init__(self, tokens: TokenSequence):
        self.tokens = tokens.tokens
        self.i = 0

    def eof(self) -> bool:
        return self.i >= len(self.tokens)

    def peek(self, offset: int = 0) -> Token | None:
        j = self.i + offset
        return self.tokens[j] if j < len(self.tokens) else None

    def lex(self, offset: int = 0) -> str:
        tok = self.peek(offset)
        return tok.lexeme if tok else ""

    def at(self, *lexemes: str) -> bool:
        return self.lex() in lexemes

    def take(self) -> tuple[Token, int]:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        index = self.i
        self.i += 1
        return tok, index

    def expect(self, lexeme: str) -> tuple[Token, int]:
        tok = self.peek()
        if tok is None or tok.lexeme != lexeme:
            got = tok.lexeme if tok else "<eof>"
            where = f" at line {tok.line}" if tok else ""
            raise ParseError(f"expected {lexeme!r}, got {got!r}{where}")
        return self.take()

    def save(self) -> int:
        return self.i

    def restore(self, mark: int) -> None:
        self.i = mark


# ---------------------------------------------------------------------------
# C family
# ---------------------------------------------------------------------------

_C_TYPE_KEYWORDS = {
    "void", "char", "short", "int", "long", "float", "double", "signed",
    "unsigned", "bool", "auto",
}
_C_SPECIFIER_KEYWORDS = _C_TYPE_KEYWORDS | {
    "const", "volatile", "static", "extern", "register", "inline", "restrict",
    "typedef", "struct", "union", "enum", "class", "typename",
}
_C_ASSIGN_OPS = {"=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>="}
_C_BINARY_LEVELS = [
    {"||"},
    {"&&"},
    {"|"},
    {"^"},
    {"&"},
    {"==", "!="},
    {"<", ">", "<=", ">="},
    {"<<", ">>"},
    {"+", "-"},
    {"*", "/", "%"},
]
_C_VALUE_KEYWORDS = {"true": "boolean_literal", "false": "boolean_literal", "this": "identifier"}


class _CParser:
    def __init__(self, tokens: TokenSequence):
        self.c = _Cursor(tokens)

    def parse_translation_unit(self) -> SyntaxNode:
        children = []
        while not self.c.eof():
            children.append(self.parse_statement())
        return node("translation_unit", *children)

    # -- statements ---------------------------------------------------------

    def parse_statement(self) -> SyntaxNode:
        tok = self.c.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        lex = tok.lexeme
        if lex == "#":
            return self.parse_preproc()
        if lex == "{":
            return self.parse_compound()
        if lex == ";":
            self.c.take()
            return node("empty_statement")
        if tok.kind == "keyword":
            handler = {
                "if": self.parse_if,
                "while": self.parse_while,
                "do": self.parse_do,
                "for": self.parse_for,
                "switch": self.parse_switch,
                "case": self.parse_case,
                "default": self.parse_default,
                "return": self.parse_return,
                "break": lambda: self.parse_simple_kw("break_statement"),
                "continue": lambda: self.parse_simple_kw("continue_statement"),
                "goto": self.parse_goto,
                "using": self.parse_using,
                "template": self.parse_template,
            }.get(lex)
            if handler is not None:
                return handler()
            if lex in _C_SPECIFIER_KEYWORDS:
                return self.parse_declaration_or_function()
            if lex in _C_VALUE_KEYWORDS:
                return self.parse_expression_statement()
            raise ParseError(f"unsupported keyword {lex!r} at line {tok.line}")
        if tok.kind == "identifier":
            mark = self.c.save()
            try:
                return self.parse_declaration_or_function()
            except ParseError:
                self.c.restore(mark)
            return self.parse_expression_statement()
        return self.parse_expression_statement()

    def parse_preproc(self) -> SyntaxNode:
        hash_tok, _ = self.c.expect("#")
        line = hash_tok.line
        children = []
        while not self.c.eof() and self.c.peek().line == line:
            tok, idx = self.c.take()
            if tok.kind in ("identifier", "keyword"):
                children.append(leaf("identifier", tok, idx))
            elif tok.kind == "literal":
                children.append(leaf(_literal_leaf_kind(tok.lexeme), tok, idx))
        return node("preproc_directive", *children)

    def parse_compound(self) -> SyntaxNode:
        self.c.expect("{")
        children = []
        while not self.c.at("}"):
            if self.c.eof():
                raise ParseError("unterminated block: missing '}'")
            children.append(self.parse_statement())
        self.c.expect("}")
        return node("compound_statement", *children)

    def parse_if(self) -> SyntaxNode:
        self.c.expect("if")
        self.c.expect("(")
        cond = self.parse_expression()
        self.c.expect(")")
        then = self.parse_statement()
        children = [cond, then]
        if self.c.at("else"):
            self.c.take()
            children.append(node("else_clause", self.parse_statement()))
        return node("if_statement", *children)

    def parse_while(self) -> SyntaxNode:
        self.c.expect("while")
        self.c.expect("(")
        cond = self.parse_expression()
        self.c.expect(")")
        return node("while_statement", cond, self.parse_statement())

    def parse_do(self) -> SyntaxNode:
        self.c.expect("do")
        body = self.parse_statement()
        self.c.expect("while")
        self.c.expect("(")
        cond = self.parse_expression()
        self.c.expect(")")
        self.c.expect(";")
        return node("do_statement", body, cond)

    def parse_for(self) -> SyntaxNode:
        self.c.expect("for")
        self.c.expect("(")
        children = []
        if self.c.at(";"):
            self.c.take()
            children.append(node("empty_statement"))
        else:
            tok = self.c.peek()
            if tok.kind == "keyword" and tok.lexeme in _C_SPECIFIER_KEYWORDS:
                children.append(self.parse_declaration_or_function(statement=False))
            else:
                children.append(node("expression_statement", self.parse_expression()))
            self.c.expect(";")
        if self.c.at(";"):
            children.append(node("empty_statement"))
        else:
            children.append(self.parse_expression())
        self.c.expect(";")
        if not self.c.at(")"):
            children.append(self.parse_expression())
        self.c.expect(")")
        children.append(self.parse_statement())
        return node("for_statement", *children)

    def parse_switch(self) -> SyntaxNode:
        self.c.expect("switch")
        self.c.expect("(")
        subject = self.parse_expression()
        self.c.expect(")")
        return node("switch_statement", subject, self.parse_statement())

    def parse_case(self) -> SyntaxNode:
        self.c.expect("case")
        value = self.parse_conditional()
        self.c.expect(":")
        return node("case_clause", value)

    def parse_default(self) -> SyntaxNode:
        self.c.expect("default")
        self.c.expect(":")
        return node("default_clause")

    def parse_return(self) -> SyntaxNode:
        self.c.expect("return")
        if self.c.at(";"):
            self.c.take()
            return node("return_statement")
        value = self.parse_expression()
        self.c.expect(";")
        return node("return_statement", value)

    def parse_simple_kw(self, kind: str) -> SyntaxNode:
        self.c.take()
        self.c.expect(";")
        return node(kind)

    def parse_goto(self) -> SyntaxNode:
        self.c.expect("goto")
        tok, idx = self.c.take()
        self.c.expect(";")
        return node("goto_statement", leaf("identifier", tok, idx))

    def parse_using(self) -> SyntaxNode:
        # "using namespace std;" and friends: flat declaration.
        self.c.expect("using")
        children = []
        while not self.c.at(";"):
            if self.c.eof():
                raise ParseError("unterminated using declaration")
            tok, idx = self.c.take()
            if tok.kind in ("identifier", "keyword"):
                children.append(leaf("identifier", tok, idx))
        self.c.expect(";")
        return node("declaration", *children)

    def parse_template(self) -> SyntaxNode:
        # Consume "template < ... >" then parse the declaration it prefixes.
        self.c.expect("template")
        self.c.expect("<")
        depth = 1
        while depth and not self.c.eof():
            tok, _ = self.c.take()
            if tok.lexeme == "<":
                depth += 1
            elif tok.lexeme == ">":
                depth -= 1
        return self.parse_statement()

    # -- declarations -------------------------------------------------------

    def parse_declaration_or_function(self, statement: bool = True) -> SyntaxNode:
        spec = self.parse_type_specifier()
        if self.c.at(";"):  # bare "struct X {...};"
            if statement:
                self.c.take()
            return node("declaration", spec)
        declarator, params, body = self.parse_declarator(allow_function=statement)
        if body is not None:
            return node("function_definition", spec, declarator, params, body)
        declarators = [self.parse_init_declarator_tail(declarator, params)]
        while self.c.at(","):
            self.c.take()
            d, p, _ = self.parse_declarator(allow_function=False)
            declarators.append(self.parse_init_declarator_tail(d, p))
        if statement:
            self.c.expect(";")
        elif not self.c.at(";"):
            raise ParseError(f"expected ';' after declaration, got {self.c.lex()!r}")
        return node("declaration", spec, *declarators)

    def parse_type_specifier(self) -> SyntaxNode:
        children = []
        saw_type = False
        while True:
            tok = self.c.peek()
            if tok is None:
                break
            lex = tok.lexeme
            if tok.kind == "keyword" and lex in ("struct", "union", "enum", "class"):
                self.c.take()
                kids = []
                if self.c.peek() and self.c.peek().kind == "identifier":
                    name_tok, idx = self.c.take()
                    kids.append(leaf("identifier", name_tok, idx))
                if self.c.at("{"):
                    kids.append(self.parse_compound())
                children.append(node("struct_specifier", *kids))
                saw_type = True
                continue
            if tok.kind == "keyword" and lex in _C_SPECIFIER_KEYWORDS:
                self.c.take()
                saw_type = saw_type or lex in _C_TYPE_KEYWORDS
                continue
            if tok.kind == "identifier" and not saw_type:
                nxt = self.c.peek(1)
                follower = nxt.lexeme if nxt else ""
                # "name name", "name *name", "name &name", "name<...>":
                # treat the first identifier as a type name.
                if follower == "<" and self._template_args_ahead():
                    self.c.take()
                    self._consume_template_args()
                    saw_type = True
                    continue
                if nxt is not None and (
                    nxt.kind == "identifier" or follower in ("*", "&")
                ):
                    self.c.take()
                    saw_type = True
                    continue
            break
        if not saw_type and not children:
            raise ParseError("expected type specifier")
        return node("type_specifier", *children)

    def _template_args_ahead(self, limit: int = 48) -> bool:
        depth = 0
        for offset in range(1, limit):
            tok = self.c.peek(offset)
            if tok is None:
                return False
            lex = tok.lexeme
            if lex == "<":
                depth += 1
            elif lex == ">":
                depth -= 1
                if depth == 0:
                    return True
            elif lex == ">>":
                depth -= 2
                if depth <= 0:
                    return depth == 0
            elif lex in (";", "{", "}", ")"):
                return False
            elif tok.kind not in ("identifier", "keyword", "literal") and lex not in (",", "*", "&", "::"):
                return False
        return False

    def _consume_template_args(self) -> None:
        self.c.expect("<")
        depth = 1
        while depth and not self.c.eof():
            tok, _ = self.c.take()
            if tok.lexeme == "<":
                depth += 1
            elif tok.lexeme == ">":
                depth -= 1
            elif tok.lexeme == ">>":
                depth -= 2

    def parse_declarator(self, allow_function: bool) -> tuple[SyntaxNode, SyntaxNode | None, SyntaxNode | None]:
        while self.c.at("*", "&"):
            self.c.take()
        tok = self.c.peek()
        if tok is None or tok.kind != "identifier":
            raise ParseError(f"expected declarator name, got {self.c.lex()!r}")
        name_tok, idx = self.c.take()
        name = leaf("identifier", name_tok, idx)
        suffixes = []
        while self.c.at("["):
            self.c.take()
            if not self.c.at("]"):
                suffixes.append(self.parse_conditional())
            self.c.expect("]")
        if suffixes:
            name = node("subscript_expression", name, *suffixes)
        if self.c.at("("):
            params = self.parse_parameter_list()
            if allow_function and self.c.at("{"):
                return name, params, self.parse_compound()
            return name, params, None
        return name, None, None

    def parse_parameter_list(self) -> SyntaxNode:
        self.c.expect("(")
        params = []
        while not self.c.at(")"):
            if self.c.eof():
                raise ParseError("unterminated parameter list")
            if self.c.at("..."):
                self.c.take()
                params.append(node("parameter"))
                continue
            if self.c.at("void") and self.c.lex(1) == ")":
                self.c.take()
                params.append(node("parameter", node("type_specifier")))
                continue
            spec = self.parse_type_specifier()
            kids = [spec]
            if not self.c.at(",", ")"):
                declarator, fn_params, _ = self.parse_declarator(allow_function=False)
                kids.append(declarator)
                if fn_params is not None:
                    kids.append(fn_params)
                if self.c.at("="):
                    self.c.take()
                    kids.append(self.parse_assignment())
            params.append(node("parameter", *kids))
            if self.c.at(","):
                self.c.take()
        self.c.expect(")")
        return node("parameter_list", *params)

    def parse_init_declarator_tail(self, declarator: SyntaxNode, params: SyntaxNode | None) -> SyntaxNode:
        kids = [declarator]
        if params is not None:
            kids.append(params)
        if self.c.at("="):
            self.c.take()
            kids.append(self.parse_initializer())
        return node("init_declarator", *kids)

    def parse_initializer(self) -> SyntaxNode:
        if self.c.at("{"):
            self.c.take()
            items = []
            while not self.c.at("}"):
                items.append(self.parse_initializer())
                if self.c.at(","):
                    self.c.take()
            self.c.expect("}")
            return node("initializer_list", *items)
        return self.parse_assignment()

    # -- expressions --------------------------------------------------------

    def parse_expression_statement(self) -> SyntaxNode:
        expr = self.parse_expression()
        self.c.expect(";")
        return node("expression_statement", expr)

    def parse_expression(self) -> SyntaxNode:
        first = self.parse_assignment()
        if not self.c.at(","):
            return first
        items = [first]
        while self.c.at(","):
            self.c.take()
            items.append(self.parse_assignment())
        return node("comma_expression", *items)

    def parse_assignment(self) -> SyntaxNode:
        left = self.parse_conditional()
        if self.c.lex() in _C_ASSIGN_OPS:
            self.c.take()
            right = self.parse_assignment()
            return node("assignment_expression", left, right)
        return left

    def parse_conditional(self) -> SyntaxNode:
        cond = self.parse_binary(0)
        if self.c.at("?"):
            self.c.take()
            then = self.parse_expression()
            self.c.expect(":")
            other = self.parse_conditional()
            return node("conditional_expression", cond, then, other)
        return cond

    def parse_binary(self, level: int) -> SyntaxNode:
        if level >= len(_C_BINARY_LEVELS):
            return self.parse_unary()
        left = self.parse_binary(level + 1)
        while self.c.lex() in _C_BINARY_LEVELS[level]:
            self.c.take()
            right = self.parse_binary(level + 1)
            left = node("binary_expression", left, right)
        return left

    def parse_unary(self) -> SyntaxNode:
        lex = self.c.lex()
        if lex in ("++", "--"):
            self.c.take()
            return node("update_expression", self.parse_unary())
        if lex in ("!", "~", "+", "-", "*", "&"):
            self.c.take()
            return node("unary_expression", self.parse_unary())
        if lex == "sizeof":
            self.c.take()
            return node("unary_expression", self.parse_unary())
        if lex == "(" and self._cast_ahead():
            self.c.take()
            self.parse_type_specifier()
            while self.c.at("*", "&"):
                self.c.take()
            self.c.expect(")")
            return node("cast_expression", self.parse_unary())
        return self.parse_postfix()

    def _cast_ahead(self) -> bool:
        tok = self.c.peek(1)
        return tok is not None and tok.kind == "keyword" and tok.lexeme in _C_TYPE_KEYWORDS

    def parse_postfix(self) -> SyntaxNode:
        expr = self.parse_primary()
        while True:
            lex = self.c.lex()
            if lex == "(":
                expr = node("call_expression", expr, self.parse_argument_list())
            elif lex == "[":
                self.c.take()
                index = self.parse_expression()
                self.c.expect("]")
                expr = node("subscript_expression", expr, index)
            elif lex in (".", "->", "::"):
                self.c.take()
                tok, idx = self.c.take()
                if tok.kind not in ("identifier", "keyword"):
                    raise ParseError(f"expected member name, got {tok.lexeme!r}")
                expr = node("field_expression", expr, leaf("identifier", tok, idx))
            elif lex in ("++", "--"):
                self.c.take()
                expr = node("update_expression", expr)
            else:
                return expr

    def parse_argument_list(self) -> SyntaxNode:
        self.c.expect("(")
        args = []
        while not self.c.at(")"):
            if self.c.eof():
                raise ParseError("unterminated argument list")
            args.append(self.parse_assignment())
            if self.c.at(","):
                self.c.take()
        self.c.expect(")")
        return node("argument_list", *args)

    def parse_primary(self) -> SyntaxNode:
        tok = self.c.peek()
        if tok is None:
            raise ParseError("unexpected end of expression")
        if tok.lexeme == "(":
            self.c.take()
            inner = self.parse_expression()
            self.c.expect(")")
            return node("parenthesized_expression", inner)
        if tok.kind == "identifier":
            _, idx = self.c.take()
            return leaf("identifier", tok, idx)
        if tok.kind == "literal":
            _, idx = self.c.take()
            return leaf(_literal_leaf_kind(tok.lexeme), tok, idx)
        if tok.kind == "keyword" and tok.lexeme in _C_VALUE_KEYWORDS:
            _, idx = self.c.take()
            return leaf(_C_VALUE_KEYWORDS[tok.lexeme], tok, idx)
        if tok.kind == "keyword" and tok.lexeme == "new":
            self.c.take()
            return node("unary_expression", self.parse_unary())
        raise ParseError(f"unexpected token {tok.lexeme!r} at line {tok.line}")


# ---------------------------------------------------------------------------
# Python family
# ---------------------------------------------------------------------------

_PY_AUG_OPS = {"+=", "-=", "*=", "/=", "//=", "**=", "%=", "&=", "|=", "^=", ">>=", "<<=", "@="}
_PY_COMPARE_OPS = {"<", ">", "<=", ">=", "==", "!="}
_PY_BINARY_LEVELS = [
    {"|"},
    {"^"},
    {"&"},
    {"<<", ">>"},
    {"+", "-"},
    {"*", "/", "//", "%", "@"},
]
_PY_VALUE_KEYWORDS = {"True": "boolean_literal", "False": "boolean_literal", "None": "none_literal"}
_OPEN = {"(": ")", "[": "]", "{": "}"}


@dataclass
class _LogicalLine:
    indent: int
    tokens: list[tuple[Token, int]] = field(default_factory=list)


def _logical_lines(tokens: TokenSequence) -> list[_LogicalLine]:
    lines: list[_LogicalLine] = []
    depth = 0
    current: _LogicalLine | None = None
    last_line = -1
    for index, tok in enumerate(tokens.tokens):
        if current is None or (tok.line != last_line and depth == 0):
            current = _LogicalLine(indent=tok.col)
            lines.append(current)
        current.tokens.append((tok, index))
        last_line = tok.line
        if tok.lexeme in _OPEN:
            depth += 1
        elif tok.lexeme in _OPEN.values():
            depth = max(0, depth - 1)
    return lines


class _PyParser:
    def __init__(self, tokens: TokenSequence):
        self.lines = _logical_lines(tokens)
        self.li = 0

    def parse_module(self) -> SyntaxNode:
        children = []
        while self.li < len(self.lines):
            children.extend(self.parse_line_statement())
        return node("module", *children)

    def current_indent(self) -> int:
        return self.lines[self.li].indent if self.li < len(self.lines) else -1

    def parse_block(self, header_indent: int) -> SyntaxNode:
        if self.li >= len(self.lines):
            raise ParseError("expected an indented block")
        block_indent = self.lines[self.li].indent
        if block_indent <= header_indent:
            raise ParseError("expected an indented block")
        children = []
        while self.li < len(self.lines):
            indent = self.lines[self.li].indent
            if indent <= header_indent:
                break
            if indent < block_indent:
                raise ParseError(f"inconsistent dedent at line {self.lines[self.li].tokens[0][0].line}")
            children.extend(self.parse_line_statement())
        return node("block", *children)

    def parse_line_statement(self) -> list[SyntaxNode]:
        line = self.lines[self.li]
        cursor = _LineCursor(line)
        first, _ = line.tokens[0]
        out: list[SyntaxNode] = []
        if first.lexeme == "@" and first.kind == "operator":
            self.li += 1
            cursor.take()
            expr = _PyExpr(cursor).parse_expression()
            cursor.check_done()
            return [node("decorator", expr)]
        if first.kind == "keyword":
            compound = {
                "def": self.parse_def,
                "class": self.parse_class,
                "if": self.parse_if,
                "for": self.parse_for,
                "while": self.parse_while,
                "try": self.parse_try,
                "with": self.parse_with,
            }.get(first.lexeme)
            if compound is not None:
                return [compound(line, cursor)]
            if first.lexeme in ("async",):
                cursor.take()
                nxt = cursor.peek()
                if nxt is not None and nxt.lexeme in ("def", "for", "with"):
                    compound = {"def": self.parse_def, "for": self.parse_for, "with": self.parse_with}[nxt.lexeme]
                    return [compound(line, cursor)]
                raise ParseError(f"unsupported async statement at line {first.line}")
            if first.lexeme in ("elif", "else", "except", "finally"):
                raise ParseError(f"{first.lexeme!r} without matching statement at line {first.line}")
        # Simple statement line (possibly ';'-separated).
        self.li += 1
        while True:
            out.append(self.parse_simple_statement(cursor))
            if cursor.at(";"):
                cursor.take()
                if cursor.peek() is None:
                    break
                continue
            break
        cursor.check_done()
        return out

    # -- compound statements -------------------------------------------------

    def _suite(self, line: _LogicalLine, cursor: "_LineCursor") -> SyntaxNode:
        cursor.expect(":")
        if cursor.peek() is not None:
            # Inline suite: "if x: return 1".
            children = []
            while True:
                children.append(self.parse_simple_statement(cursor))
                if cursor.at(";"):
                    cursor.take()
                    if cursor.peek() is None:
                        break
                    continue
                break
            cursor.check_done()
            return node("block", *children)
        cursor.check_done()
        return self.parse_block(line.indent)

    def parse_def(self, line: _LogicalLine, cursor: "_LineCursor") -> SyntaxNode:
        self.li += 1
        cursor.expect("def")
        name = cursor.identifier_leaf()
        params = self.parse_parameters(cursor)
        children = [name, params]
        if cursor.at("->"):
            cursor.take()
            children.append(_PyExpr(cursor).parse_ternary())
        children.append(self._suite(line, cursor))
        return node("function_definition", *children)

    def parse_parameters(self, cursor: "_LineCursor") -> SyntaxNode:
        cursor.expect("(")
        params = []
        while not cursor.at(")"):
            kids = []
            if cursor.at("*", "**"):
                cursor.take()
                if cursor.at(",", ")"):  # bare "*" separator
                    params.append(node("parameter"))
                    if cursor.at(","):
                        cursor.take()
                    continue
            kids.append(cursor.identifier_leaf())
            if cursor.at(":"):
                cursor.take()
                kids.append(_PyExpr(cursor).parse_ternary())
            if cursor.at("="):
                cursor.take()
                kids.append(_PyExpr(cursor).parse_ternary())
            params.append(node("parameter", *kids))
            if cursor.at(","):
                cursor.take()
        cursor.expect(")")
        return node("parameter_list", *params)

    def parse_class(self, line: _LogicalLine, cursor: "_LineCursor") -> SyntaxNode:
        self.li += 1
        cursor.expect("class")
        children = [cursor.identifier_leaf()]
        if cursor.at("("):
            children.append(_PyExpr(cursor).parse_argument_list())
        children.append(self._suite(line, cursor))
        return node("class_definition", *children)

    def parse_if(self, line: _LogicalLine, cursor: "_LineCursor") -> SyntaxNode:
        self.li += 1
        cursor.expect("if")
        cond = _PyExpr(cursor).parse_ternary()
        children = [cond, self._suite(line, cursor)]
        while self._clause_ahead(line.indent, "elif"):
            clause_line = self.lines[self.li]
            clause_cursor = _LineCursor(clause_line)
            self.li += 1
            clause_cursor.expect("elif")
            clause_cond = _PyExpr(clause_cursor).parse_ternary()
            children.append(node("elif_clause", clause_cond, self._suite(clause_line, clause_cursor)))
        if self._clause_ahead(line.indent, "else"):
            children.append(self._else_clause())
        return node("if_statement", *children)

    def _clause_ahead(self, indent: int, lexeme: str) -> bool:
        if self.li >= len(self.lines):
            return False
        line = self.lines[self.li]
        return line.indent == indent and line.tokens[0][0].lexeme == lexeme

    def _else_clause(self) -> SyntaxNode:
        line = self.lines[self.li]
        cursor = _LineCursor(line)
        self.li += 1
        cursor.expect("else")
        return node("else_clause", self._suite(line, cursor))

    def parse_for(self, line: _LogicalLine, cursor: "_LineCursor") -> SyntaxNode:
        self.li += 1
        cursor.expect("for")
        target = _PyExpr(cursor).parse_target_list()
        cursor.expect("in")
        iterable = _PyExpr(cursor).parse_expression()
        children = [target, iterable, self._suite(line, cursor)]
        if self._clause_ahead(line.indent, "else"):
            children.append(self._else_clause())
        return node("for_statement", *children)

    def parse_while(self, line: _LogicalLine, cursor: "_LineCursor") -> SyntaxNode:
        self.li += 1
        cursor.expect("while")
        cond = _PyExpr(cursor).parse_ternary()
        children = [cond, self._suite(line, cursor)]
        if self._clause_ahead(line.indent, "else"):
            children.append(self._else_clause())
        return node("while_statement", *children)

    def parse_try(self, line: _LogicalLine, cursor: "_LineCursor") -> SyntaxNode:
        self.li += 1
        cursor.expect("try")
        children = [self._suite(line, cursor)]
        while self._clause_ahead(line.indent, "except"):
            clause_line = self.lines[self.li]
            clause_cursor = _LineCursor(clause_line)
            self.li += 1
            clause_cursor.expect("except")
            kids = []
            if not clause_cursor.at(":"):
                kids.append(_PyExpr(clause_cursor).parse_ternary())
                if clause_cursor.at("as"):
                    clause_cursor.take()
                    kids.append(clause_cursor.identifier_leaf())
            kids.append(self._suite(clause_line, clause_cursor))
            children.append(node("except_clause", *kids))
        if self._clause_ahead(line.indent, "else"):
            children.append(self._else_clause())
        if self._clause_ahead(line.indent, "finally"):
            clause_line = self.lines[self.li]
            clause_cursor = _LineCursor(clause_line)
            self.li += 1
            clause_cursor.expect("finally")
            children.append(node("finally_clause", self._suite(clause_line, clause_cursor)))
        return node("try_statement", *children)

    def parse_with(self, line: _LogicalLine, cursor: "_LineCursor") -> SyntaxNode:
        self.li += 1
        cursor.expect("with")
        children = []
        while True:
            item = _PyExpr(cursor).parse_ternary()
            if cursor.at("as"):
                cursor.take()
                target = _PyExpr(cursor).parse_target_atom()
                item = node("assignment", target, item)
            children.append(item)
            if cursor.at(","):
                cursor.take()
                continue
            break
        children.append(self._suite(line, cursor))
        return node("with_statement", *children)

    # -- simple statements ----------------------------------------------------

    def parse_simple_statement(self, cursor: "_LineCursor") -> SyntaxNode:
        tok = cursor.peek()
        if tok is None:
            raise ParseError("empty statement")
        lex = tok.lexeme
        if tok.kind == "keyword":
            if lex == "return":
                cursor.take()
                if cursor.peek() is None or cursor.at(";"):
                    return node("return_statement")
                return node("return_statement", _PyExpr(cursor).parse_expression())
            if lex == "pass":
                cursor.take()
                return node("pass_statement")
            if lex == "break":
                cursor.take()
                return node("break_statement")
            if lex == "continue":
                cursor.take()
                return node("continue_statement")
            if lex == "raise":
                cursor.take()
                kids = []
                if cursor.peek() is not None and not cursor.at(";"):
                    kids.append(_PyExpr(cursor).parse_ternary())
                    if cursor.at("from"):
                        cursor.take()
                        kids.append(_PyExpr(cursor).parse_ternary())
                return node("raise_statement", *kids)
            if lex == "assert":
                cursor.take()
                kids = [_PyExpr(cursor).parse_ternary()]
                if cursor.at(","):
                    cursor.take()
                    kids.append(_PyExpr(cursor).parse_ternary())
                return node("assert_statement", *kids)
            if lex == "del":
                cursor.take()
                return node("del_statement", _PyExpr(cursor).parse_target_list())
            if lex in ("global", "nonlocal"):
                cursor.take()
                kids = [cursor.identifier_leaf()]
                while cursor.at(","):
                    cursor.take()
                    kids.append(cursor.identifier_leaf())
                return node(f"{lex}_statement", *kids)
            if lex in ("import", "from"):
                kids = []
                while cursor.peek() is not None and not cursor.at(";"):
                    t, idx = cursor.take()
                    if t.kind == "identifier":
                        kids.append(leaf("identifier", t, idx))
                return node("import_statement", *kids)
            if lex == "yield":
                return node("expression_statement", _PyExpr(cursor).parse_yield())
        expr = _PyExpr(cursor).parse_expression()
        if cursor.at(":"):
            # Annotated assignment: "x: int" or "x: int = value".
            cursor.take()
            annotation = _PyExpr(cursor).parse_ternary()
            kids = [expr, annotation]
            if cursor.at("="):
                cursor.take()
                kids.append(_PyExpr(cursor).parse_expression())
            return node("annotated_assignment", *kids)
        if cursor.lex() in _PY_AUG_OPS:
            cursor.take()
            return node("augmented_assignment", expr, _PyExpr(cursor).parse_expression())
        if cursor.at("="):
            targets = [expr]
            while cursor.at("="):
                cursor.take()
                targets.append(_PyExpr(cursor).parse_expression())
            return node("assignment", *targets)
        return node("expression_statement", expr)


class _LineCursor:
    """Cursor over one logical line's (token, global index) pairs."""

    def __init__(self, line: _LogicalLine):
        self.items = line.tokens
        self.i = 0

    def peek(self, offset: int = 0) -> Token | None:
        j = self.i + offset
        return self.items[j][0] if j < len(self.items) else None

    def lex(self, offset: int = 0) -> str:
        tok = self.peek(offset)
        return tok.lexeme if tok else ""

    def at(self, *lexemes: str) -> bool:
        return self.lex() in lexemes

    def take(self) -> tuple[Token, int]:
        if self.i >= len(self.items):
            raise ParseError("unexpected end of line")
        tok, idx = self.items[self.i]
        self.i += 1
        return tok, idx

    def expect(self, lexeme: str) -> tuple[Token, int]:
        tok = self.peek()
        if tok is None or tok.lexeme != lexeme:
            got = tok.lexeme if tok else "<end of line>"
            where = f" at line {tok.line}" if tok else ""
            raise ParseError(f"expected {lexeme!r}, got {got!r}{where}")
        return self.take()

    def identifier_leaf(self) -> SyntaxNode:
        tok = self.peek()
        if tok is None or tok.kind != "identifier":
            raise ParseError(f"expected identifier, got {self.lex() or '<end of line>'!r}")
        _, idx = self.take()
        return leaf("identifier", tok, idx)

    def check_done(self) -> None:
        if self.i < len(self.items):
            tok = self.items[self.i][0]
            raise ParseError(f"trailing tokens at line {tok.line}: {tok.lexeme!r}")


class _PyExpr:
    """Expression parser over a line cursor (Python family)."""

    def __init__(self, cursor: _LineCursor):
        self.c = cursor

    # exprlist: ternary ("," ternary)* — a bare comma list is a tuple.
    def parse_expression(self) -> SyntaxNode:
        first = self.parse_ternary()
        if not self.c.at(","):
            return first
        items = [first]
        while self.c.at(","):
            self.c.take()
            if self.c.peek() is None or self.c.at(")", "]", "}", ";", "=", ":"):
                break
            items.append(self.parse_ternary())
        return node("tuple_expression", *items)

    def parse_ternary(self) -> SyntaxNode:
        if self.c.at("lambda"):
            return self.parse_lambda()
        if self.c.at("yield"):
            return self.parse_yield()
        value = self.parse_or()
        if self.c.at(":="):
            self.c.take()
            return node("assignment", value, self.parse_ternary())
        if self.c.at("if"):
            self.c.take()
            cond = self.parse_or()
            self.c.expect("else")
            other = self.parse_ternary()
            return node("conditional_expression", value, cond, other)
        return value

    def parse_lambda(self) -> SyntaxNode:
        self.c.expect("lambda")
        params = []
        while not self.c.at(":"):
            if self.c.at("*", "**"):
                self.c.take()
                continue
            kids = [self.c.identifier_leaf()]
            if self.c.at("="):
                self.c.take()
                kids.append(self.parse_ternary())
            params.append(node("parameter", *kids))
            if self.c.at(","):
                self.c.take()
        self.c.expect(":")
        return node("lambda_expression", node("parameter_list", *params), self.parse_ternary())

    def parse_yield(self) -> SyntaxNode:
        self.c.expect("yield")
        if self.c.at("from"):
            self.c.take()
            return node("yield_expression", self.parse_ternary())
        if self.c.peek() is None or self.c.at(")", "]", "}", ";"):
            return node("yield_expression")
        return node("yield_expression", self.parse_expression())

    def parse_or(self) -> SyntaxNode:
        left = self.parse_and()
        while self.c.at("or"):
            self.c.take()
            left = node("boolean_expression", left, self.parse_and())
        return left

    def parse_and(self) -> SyntaxNode:
        left = self.parse_not()
        while self.c.at("and"):
            self.c.take()
            left = node("boolean_expression", left, self.parse_not())
        return left

    def parse_not(self) -> SyntaxNode:
        if self.c.at("not"):
            self.c.take()
            return node("not_expression", self.parse_not())
        return self.parse_comparison()

    def parse_comparison(self) -> SyntaxNode:
        left = self.parse_binary(0)
        operands = [left]
        while True:
            lex = self.c.lex()
            if lex in _PY_COMPARE_OPS:
                self.c.take()
            elif lex == "in":
                self.c.take()
            elif lex == "not" and self.c.lex(1) == "in":
                self.c.take()
                self.c.take()
            elif lex == "is":
                self.c.take()
                if self.c.at("not"):
                    self.c.take()
            else:
                break
            operands.append(self.parse_binary(0))
        if len(operands) == 1:
            return left
        return node("comparison_expression", *operands)

    def parse_binary(self, level: int) -> SyntaxNode:
        if level >= len(_PY_BINARY_LEVELS):
            return self.parse_unary()
        left = self.parse_binary(level + 1)
        while self.c.lex() in _PY_BINARY_LEVELS[level]:
            self.c.take()
            left = node("binary_expression", left, self.parse_binary(level + 1))
        return left

    def parse_unary(self) -> SyntaxNode:
        lex = self.c.lex()
        if lex in ("+", "-", "~"):
            self.c.take()
            return node("unary_expression", self.parse_unary())
        if lex == "await":
            self.c.take()
            return node("unary_expression", self.parse_unary())
        return self.parse_power()

    def parse_power(self) -> SyntaxNode:
        base = self.parse_postfix()
        if self.c.at("**"):
            self.c.take()
            return node("binary_expression", base, self.parse_unary())
        return base

    def parse_postfix(self) -> SyntaxNode:
        expr = self.parse_primary()
        while True:
            lex = self.c.lex()
            if lex == "(":
                expr = node("call_expression", expr, self.parse_argument_list())
            elif lex == "[":
                self.c.take()
                index = self.parse_subscript_index()
                self.c.expect("]")
                expr = node("subscript_expression", expr, index)
            elif lex == ".":
                self.c.take()
                tok = self.c.peek()
                if tok is None or tok.kind not in ("identifier", "keyword"):
                    raise ParseError(f"expected attribute name, got {self.c.lex()!r}")
                _, idx = self.c.take()
                expr = node("attribute_expression", expr, leaf("identifier", tok, idx))
            else:
                return expr

    def parse_subscript_index(self) -> SyntaxNode:
        parts: list[SyntaxNode] = []
        saw_colon = False

        def grab() -> SyntaxNode | None:
            if self.c.at(":", "]", ","):
                return None
            return self.parse_ternary()

        first = grab()
        if first is not None:
            parts.append(first)
        while self.c.at(":"):
            saw_colon = True
            self.c.take()
            item = grab()
            if item is not None:
                parts.append(item)
        if saw_colon:
            return node("slice_expression", *parts)
        if not parts:
            raise ParseError("empty subscript")
        if self.c.at(","):
            items = list(parts)
            while self.c.at(","):
                self.c.take()
                if self.c.at("]"):
                    break
                items.append(self.parse_ternary())
            return node("tuple_expression", *items)
        return parts[0]

    def parse_argument_list(self) -> SyntaxNode:
        self.c.expect("(")
        args = []
        while not self.c.at(")"):
            if self.c.at("*", "**"):
                self.c.take()
                args.append(node("starred_expression", self.parse_ternary()))
            else:
                tok = self.c.peek()
                if (
                    tok is not None
                    and tok.kind == "identifier"
                    and self.c.lex(1) == "="
                    and self.c.lex(2) != "="
                ):
                    _, idx = self.c.take()
                    self.c.take()
                    args.append(
                        node("keyword_argument", leaf("identifier", tok, idx), self.parse_ternary())
                    )
                else:
                    item = self.parse_ternary()
                    if self.c.at("for"):
                        item = self.parse_comprehension_tail(item)
                    args.append(item)
            if self.c.at(","):
                self.c.take()
        self.c.expect(")")
        return node("argument_list", *args)

    def parse_primary(self) -> SyntaxNode:
        tok = self.c.peek()
        if tok is None:
            raise ParseError("unexpected end of expression")
        lex = tok.lexeme
        if lex == "(":
            self.c.take()
            if self.c.at(")"):
                self.c.take()
                return node("tuple_expression")
            inner = self.parse_ternary()
            if self.c.at("for"):
                inner = self.parse_comprehension_tail(inner)
                self.c.expect(")")
                return inner
            if self.c.at(","):
                items = [inner]
                while self.c.at(","):
                    self.c.take()
                    if self.c.at(")"):
                        break
                    items.append(self.parse_ternary())
                self.c.expect(")")
                return node("tuple_expression", *items)
            self.c.expect(")")
            return node("parenthesized_expression", inner)
        if lex == "[":
            self.c.take()
            if self.c.at("]"):
                self.c.take()
                return node("list_expression")
            first = self.parse_ternary()
            if self.c.at("for"):
                comp = self.parse_comprehension_tail(first)
                self.c.expect("]")
                return comp
            items = [first]
            while self.c.at(","):
                self.c.take()
                if self.c.at("]"):
                    break
                items.append(self.parse_ternary())
            self.c.expect("]")
            return node("list_expression", *items)
        if lex == "{":
            self.c.take()
            return self.parse_braced()
        if tok.kind == "identifier":
            _, idx = self.c.take()
            return leaf("identifier", tok, idx)
        if tok.kind == "literal":
            _, idx = self.c.take()
            return leaf(_literal_leaf_kind(tok.lexeme, "python"), tok, idx)
        if tok.kind == "keyword" and lex in _PY_VALUE_KEYWORDS:
            _, idx = self.c.take()
            return leaf(_PY_VALUE_KEYWORDS[lex], tok, idx)
        if tok.kind == "operator" and lex == "*":
            self.c.take()
            return node("starred_expression", self.parse_ternary())
        if tok.kind == "operator" and lex == "...":
            self.c.take()
            return leaf("identifier", tok, -1)
        raise ParseError(f"unexpected token {lex!r} at line {tok.line}")

    def parse_braced(self) -> SyntaxNode:
        if self.c.at("}"):
            self.c.take()
            return node("dict_expression")
        if self.c.at("**"):
            self.c.take()
            items = [node("starred_expression", self.parse_ternary())]
            while self.c.at(","):
                self.c.take()
                if self.c.at("}"):
                    break
                items.append(self.parse_dict_item())
            self.c.expect("}")
            return node("dict_expression", *items)
        first = self.parse_ternary()
        if self.c.at(":"):
            self.c.take()
            value = self.parse_ternary()
            pair = node("pair", first, value)
            if self.c.at("for"):
                comp = self.parse_comprehension_tail(pair)
                self.c.expect("}")
                return comp
            items = [pair]
            while self.c.at(","):
                self.c.take()
                if self.c.at("}"):
                    break
                items.append(self.parse_dict_item())
            self.c.expect("}")
            return node("dict_expression", *items)
        if self.c.at("for"):
            comp = self.parse_comprehension_tail(first)
            self.c.expect("}")
            return comp
        items = [first]
        while self.c.at(","):
            self.c.take()
            if self.c.at("}"):
                break
            items.append(self.parse_ternary())
        self.c.expect("}")
        return node("set_expression", *items)

    def parse_dict_item(self) -> SyntaxNode:
        if self.c.at("**"):
            self.c.take()
            return node("starred_expression", self.parse_ternary())
        key = self.parse_ternary()
        self.c.expect(":")
        return node("pair", key, self.parse_ternary())

    def parse_comprehension_tail(self, element: SyntaxNode) -> SyntaxNode:
        clauses = [element]
        while True:
            if self.c.at("for"):
                self.c.take()
                target = self.parse_target_list()
                self.c.expect("in")
                iterable = self.parse_or()
                clauses.append(node("for_clause", target, iterable))
            elif self.c.at("if"):
                self.c.take()
                clauses.append(node("if_clause", self.parse_or()))
            elif self.c.at("async"):
                self.c.take()
            else:
                break
        return node("comprehension", *clauses)

    # Assignment/for targets: postfix chains, tuples, stars, brackets.
    def parse_target_list(self) -> SyntaxNode:
        first = self.parse_target_atom()
        if not self.c.at(","):
            return first
        items = [first]
        while self.c.at(","):
            self.c.take()
            if self.c.at("in", "=", ")", "]", "}") or self.c.peek() is None:
                break
            items.append(self.parse_target_atom())
        return node("tuple_expression", *items)

    def parse_target_atom(self) -> SyntaxNode:
        if self.c.at("*"):
            self.c.take()
            return node("starred_expression", self.parse_target_atom())
        if self.c.at("(", "["):
            close = ")" if self.c.lex() == "(" else "]"
            kind = "tuple_expression" if close == ")" else "list_expression"
            self.c.take()
            items = []
            while not self.c.at(close):
                items.append(self.parse_target_atom())
                if self.c.at(","):
                    self.c.take()
            self.c.expect(close)
            return node(kind, *items)
        return self.parse_postfix()
