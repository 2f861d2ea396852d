from __future__ import annotations

import pytest

from code_evolve.synmetrics.grammar import get_grammar
from code_evolve.synmetrics.tokens import LexError, tokenize

C = get_grammar("c_family")
PY = get_grammar("python_family")


def kinds(code, grammar):
    return [(t.lexeme, t.kind) for t in tokenize(code, grammar)]


def test_simple_assignment_kinds():
    assert kinds("a=1", C) == [("a", "identifier"), ("=", "operator"), ("1", "literal")]


def test_empty_string_gives_empty_sequence():
    assert len(tokenize("", C)) == 0
    assert len(tokenize("", PY)) == 0


def test_keyword_only_snippet():
    tokens = tokenize("return if else while", C)
    assert all(t.kind == "keyword" for t in tokens)


def test_keywords_differ_per_grammar():
    assert tokenize("def", C)[0].kind == "identifier"
    assert tokenize("def", PY)[0].kind == "keyword"


def test_comments_are_excluded_line_and_block():
    code = "int a; // trailing\n/* block\ncomment */ int b;"
    lexemes = [t.lexeme for t in tokenize(code, C)]
    assert lexemes == ["int", "a", ";", "int", "b", ";"]


def test_python_hash_comment_excluded():
    lexemes = [t.lexeme for t in tokenize("x = 1  # note\ny = 2", PY)]
    assert lexemes == ["x", "=", "1", "y", "=", "2"]


def test_multichar_operators_lex_greedily():
    lexemes = [t.lexeme for t in tokenize("a<<=b>>c->d", C)]
    assert lexemes == ["a", "<<=", "b", ">>", "c", "->", "d"]


def test_python_walrus_and_floor_div():
    lexemes = [t.lexeme for t in tokenize("(x := 7 // 2) ** 2", PY)]
    assert "**" in lexemes and "//" in lexemes and ":=" in lexemes


def test_numeric_literal_shapes():
    for code in ("0x1F", "3.14", "1e-9", "2.5e3", "042", "7.0f"):
        tokens = tokenize(code, C)
        assert len(tokens) == 1 and tokens[0].kind == "literal", code
    for code in ("0b101", "1_000", "3.14j"):
        tokens = tokenize(code, PY)
        assert len(tokens) == 1 and tokens[0].kind == "literal", code


def test_string_literals_with_escapes():
    tokens = tokenize(r'printf("a\"b\n");', C)
    assert tokens[2].kind == "literal"
    assert tokens[2].lexeme == r'"a\"b\n"'


def test_python_triple_quoted_and_prefixed_strings():
    tokens = tokenize('s = """multi\nline"""\nr = rb"raw"', PY)
    literals = [t for t in tokens if t.kind == "literal"]
    assert len(literals) == 2


def test_char_literal_in_c():
    tokens = tokenize("char c = 'x';", C)
    assert tokens[3].kind == "literal" and tokens[3].lexeme == "'x'"


def test_unterminated_string_raises_with_position():
    with pytest.raises(LexError) as excinfo:
        tokenize('x = "unterminated', PY)
    assert excinfo.value.line == 1


def test_unlexable_byte_raises():
    with pytest.raises(LexError, match="unlexable"):
        tokenize("int a = 1; $", C)


def test_no_empty_lexemes_and_source_order():
    tokens = tokenize("x = foo(1, 2) + y[3]\n", PY)
    assert all(t.lexeme for t in tokens)
    positions = [(t.line, t.col) for t in tokens]
    assert positions == sorted(positions)


def test_backslash_continuation_keeps_logical_line():
    tokens = tokenize("x = 1 + \\\n    2\n", PY)
    assert len({t.line for t in tokens}) == 1
