from __future__ import annotations

import pytest

from code_evolve.synmetrics.grammar import get_grammar
from code_evolve.synmetrics.syntax import ParseError, parse

from snippets import c_snippet, py_snippet

C = get_grammar("c_family")
PY = get_grammar("python_family")


def kinds_at_top(code, grammar):
    return [child.kind for child in parse(code, grammar).children]


class TestCFamily:
    def test_translation_unit_shape(self):
        code = "#include <stdio.h>\nint main() { return 0; }\n"
        assert kinds_at_top(code, C) == ["preproc_directive", "function_definition"]

    def test_statement_variety(self):
        code = """
        int main() {
            int a = 1, b[10];
            a += 2;
            if (a > 1) { a--; } else { a++; }
            while (a < 10) a = a * 2;
            do { a = a - 1; } while (a > 0);
            for (int i = 0; i < 3; i++) b[i] = i;
            switch (a) { case 1: break; default: break; }
            printf("%d\\n", a ? a : -a);
            return 0;
        }
        """
        tree = parse(code, C)
        seen = {node.kind for node in tree.walk()}
        for expected in (
            "declaration", "if_statement", "else_clause", "while_statement",
            "do_statement", "for_statement", "switch_statement", "case_clause",
            "default_clause", "call_expression", "conditional_expression",
            "subscript_expression", "update_expression", "return_statement",
        ):
            assert expected in seen, expected

    def test_cpp_surface(self):
        code = """
        #include <iostream>
        using namespace std;
        int main() {
            int n;
            cin >> n;
            cout << n * 2 << endl;
            return 0;
        }
        """
        tree = parse(code, C)
        assert tree.kind == "translation_unit"

    def test_struct_and_templates(self):
        code = """
        struct point { int x; int y; };
        int main() {
            struct point p;
            p.x = 1;
            return p.x;
        }
        """
        seen = {node.kind for node in parse(code, C).walk()}
        assert "struct_specifier" in seen
        assert "field_expression" in seen

    def test_cast_and_sizeof(self):
        code = "int main() { double d = 1.5; int n = (int)d + sizeof(d); return n; }"
        seen = {node.kind for node in parse(code, C).walk()}
        assert "cast_expression" in seen

    def test_parse_error_on_garbage(self):
        with pytest.raises(ParseError):
            parse("int main() { if ( } ", C)

    def test_sexp_hides_lexemes(self):
        one = parse("int x = 1;", C).sexp()
        two = parse("int y = 2;", C).sexp()
        assert one == two

    def test_comment_only_edits_keep_tree_identical(self):
        base = "int main() { int a = 1; return a; }"
        commented = "int main() { /* setup */ int a = 1; // one\n return a; }"
        assert parse(base, C).sexp() == parse(commented, C).sexp()


class TestPythonFamily:
    def test_module_shape(self):
        code = "import sys\n\ndef main():\n    return 0\n\nmain()\n"
        assert kinds_at_top(code, PY) == [
            "import_statement",
            "function_definition",
            "expression_statement",
        ]

    def test_statement_variety(self):
        code = (
            "def f(a, b=2, *args, **kwargs):\n"
            "    total = 0\n"
            "    for i in range(a):\n"
            "        if i % 2 == 0:\n"
            "            total += i\n"
            "        elif i > b:\n"
            "            break\n"
            "        else:\n"
            "            continue\n"
            "    while total > 100:\n"
            "        total //= 2\n"
            "    try:\n"
            "        return total / b\n"
            "    except ZeroDivisionError as exc:\n"
            "        raise ValueError('bad') from exc\n"
            "    finally:\n"
            "        pass\n"
        )
        seen = {node.kind for node in parse(code, PY).walk()}
        for expected in (
            "function_definition", "for_statement", "if_statement", "elif_clause",
            "else_clause", "while_statement", "try_statement", "except_clause",
            "finally_clause", "augmented_assignment", "raise_statement",
            "comparison_expression", "return_statement",
        ):
            assert expected in seen, expected

    def test_expression_variety(self):
        code = (
            "pairs = {k: v for k, v in items if v}\n"
            "config = {'name': 'x', 'size': 3}\n"
            "squares = [x ** 2 for x in range(10)]\n"
            "firsts = [1, 2, 3]\n"
            "total = sum(x for x in squares)\n"
            "flag = a and not b or c\n"
            "s = data[1:10:2]\n"
            "t = (1, 2, 3)\n"
            "fn = lambda u, w: u + w\n"
            "y = x if x > 0 else -x\n"
        )
        seen = {node.kind for node in parse(code, PY).walk()}
        for expected in (
            "comprehension", "for_clause", "if_clause", "binary_expression",
            "boolean_expression", "not_expression", "slice_expression",
            "tuple_expression", "lambda_expression", "conditional_expression",
            "dict_expression", "list_expression",
        ):
            assert expected in seen, expected

    def test_class_and_decorator(self):
        code = (
            "@register\n"
            "class Greeter(Base):\n"
            "    def greet(self, name):\n"
            "        return 'hi ' + name\n"
        )
        seen = {node.kind for node in parse(code, PY).walk()}
        assert "decorator" in seen
        assert "class_definition" in seen

    def test_inline_suite(self):
        tree = parse("if x: y = 1\n", PY)
        seen = {node.kind for node in tree.walk()}
        assert "if_statement" in seen and "assignment" in seen

    def test_annotated_assignment(self):
        seen = {node.kind for node in parse("x: int = 5\n", PY).walk()}
        assert "annotated_assignment" in seen

    def test_dedent_errors(self):
        with pytest.raises(ParseError):
            parse("def f():\n        x = 1\n    y = 2\n", PY)

    def test_else_without_if_errors(self):
        with pytest.raises(ParseError):
            parse("else:\n    pass\n", PY)

    def test_comment_and_docstring_edit_changes_only_leaves(self):
        base = "def f(x):\n    return x + 1\n"
        commented = "def f(x):  # doubles\n    return x + 1\n"
        assert parse(base, PY).sexp() == parse(commented, PY).sexp()


@pytest.mark.parametrize("seed", range(25))
def test_generated_c_snippets_parse(seed):
    parse(c_snippet(seed), C)


@pytest.mark.parametrize("seed", range(25))
def test_generated_py_snippets_parse(seed):
    parse(py_snippet(seed), PY)
