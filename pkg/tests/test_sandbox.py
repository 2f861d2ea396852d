from __future__ import annotations

import json
import shutil

import pytest

from code_evolve.corpus.model import CodeSample, Task
from code_evolve.errors import ConfigError, DataError
from code_evolve.llm.client import StubProvider
from code_evolve.sandbox.runner import ExecutionLimits, run_program
from code_evolve.sandbox.suite import (
    SuiteGenerationError,
    TestCase,
    TestSuite,
    generate_test_suite,
    load_suites,
    save_suites,
)
from code_evolve.sandbox.verdict import f_exec, normalize_output

from conftest import ECHO_PY, SUM_PY

FAST = ExecutionLimits(timeout_seconds=10.0)


def inputs_response(inputs):
    return "```json\n" + json.dumps(inputs) + "\n```"


def test_print_constant():
    outcome = run_program("print(42)", "python_family", "", FAST)
    assert outcome.status == "ok"
    assert outcome.stdout.strip() == "42"


def test_stdin_is_piped():
    outcome = run_program(ECHO_PY, "python_family", "hello\nworld\n", FAST)
    assert outcome.status == "ok"
    assert outcome.stdout == "hello\nworld\n"


def test_infinite_loop_times_out_near_limit():
    limits = ExecutionLimits(timeout_seconds=2.0)
    outcome = run_program("while True:\n    pass\n", "python_family", "", limits)
    assert outcome.status == "timeout"
    assert outcome.stdout == ""
    assert 1900 <= outcome.duration_ms <= 6000  # timeout plus scheduling slack


def test_unparseable_program_is_compile_error():
    outcome = run_program("def broken(:\n", "python_family", "", FAST)
    assert outcome.status == "compile_error"
    assert outcome.stdout == ""


def test_runtime_error_keeps_partial_stdout():
    code = "print('before')\nraise RuntimeError('boom')\n"
    outcome = run_program(code, "python_family", "", FAST)
    assert outcome.status == "runtime_error"
    assert "before" in outcome.stdout


def test_output_overflow_is_killed():
    limits = ExecutionLimits(timeout_seconds=20.0, output_cap_bytes=64 * 1024)
    code = "while True:\n    print('x' * 1024)\n"
    outcome = run_program(code, "python_family", "", limits)
    assert outcome.status == "output_overflow"
    assert outcome.stdout == ""
    assert outcome.duration_ms < 15_000


def test_missing_toolchain_is_config_error():
    with pytest.raises(ConfigError, match="toolchain"):
        run_program("whatever", "cobol", "", FAST)


@pytest.mark.skipif(shutil.which("g++") is None, reason="no C++ compiler in PATH")
def test_c_family_compile_and_run():
    code = "#include <cstdio>\nint main() { int a, b; scanf(\"%d %d\", &a, &b); printf(\"%d\\n\", a + b); return 0; }\n"
    outcome = run_program(code, "c_family", "2 3\n", ExecutionLimits(timeout_seconds=30.0))
    assert outcome.status == "ok"
    assert outcome.stdout.strip() == "5"


@pytest.mark.skipif(shutil.which("g++") is None, reason="no C++ compiler in PATH")
def test_c_family_compile_error():
    outcome = run_program("int main( {", "c_family", "", FAST)
    assert outcome.status == "compile_error"


def test_normalize_output_strips_trailing_space_and_final_newline():
    assert normalize_output("a \nb\t\n\n") == "a\nb"
    assert normalize_output("a\nb") == "a\nb"
    assert normalize_output("") == ""


class TestSuiteGeneration:
    task = Task(task_id="echo", description="Echo stdin lines.", corpus_language="python_family")
    exemplar = CodeSample(sample_id="echo/seed", task_id="echo", body=ECHO_PY)

    def test_references_come_from_exemplar_not_llm(self):
        gateway = StubProvider(inputs_response(["1\n", "2\n"]))
        suite = generate_test_suite(self.task, self.exemplar, gateway, limits=FAST)
        assert [case.stdin for case in suite.cases] == ["1\n", "2\n"]
        assert [case.reference_stdout for case in suite.cases] == ["1\n", "2\n"]

    def test_duplicate_proposed_inputs_are_deduplicated(self):
        gateway = StubProvider(inputs_response(["5\n", "5\n", "7\n"]))
        suite = generate_test_suite(self.task, self.exemplar, gateway, limits=FAST)
        assert [case.stdin for case in suite.cases] == ["5\n", "7\n"]

    def test_exemplar_failing_every_input_rejects_task(self):
        crasher = CodeSample(
            sample_id="echo/bad", task_id="echo", body="import sys\nsys.exit(3)\n"
        )
        gateway = StubProvider(inputs_response(["1\n"]))
        with pytest.raises(SuiteGenerationError, match="every proposed input"):
            generate_test_suite(self.task, crasher, gateway, limits=FAST)

    def test_nondeterministic_exemplar_rejects_task(self):
        flaky = CodeSample(
            sample_id="echo/flaky",
            task_id="echo",
            body="import random\nprint(random.random())\n",
        )
        gateway = StubProvider(inputs_response([""]))
        with pytest.raises(SuiteGenerationError, match="nondeterministic"):
            generate_test_suite(self.task, flaky, gateway, limits=FAST)

    def test_non_json_proposal_is_rejected(self):
        gateway = StubProvider("```\nnot a json array\n```")
        with pytest.raises(SuiteGenerationError, match="JSON"):
            generate_test_suite(self.task, self.exemplar, gateway, limits=FAST)

    def test_suites_round_trip(self, tmp_path):
        gateway = StubProvider(inputs_response(["1\n"]))
        suite = generate_test_suite(self.task, self.exemplar, gateway, limits=FAST)
        save_suites([suite], tmp_path / "suites.jsonl")
        loaded = load_suites(tmp_path / "suites.jsonl")
        assert loaded["echo"].cases == suite.cases
        assert loaded["echo"].limits.timeout_seconds == FAST.timeout_seconds


class TestFExec:
    task = Task(task_id="sum", description="Sum integers.", corpus_language="python_family")
    source = CodeSample(sample_id="sum/seed", task_id="sum", body=SUM_PY)
    suite = TestSuite(
        suite_id="suite-sum",
        task_id="sum",
        cases=(
            TestCase(stdin="1 2 3\n", reference_stdout="6\n"),
            TestCase(stdin="10 -4\n", reference_stdout="6\n"),
        ),
        limits=FAST,
    )

    def variant(self, body: str) -> CodeSample:
        return CodeSample(
            sample_id="sum/v", task_id="sum", body=body, origin="evolved:I", lineage="sum/seed"
        )

    def test_identical_variant_is_equivalent(self):
        verdict = f_exec(self.source, self.variant(SUM_PY), self.suite, "python_family")
        assert verdict.value == "equivalent"
        assert all(case.matched for case in verdict.cases)

    def test_clean_but_wrong_output_is_divergent(self):
        verdict = f_exec(self.source, self.variant("print(999)\n"), self.suite, "python_family")
        assert verdict.value == "divergent"

    def test_failing_case_is_invalid(self):
        body = (
            "import sys\n"
            "data = sys.stdin.read().split()\n"
            "if '-4' in data:\n"
            "    raise RuntimeError('no negatives')\n"
            "print(sum(int(x) for x in data))\n"
        )
        verdict = f_exec(self.source, self.variant(body), self.suite, "python_family")
        assert verdict.value == "invalid"

    def test_trailing_whitespace_differences_are_normalized(self):
        body = SUM_PY.replace("print(sum(values))", "print(str(sum(values)) + '  ')")
        verdict = f_exec(self.source, self.variant(body), self.suite, "python_family")
        assert verdict.value == "equivalent"

    def test_wrong_task_suite_is_rejected(self):
        other = CodeSample(sample_id="x", task_id="other", body="print(1)")
        with pytest.raises(DataError, match="belongs to task"):
            f_exec(other, self.variant(SUM_PY), self.suite, "python_family")

    def test_verdicts_are_repeatable(self):
        first = f_exec(self.source, self.variant(SUM_PY), self.suite, "python_family")
        second = f_exec(self.source, self.variant(SUM_PY), self.suite, "python_family")
        assert first.value == second.value == "equivalent"
