from __future__ import annotations

from collections import Counter
from pathlib import Path

import pytest

from code_evolve.corpus.model import CodeSample, Task
from code_evolve.errors import ConfigError, DataError
from code_evolve.llm.templates import (
    PromptTemplate,
    load_templates,
    render_prompt,
    sample_type3_instruction,
)

GOLDEN_DIR = Path(__file__).parent / "goldens"
SHIPPED_DIR = Path(__file__).parents[1] / "src" / "code_evolve" / "llm" / "templates"

TASK = Task(task_id="t", description="Print the sum of two integers.", corpus_language="c_family")
SAMPLE = CodeSample(
    sample_id="t/seed", task_id="t", body="int main() { int a, b; return 0; }"
)


def golden_files():
    return sorted(p.relative_to(GOLDEN_DIR) for p in GOLDEN_DIR.rglob("*.txt"))


@pytest.mark.parametrize("relative", golden_files(), ids=str)
def test_shipped_templates_byte_identical_to_goldens(relative):
    assert (SHIPPED_DIR / relative).read_bytes() == (GOLDEN_DIR / relative).read_bytes()


def test_instruction_texts_use_crlf_markers():
    text = (SHIPPED_DIR / "I.txt").read_bytes().decode("utf-8")
    assert "I want you act as a Code Rewriter.\r\n" in text
    assert "series of random code perturbations" in text


def test_template_set_loads_with_five_subinstructions():
    templates = load_templates()
    assert len(templates.type3_instructions) == 5
    assert templates.get("I").slots == ("source_code",)
    assert templates.get("II").slots == ("task_description",)
    assert set(templates.get("III").slots) == {"evolving_instruction", "source_code"}


def test_loading_rejects_incomplete_subinstruction_set(tmp_path):
    for name in ("I", "II", "III", "IV", "test_gen"):
        (tmp_path / f"{name}.txt").write_text("{source_code}")
    sub = tmp_path / "type3_sub"
    sub.mkdir()
    (sub / "1.txt").write_text("only one")
    with pytest.raises(ConfigError, match="exactly 5"):
        load_templates(tmp_path)


def test_direction_one_embeds_source_verbatim():
    prompt = render_prompt("I", SAMPLE, TASK)
    assert SAMPLE.body in prompt
    assert "series of random code perturbations" in prompt


def test_direction_two_embeds_task_description_not_source():
    prompt = render_prompt("II", SAMPLE, TASK)
    assert TASK.description in prompt
    assert SAMPLE.body not in prompt


@pytest.mark.parametrize("direction", ["III", "IV"])
def test_negative_directions_embed_source(direction):
    templates = load_templates()
    extra = templates.type3_instructions[1] if direction == "III" else None
    prompt = render_prompt(direction, SAMPLE, TASK, extra=extra, templates=templates)
    assert SAMPLE.body in prompt


def test_direction_three_carries_chosen_subinstruction():
    templates = load_templates()
    extra = templates.type3_instructions[1]
    prompt = render_prompt("III", SAMPLE, TASK, extra=extra, templates=templates)
    assert "Please add one more constraint/requirements." in prompt


def test_direction_three_without_instruction_errors():
    with pytest.raises(DataError, match="sub-instruction"):
        render_prompt("III", SAMPLE, TASK)


def test_direction_three_rejects_foreign_instruction():
    with pytest.raises(DataError, match="shipped"):
        render_prompt("III", SAMPLE, TASK, extra="do something else entirely")


def test_render_reports_missing_slot_values():
    template = PromptTemplate(direction="I", system_text="code: {source_code}")
    with pytest.raises(DataError, match="source_code"):
        template.render(task_description="x")


def test_sampler_deterministic_per_seed():
    templates = load_templates()
    assert sample_type3_instruction(123, templates) == sample_type3_instruction(123, templates)


def test_sampler_enumerates_all_five_for_consecutive_seeds():
    templates = load_templates()
    drawn = {sample_type3_instruction(seed, templates) for seed in range(5)}
    assert len(drawn) == 5


def test_sampler_uniform_over_ten_thousand_seeds():
    templates = load_templates()
    counts = Counter(sample_type3_instruction(seed, templates) for seed in range(10_000))
    # Binomial(10000, 1/5) has sigma = sqrt(10000 * 0.2 * 0.8) = 40; the
    # mod-5 scheme over consecutive seeds lands exactly on the mean.
    for count in counts.values():
        assert abs(count - 2000) <= 5 * 40


def test_alignment_instructions_present():
    templates = load_templates()
    assert templates.alignment_instructions["clone"] == "Given a code query, detect similar code clones."
    assert "functional consistency" in templates.alignment_instructions["consistency"]
    assert "retrieve relevant code snippets" in templates.alignment_instructions["retrieval"]
