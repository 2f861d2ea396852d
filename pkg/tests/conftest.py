from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from code_evolve.corpus.model import CodeSample, Corpus, Task

ECHO_PY = "import sys\nfor line in sys.stdin:\n    print(line.strip())\n"

SUM_PY = (
    "import sys\n"
    "values = [int(x) for x in sys.stdin.read().split()]\n"
    "print(sum(values))\n"
)

SUM_PY_RENAMED = (
    "import sys\n"
    "numbers = [int(token) for token in sys.stdin.read().split()]\n"
    "print(sum(numbers))\n"
)

SUM_PY_REWRITTEN = (
    "import sys\n"
    "\n"
    "def main():\n"
    "    total = 0\n"
    "    data = sys.stdin.read()\n"
    "    for token in data.split():\n"
    "        total = total + int(token)\n"
    "    sys.stdout.write(str(total) + '\\n')\n"
    "\n"
    "main()\n"
)

PRODUCT_PY = (
    "import sys\n"
    "result = 1\n"
    "entries = sys.stdin.read().split()\n"
    "for entry in entries:\n"
    "    result = result * int(entry)\n"
    "print(result)\n"
)

MAX_PY = (
    "import sys\n"
    "values = [int(x) for x in sys.stdin.read().split()]\n"
    "print(max(values))\n"
)


@pytest.fixture
def sum_task() -> Task:
    return Task(
        task_id="sum",
        description="Read whitespace-separated integers from stdin and print their sum.",
        corpus_language="python_family",
    )


@pytest.fixture
def sum_corpus(sum_task) -> Corpus:
    corpus = Corpus()
    corpus.add_task(sum_task)
    corpus.add_sample(CodeSample(sample_id="sum/seed.py", task_id="sum", body=SUM_PY))
    return corpus
