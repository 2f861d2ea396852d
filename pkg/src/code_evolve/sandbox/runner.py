"""Compile and run untrusted-ish programs in isolated scratch directories.

Each execution gets its own temporary working directory, a wall-clock
timeout, an address-space cap, and a stdout cap enforced while streaming (a
runaway printer is killed rather than buffered).  Toolchains are data: a
compile command template (optional) and a run command template with
``{src}``, ``{bin}``, and ``{stdin}`` placeholders.

This is process-level isolation for honest mistakes — infinite loops,
crashes, runaway output.  Defending against *adversarial* code requires
containers or jails around the whole pipeline and is a deployment concern.
"""

from __future__ import annotations

import json
import resource
import shlex
import subprocess
import sys
import tempfile
import threading
import time
from dataclasses import dataclass
from pathlib import Path

from ..errors import ConfigError

DEFAULT_TIMEOUT_SECONDS = 5.0
DEFAULT_MEMORY_BYTES = 256 * 1024 * 1024
DEFAULT_OUTPUT_CAP_BYTES = 1024 * 1024

STATUSES = ("ok", "compile_error", "runtime_error", "timeout", "output_overflow")


@dataclass(frozen=True)
class ExecutionLimits:
    timeout_seconds: float = DEFAULT_TIMEOUT_SECONDS
    memory_bytes: int = DEFAULT_MEMORY_BYTES
    output_cap_bytes: int = DEFAULT_OUTPUT_CAP_BYTES


@dataclass(frozen=True)
class ExecutionOutcome:
    status: str
    stdout: str
    duration_ms: float
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "ok"


@dataclass(frozen=True)
class Toolchain:
    language: str
    source_suffix: str
    run_cmd: str
    compile_cmd: str | None = None


def default_toolchains() -> dict[str, Toolchain]:
    python_bin = shlex.quote(sys.executable)
    return {
        "python_family": Toolchain(
            language="python_family", source_suffix=".py", run_cmd=f"{python_bin} {{src}}"
        ),
        "c_family": Toolchain(
            language="c_family",
            source_suffix=".cpp",
            compile_cmd="g++ -O1 -w -std=c++17 {src} -o {bin}",
            run_cmd="{bin}",
        ),
    }


_ALIASES = {"python": "python_family", "c": "c_family", "cpp": "c_family"}


def resolve_toolchain(language: str, toolchains: dict[str, Toolchain] | None = None) -> Toolchain:
    table = toolchains if toolchains is not None else default_toolchains()
    name = _ALIASES.get(language, language)
    try:
        return table[name]
    except KeyError:
        raise ConfigError(
            f"no toolchain configured for corpus_language {language!r} "
            f"(known: {sorted(table)})"
        ) from None


def load_toolchain_config(path: Path | str) -> dict[str, Toolchain]:
    """Read per-language toolchains from JSON: {"lang": {"source_suffix",
    "run_cmd", "compile_cmd"?}, ...}. Merged over the built-in defaults."""
    path = Path(path)
    try:
        config = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read toolchain config {path}: {exc}") from exc
    table = default_toolchains()
    for language, entry in config.items():
        if "run_cmd" not in entry:
            raise ConfigError(f"{path}: toolchain {language!r} missing run_cmd")
        table[language] = Toolchain(
            language=language,
            source_suffix=entry.get("source_suffix", ".txt"),
            run_cmd=entry["run_cmd"],
            compile_cmd=entry.get("compile_cmd"),
        )
    return table


class _CappedReader(threading.Thread):
    """Drain a pipe up to a byte cap; flag overflow instead of buffering."""

    def __init__(self, stream, cap: int):
        super().__init__(daemon=True)
        self.stream = stream
        self.cap = cap
        self.chunks: list[bytes] = []
        self.size = 0
        self.overflowed = False

    def run(self):
        try:
            while True:
                chunk = self.stream.read(65536)
                if not chunk:
                    return
                if self.size < self.cap:
                    self.chunks.append(chunk[: self.cap - self.size + 1])
                self.size += len(chunk)
                if self.size > self.cap:
                    self.overflowed = True
        except (OSError, ValueError):
            return

    def text(self) -> str:
        return b"".join(self.chunks).decode("utf-8", errors="replace")


def _limit_resources(memory_bytes: int):
    def apply():
        try:
            resource.setrlimit(resource.RLIMIT_AS, (memory_bytes, memory_bytes))
        except (ValueError, OSError):
            pass
        try:
            resource.setrlimit(resource.RLIMIT_CORE, (0, 0))
        except (ValueError, OSError):
            pass

    return apply


def _run_command(cmd: list[str], cwd: Path, stdin_bytes: bytes, limits: ExecutionLimits) -> tuple[str, str, float]:
    """Run one command; returns (status, stdout, duration_ms)."""
    start = time.monotonic()
    try:
        proc = subprocess.Popen(
            cmd,
            cwd=cwd,
            stdin=subprocess.PIPE,
            stdout=subprocess.PIPE,
            stderr=subprocess.DEVNULL,
            preexec_fn=_limit_resources(limits.memory_bytes),
        )
    except OSError as exc:
        return "runtime_error", "", (time.monotonic() - start) * 1000.0

    reader = _CappedReader(proc.stdout, limits.output_cap_bytes)
    reader.start()
    timed_out = False
    try:
        proc.stdin.write(stdin_bytes)
    except (BrokenPipeError, OSError):
        pass
    try:
        proc.stdin.close()
    except (BrokenPipeError, OSError):
        pass
    deadline = start + limits.timeout_seconds
    while True:
        if proc.poll() is not None:
            break
        if reader.overflowed:
            proc.kill()
            proc.wait()
            break
        if time.monotonic() > deadline:
            timed_out = True
            proc.kill()
            proc.wait()
            break
        time.sleep(0.005)
    reader.join(timeout=1.0)
    duration_ms = (time.monotonic() - start) * 1000.0

    if reader.overflowed:
        return "output_overflow", "", duration_ms
    if timed_out:
        return "timeout", "", duration_ms
    if proc.returncode != 0:
        return "runtime_error", reader.text(), duration_ms
    return "ok", reader.text(), duration_ms


def run_program(
    code: str,
    corpus_language: str,
    stdin: str = "",
    limits: ExecutionLimits | None = None,
    toolchains: dict[str, Toolchain] | None = None,
) -> ExecutionOutcome:
    """Compile (if the toolchain asks) and run ``code`` on ``stdin``."""
    limits = limits or ExecutionLimits()
    toolchain = resolve_toolchain(corpus_language, toolchains)

    with tempfile.TemporaryDirectory(prefix="code-evolve-run-") as scratch:
        scratch_path = Path(scratch)
        src = scratch_path / f"program{toolchain.source_suffix}"
        src.write_text(code, encoding="utf-8")
        binary = scratch_path / "program.bin"
        mapping = {"src": str(src), "bin": str(binary), "stdin": ""}

        if toolchain.compile_cmd:
            compile_cmd = [
                part.format_map(mapping) for part in shlex.split(toolchain.compile_cmd)
            ]
            try:
                compiled = subprocess.run(
                    compile_cmd,
                    cwd=scratch_path,
                    stdout=subprocess.DEVNULL,
                    stderr=subprocess.PIPE,
                    timeout=60,
                )
            except (subprocess.TimeoutExpired, OSError) as exc:
                return ExecutionOutcome("compile_error", "", 0.0, detail=str(exc))
            if compiled.returncode != 0:
                detail = compiled.stderr.decode("utf-8", errors="replace")[:2000]
                return ExecutionOutcome("compile_error", "", 0.0, detail=detail)

        stdin_bytes = stdin.encode("utf-8")
        stdin_file = scratch_path / "stdin.txt"
        if "{stdin}" in toolchain.run_cmd:
            stdin_file.write_bytes(stdin_bytes)
            mapping["stdin"] = str(stdin_file)
        run_cmd = [part.format_map(mapping) for part in shlex.split(toolchain.run_cmd)]
        status, stdout, duration_ms = _run_command(run_cmd, scratch_path, stdin_bytes, limits)
        # Interpreted toolchains surface parse failures as nonzero exits with
        # no output; classify those as compile errors for parity with
        # compiled languages.
        if (
            status == "runtime_error"
            and toolchain.compile_cmd is None
            and _is_syntax_failure(code, toolchain)
        ):
            return ExecutionOutcome("compile_error", "", duration_ms)
        return ExecutionOutcome(status, stdout if status in ("ok", "runtime_error") else "", duration_ms)


def _is_syntax_failure(code: str, toolchain: Toolchain) -> bool:
    if toolchain.source_suffix != ".py":
        return False
    try:
        compile(code, "<candidate>", "exec")
        return False
    except (SyntaxError, ValueError):
        return True
