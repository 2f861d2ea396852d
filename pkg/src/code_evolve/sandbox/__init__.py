"""Isolated program execution and the execution-based semantic filter."""

from .runner import (
    ExecutionLimits,
    ExecutionOutcome,
    Toolchain,
    default_toolchains,
    load_toolchain_config,
    run_program,
)
from .suite import TestCase, TestSuite, generate_test_suite, load_suites, save_suites
from .verdict import SemVerdict, f_exec, normalize_output

__all__ = [
    "ExecutionLimits",
    "ExecutionOutcome",
    "Toolchain",
    "default_toolchains",
    "load_toolchain_config",
    "run_program",
    "TestCase",
    "TestSuite",
    "generate_test_suite",
    "load_suites",
    "save_suites",
    "SemVerdict",
    "f_exec",
    "normalize_output",
]
