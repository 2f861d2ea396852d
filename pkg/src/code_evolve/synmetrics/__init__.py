"""Structural code similarity: tokenizer, parsers, CodeBLEU, and threshold calibration."""

from .grammar import Grammar, get_grammar, register_grammar, load_grammar_descriptor, DEFAULT_THETA
from .tokens import Token, TokenSequence, tokenize, LexError
from .syntax import SyntaxNode, parse, ParseError
from .dataflow import DataflowGraph, extract_dataflow
from .codebleu import (
    CodeBleuScore,
    ast_match,
    codebleu,
    dataflow_match,
    f_syn,
    ngram_match,
    weighted_ngram_match,
)
from .calibrate import calibrate_theta

__all__ = [
    "Grammar",
    "get_grammar",
    "register_grammar",
    "load_grammar_descriptor",
    "DEFAULT_THETA",
    "Token",
    "TokenSequence",
    "tokenize",
    "LexError",
    "SyntaxNode",
    "parse",
    "ParseError",
    "DataflowGraph",
    "extract_dataflow",
    "CodeBleuScore",
    "ast_match",
    "codebleu",
    "dataflow_match",
    "f_syn",
    "ngram_match",
    "weighted_ngram_match",
    "calibrate_theta",
]
