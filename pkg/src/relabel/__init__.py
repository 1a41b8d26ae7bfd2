"""Harmonize deep-syntactic relation labels in CoNLL-U treebanks.

Maps Prague-style functors and AnCora thematic roles onto one hierarchical
label set, checks enhanced dependency graphs, and counts label frequencies.
"""

from .ancora import AncoraTable, inverse_role, map_role, parse_role_annotation
from .conllu import (Document, NodeId, Sentence, Token, iter_sentences, parse_document,
                     read_document, serialize_document)
from .convert import ConvertConfig, ConvertReport, convert_document, roundtrip_check
from .fgd import FgdTable, inverse_functor, map_functor
from .graph import build_graph, detect_cycles, validate_document, validate_sentence
from .policy import Policy
from .report import Finding, ValidationReport
from .stats import FreqTable, compare_with_golden, count_labels, render_table
from .taxonomy import DEFAULT_REGISTRY, MainLabel, Registry, UnifiedLabel, parse_label

__version__ = "0.1.0"

__all__ = [
    "AncoraTable", "inverse_role", "map_role", "parse_role_annotation",
    "Document", "NodeId", "Sentence", "Token", "iter_sentences", "parse_document",
    "read_document", "serialize_document",
    "ConvertConfig", "ConvertReport", "convert_document", "roundtrip_check",
    "FgdTable", "inverse_functor", "map_functor",
    "build_graph", "detect_cycles", "validate_document", "validate_sentence",
    "Policy", "Finding", "ValidationReport",
    "FreqTable", "compare_with_golden", "count_labels", "render_table",
    "DEFAULT_REGISTRY", "MainLabel", "Registry", "UnifiedLabel", "parse_label",
]
