"""Label frequency tables over MISC keys, with golden-file comparison."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from typing import Dict, Iterable, List, Optional

from .conllu import Sentence, misc_attr

__all__ = [
    "FreqTable", "DiffEntry", "GoldenMismatch",
    "count_labels", "compare_with_golden", "render_table", "render_diff",
    "read_golden", "published_counts",
]

FORMATS = ("tsv", "json", "markdown")


@dataclass
class FreqTable:
    counts: Dict[str, int] = field(default_factory=dict)
    key: str = ""
    corpus: Optional[str] = None

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def items(self) -> List[tuple]:
        """(label, count) pairs, most frequent first, ties alphabetical."""
        return sorted(self.counts.items(), key=lambda kv: (-kv[1], kv[0]))

    def __getitem__(self, label: str) -> int:
        return self.counts.get(label, 0)

    def to_golden(self) -> str:
        return "".join(f"{label}\t{n}\n" for label, n in self.items())

    @classmethod
    def from_json(cls, text: str) -> "FreqTable":
        data = json.loads(text)
        return cls(dict(data["counts"]), data["key"], data.get("corpus"))


@dataclass(frozen=True)
class DiffEntry:
    label: str
    expected: int
    actual: int

    @property
    def delta(self) -> int:
        return self.actual - self.expected


class GoldenMismatch(AssertionError):
    def __init__(self, diff: List[DiffEntry]):
        self.diff = diff
        shown = ", ".join(f"{d.label}: {d.expected} -> {d.actual}" for d in diff[:5])
        more = f" (+{len(diff) - 5} more)" if len(diff) > 5 else ""
        super().__init__(f"{len(diff)} labels differ from golden: {shown}{more}")


def count_labels(sentences: Iterable[Sentence], key: str, corpus: Optional[str] = None) -> FreqTable:
    """Count exact values of MISC ``key`` over word and empty nodes."""
    counts: Counter = Counter()
    for sent in sentences:
        for tok in sent.nodes:
            value = misc_attr(tok, key)
            if value is not None:
                counts[value] += 1
    return FreqTable(dict(counts), key, corpus)


def compare_with_golden(table: FreqTable, golden: FreqTable, mode: str = "assert") -> List[DiffEntry]:
    """Per-label differences between ``table`` and ``golden``.

    ``assert`` mode raises :class:`GoldenMismatch` on any difference;
    ``report`` mode only returns the list.
    """
    if mode not in ("assert", "report"):
        raise ValueError(f"mode must be 'assert' or 'report', not {mode!r}")
    if golden.key and table.key and golden.key != table.key:
        raise ValueError(f"key mismatch: table counts {table.key!r}, golden counts {golden.key!r}")
    order = [label for label, _ in golden.items()]
    order += [label for label, _ in table.items() if label not in golden.counts]
    diff = [DiffEntry(label, golden[label], table[label]) for label in order
            if golden[label] != table[label]]
    if diff and mode == "assert":
        raise GoldenMismatch(diff)
    return diff


def render_table(table: FreqTable, fmt: str = "tsv") -> str:
    rows = table.items()
    if fmt == "tsv":
        return "label\tcount\n" + "".join(f"{label}\t{n}\n" for label, n in rows)
    if fmt == "json":
        return json.dumps({"key": table.key, "corpus": table.corpus, "total": table.total,
                           "counts": dict(rows)}, indent=2, ensure_ascii=False) + "\n"
    if fmt == "markdown":
        lines = ["| Label | Count |", "|---|---:|"]
        lines += [f"| {label} | {n:,} |" for label, n in rows]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def render_diff(diff: List[DiffEntry]) -> str:
    return "label\texpected\tactual\tdelta\n" + "".join(
        f"{d.label}\t{d.expected}\t{d.actual}\t{d.delta:+d}\n" for d in diff)


def read_golden(text: str, key: str = "", corpus: Optional[str] = None) -> FreqTable:
    """Parse ``label<TAB>count`` lines; a ``label<TAB>count`` header is skipped."""
    counts: Dict[str, int] = {}
    for n, line in enumerate(text.splitlines(), 1):
        if not line or line.startswith("#") or line == "label\tcount":
            continue
        label, sep, count = line.rpartition("\t")
        if not sep:
            raise ValueError(f"golden line {n}: expected label<TAB>count")
        try:
            counts[label] = int(count.replace(",", ""))
        except ValueError:
            raise ValueError(f"golden line {n}: bad count {count!r}") from None
    return FreqTable(counts, key, corpus)


def published_counts(name: str, key: str = "") -> FreqTable:
    """Published corpus counts bundled with the package.

    ``name`` is one of ``pdt_czech``, ``pcedt_english`` (functors) or
    ``ancora_spanish``, ``ancora_catalan`` (thematic roles, empty role as ``_``).
    """
    text = resources.files("relabel").joinpath("data", f"{name}.tsv").read_text(encoding="utf-8")
    return read_golden(text, key, corpus=name)
