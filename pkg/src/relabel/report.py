"""Findings produced by validation, conversion and round-trip checks."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional

from .conllu import NodeId

ERROR = "error"
WARNING = "warning"
INFO = "info"

_RANK = {INFO: 0, WARNING: 1, ERROR: 2}


@dataclass(frozen=True)
class Finding:
    severity: str
    code: str
    sentence: int  # 1-based position in the document
    node: Optional[NodeId] = None
    message: str = ""
    sent_id: Optional[str] = None

    def __post_init__(self):
        if self.severity not in _RANK:
            raise ValueError(f"unknown severity {self.severity!r}")

    def sort_key(self):
        node = (-1,) if self.node is None else self.node.sort_key()
        return (self.sentence, node, self.code)

    def render(self) -> str:
        sent = self.sent_id if self.sent_id is not None else str(self.sentence)
        node = "-" if self.node is None else str(self.node)
        return f"{self.severity.upper()} {self.code} sent={sent} node={node} {self.message}".rstrip()

    def as_dict(self) -> dict:
        return {
            "severity": self.severity,
            "code": self.code,
            "sentence": self.sentence,
            "sent_id": self.sent_id,
            "node": None if self.node is None else str(self.node),
            "message": self.message,
        }


@dataclass
class ValidationReport:
    findings: List[Finding] = field(default_factory=list)
    stats: Dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        self.findings = sorted(self.findings, key=Finding.sort_key)

    def extend(self, findings: Iterable[Finding]) -> None:
        self.findings = sorted([*self.findings, *findings], key=Finding.sort_key)

    def merge(self, other: "ValidationReport") -> "ValidationReport":
        stats = dict(self.stats)
        for k, v in other.stats.items():
            stats[k] = stats.get(k, 0) + v
        return ValidationReport(self.findings + other.findings, stats)

    @property
    def codes(self) -> List[str]:
        return [f.code for f in self.findings]

    def by_severity(self, severity: str) -> List[Finding]:
        return [f for f in self.findings if f.severity == severity]

    @property
    def errors(self) -> List[Finding]:
        return self.by_severity(ERROR)

    @property
    def worst(self) -> Optional[str]:
        if not self.findings:
            return None
        return max((f.severity for f in self.findings), key=_RANK.__getitem__)

    def __len__(self) -> int:
        return len(self.findings)

    def __bool__(self) -> bool:
        return True

    def to_text(self) -> str:
        return "".join(f.render() + "\n" for f in self.findings)

    def to_json(self) -> str:
        return json.dumps({"findings": [f.as_dict() for f in self.findings],
                           "stats": self.stats}, indent=2, ensure_ascii=False) + "\n"


def worst_severity(severities: Iterable[Optional[str]]) -> Optional[str]:
    present = [s for s in severities if s]
    return max(present, key=_RANK.__getitem__) if present else None
