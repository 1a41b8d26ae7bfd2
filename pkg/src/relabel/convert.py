"""Write unified labels into MISC and check that nothing was lost.

For each node carrying the source key (``Functor=TWHEN``), conversion adds
``DeepRel=TIME:when`` and, unless disabled, ``DeepRelSrc=fgd:TWHEN`` so the
original annotation stays recoverable.  All other columns are untouched.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, List, Optional, Tuple, Union

from .ancora import AncoraTable, RoleAnnotationError, parse_role_annotation
from .conllu import (Document, Sentence, Token, check_misc_key, misc_attr,
                     set_misc_attr)
from .fgd import FgdTable, InvalidFunctor
from .policy import (PASSTHROUGH_PREFIX, UNMAPPED, RESIDUAL_ROLE, MappingError,
                     Passthrough, Policy, Resolution, as_policy)
from .report import ERROR, INFO, WARNING, Finding, ValidationReport, worst_severity
from .taxonomy import DEFAULT_REGISTRY, LabelError, Registry, parse_label

__all__ = [
    "ConvertConfig", "ConvertReport", "ConversionError", "SRC_KEY",
    "convert_sentence", "convert_document", "iter_convert", "roundtrip_check",
]

SRC_KEY = "DeepRelSrc"
FRAMEWORKS = ("fgd", "ancora")
DEFAULT_SRC_KEYS = {"fgd": "Functor", "ancora": "ArgTem"}

_NOTE_SEVERITY = {RESIDUAL_ROLE: WARNING, UNMAPPED: WARNING, "PASSTHROUGH": WARNING}


class ConversionError(Exception):
    def __init__(self, message: str, sentence: int, node=None, sent_id=None):
        self.sentence = sentence
        self.node = node
        self.sent_id = sent_id
        where = f"sentence {sent_id or sentence}" + (f", node {node}" if node else "")
        super().__init__(f"{where}: {message}")


@dataclass
class ConvertConfig:
    framework: str = "fgd"
    src_key: Optional[str] = None
    dst_key: str = "DeepRel"
    keep_src: bool = True
    policy: Union[Policy, str] = Policy.FALLBACK
    override_table: Optional[Union[str, Path]] = None
    registry: Registry = field(default=DEFAULT_REGISTRY, repr=False)
    _table: object = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.framework not in FRAMEWORKS:
            raise ValueError(f"framework must be one of {FRAMEWORKS}, not {self.framework!r}")
        self.policy = as_policy(self.policy)
        if self.src_key is None:
            self.src_key = DEFAULT_SRC_KEYS[self.framework]
        for key in (self.src_key, self.dst_key):
            check_misc_key(key)
        if self.src_key == self.dst_key:
            raise ValueError("source and destination MISC keys must differ")
        if SRC_KEY in (self.src_key, self.dst_key):
            raise ValueError(f"{SRC_KEY} is reserved for the preserved source label")

    @property
    def table(self) -> Union[FgdTable, AncoraTable]:
        if self._table is None:
            cls = FgdTable if self.framework == "fgd" else AncoraTable
            table = cls.default(self.registry)
            if self.override_table:
                table = table.with_overrides(Path(self.override_table).read_text(encoding="utf-8"))
            self._table = table
        return self._table

    @property
    def other_src_key(self) -> str:
        other = "ancora" if self.framework == "fgd" else "fgd"
        return DEFAULT_SRC_KEYS[other]

    def resolve(self, raw: str, policy=None) -> Resolution:
        policy = self.policy if policy is None else policy
        if self.framework == "fgd":
            return self.table.resolve(raw, policy)
        return self.table.resolve(parse_role_annotation(raw), policy)


@dataclass
class ConvertReport:
    sentences: int = 0
    nodes_labeled: int = 0
    passthrough: int = 0
    label_counts: Counter = field(default_factory=Counter)
    diagnostics: List[Finding] = field(default_factory=list)

    def merge(self, other: "ConvertReport") -> "ConvertReport":
        return ConvertReport(
            self.sentences + other.sentences,
            self.nodes_labeled + other.nodes_labeled,
            self.passthrough + other.passthrough,
            self.label_counts + other.label_counts,
            self.diagnostics + other.diagnostics,
        )

    @property
    def worst(self) -> Optional[str]:
        return worst_severity(d.severity for d in self.diagnostics)

    def summary(self) -> str:
        return (f"{self.sentences} sentences, {self.nodes_labeled} nodes labeled, "
                f"{self.passthrough} passthrough, {len(self.diagnostics)} diagnostics")


def convert_sentence(sentence: Sentence, cfg: ConvertConfig, index: int = 1) -> Tuple[Sentence, ConvertReport]:
    report = ConvertReport(sentences=1)
    sid = sentence.sent_id
    tokens = []

    def note(severity, code, node, message):
        report.diagnostics.append(Finding(severity, code, index, node, message, sid))

    for tok in sentence.tokens:
        raw = None if tok.is_range else misc_attr(tok, cfg.src_key)
        if raw is None:
            tokens.append(tok)
            continue
        if misc_attr(tok, cfg.other_src_key) is not None and cfg.other_src_key != cfg.src_key:
            note(ERROR, "MIXED_SOURCE", tok.id,
                 f"node carries both {cfg.src_key} and {cfg.other_src_key}")
            tokens.append(tok)
            continue
        try:
            res = cfg.resolve(raw)
        except (InvalidFunctor, RoleAnnotationError) as exc:
            if cfg.policy is Policy.STRICT:
                raise ConversionError(str(exc), index, tok.id, sid) from None
            note(ERROR, "BAD_SOURCE", tok.id, str(exc))
            tokens.append(tok)
            continue
        except MappingError as exc:
            raise ConversionError(str(exc), index, tok.id, sid) from None
        if res.note:
            note(_NOTE_SEVERITY.get(res.note, WARNING), res.note, tok.id,
                 f"{cfg.framework}:{raw} -> {res.value}")
        value = str(res.value)
        old = misc_attr(tok, cfg.dst_key)
        if old is not None:
            note(INFO if old == value else WARNING, "OVERWROTE_DST", tok.id,
                 f"{cfg.dst_key} was {old!r}, now {value!r}")
        tok = set_misc_attr(tok, cfg.dst_key, value)
        if cfg.keep_src:
            tok = set_misc_attr(tok, SRC_KEY, f"{cfg.framework}:{raw}")
        tokens.append(tok)
        report.nodes_labeled += 1
        if isinstance(res.value, Passthrough):
            report.passthrough += 1
        else:
            report.label_counts[value] += 1
    return Sentence(tokens=tuple(tokens), comments=sentence.comments), report


def iter_convert(sentences: Iterable[Sentence], cfg: ConvertConfig,
                 jobs: int = 1, batch: int = 256) -> Iterator[Tuple[Sentence, ConvertReport]]:
    """Convert a stream of sentences, preserving input order.

    With ``jobs > 1`` sentences are handed to a thread pool in batches so that
    memory stays bounded on large corpora.
    """
    cfg.table  # load once, before any worker touches it
    if jobs <= 1:
        for i, s in enumerate(sentences, 1):
            yield convert_sentence(s, cfg, i)
        return
    from concurrent.futures import ThreadPoolExecutor
    from itertools import count, islice

    it = iter(sentences)
    numbering = count(1)
    with ThreadPoolExecutor(jobs) as pool:
        while True:
            chunk = list(islice(it, batch * jobs))
            if not chunk:
                break
            idx = [next(numbering) for _ in chunk]
            yield from pool.map(lambda s, i: convert_sentence(s, cfg, i), chunk, idx)


def convert_document(doc: Iterable[Sentence], cfg: ConvertConfig, jobs: int = 1) -> Tuple[Document, ConvertReport]:
    out = []
    report = ConvertReport()
    for sent, rep in iter_convert(doc, cfg, jobs):
        out.append(sent)
        report = report.merge(rep)
    return Document(tuple(out)), report


# ------------------------------------------------------------------ roundtrip

def _check_node(tok: Token, cfg: ConvertConfig, modes, index, sid, findings, stats):
    def add(severity, code, message):
        findings.append(Finding(severity, code, index, tok.id, message, sid))

    dst = misc_attr(tok, cfg.dst_key)
    src = misc_attr(tok, SRC_KEY)
    if src is None:
        add(ERROR, "MISSING_SRC", f"{cfg.dst_key}={dst} without {SRC_KEY}")
        for m in modes:
            stats[f"loss_{m}"] += 1
        return
    framework, _, raw = src.partition(":")
    if framework != cfg.framework:
        add(ERROR, "FRAMEWORK_MISMATCH", f"{SRC_KEY}={src} but checking {cfg.framework}")
        for m in modes:
            stats[f"loss_{m}"] += 1
        return

    if "A" in modes:
        stats["checked_A"] += 1
        try:
            expected = str(cfg.resolve(raw).value)
        except (MappingError, InvalidFunctor, RoleAnnotationError) as exc:
            expected = f"<{exc}>"
        if expected != dst:
            stats["loss_A"] += 1
            add(ERROR, "MISMATCH", f"{SRC_KEY}={src} maps to {expected}, found {cfg.dst_key}={dst}")

    if "B" in modes:
        try:
            forward = cfg.resolve(raw, Policy.FALLBACK)
        except (InvalidFunctor, RoleAnnotationError):
            forward = None
        if dst.startswith(PASSTHROUGH_PREFIX):
            stats["checked_B"] += 1
            if dst[len(PASSTHROUGH_PREFIX):] != raw:
                stats["loss_B"] += 1
                add(ERROR, "INVERSE_MISMATCH", f"{cfg.dst_key}={dst} does not restore {raw}")
            return
        if forward is None or forward.note in (RESIDUAL_ROLE, UNMAPPED):
            stats["skipped_B"] += 1
            add(INFO, "NOT_INVERTIBLE", f"{src} has no invertible mapping; kept verbatim in {SRC_KEY}")
            return
        stats["checked_B"] += 1
        try:
            label = parse_label(dst, cfg.table.registry)
            if cfg.framework == "fgd":
                ok = cfg.table.inverse(label) == raw
            else:
                role, cls = cfg.table.inverse(label)
                ctx = parse_role_annotation(raw)
                ok = role == ctx.role and cls in ("any", ctx.position_class)
        except (LabelError, MappingError):
            ok = False
        if not ok:
            stats["loss_B"] += 1
            add(ERROR, "INVERSE_MISMATCH", f"{cfg.dst_key}={dst} does not invert to {src}")


def roundtrip_check(doc: Iterable[Sentence], cfg: ConvertConfig, modes: str = "AB") -> ValidationReport:
    """Verify a converted document.

    Mode A re-maps each preserved source label and compares it with the
    stored unified label.  Mode B inverts the unified label alone and checks
    that it restores the source label (and, for AnCora, its position class).
    ``stats`` carries ``loss_A``/``loss_B`` counts; zero means lossless.
    """
    modes = "".join(m for m in "AB" if m in modes.upper())
    if not modes:
        raise ValueError("modes must contain A and/or B")
    findings: List[Finding] = []
    stats = Counter({f"{k}_{m}": 0 for m in modes for k in ("loss", "checked")})
    if "B" in modes:
        stats["skipped_B"] = 0
    for i, sent in enumerate(doc, 1):
        for tok in sent.nodes:
            if misc_attr(tok, cfg.dst_key) is not None:
                _check_node(tok, cfg, modes, i, sent.sent_id, findings, stats)
    return ValidationReport(findings, dict(stats))
