"""The unified deep-syntactic label set: 14 main labels, optional subcategories.

Labels are written ``MAIN`` or ``MAIN:subcategory``.  Main labels are a
closed set; the subcategories allowed under each main label live in a
:class:`Registry`, which callers may extend but never shrink below the
main-label set.
"""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple

__all__ = [
    "MainLabel", "UnifiedLabel", "Registry", "DEFAULT_REGISTRY",
    "LabelError", "UnknownMain", "UnknownSubcat",
    "parse_label", "format_label", "subsumes",
]


class MainLabel(str, Enum):
    ACT = "ACT"
    ADDR = "ADDR"
    EFF = "EFF"
    ORIG = "ORIG"
    PAT = "PAT"
    MANR = "MANR"
    LOC = "LOC"
    CAUSE = "CAUSE"
    TIME = "TIME"
    BINDER = "BINDER"
    IND = "IND"
    PCOMPL = "PCOMPL"
    ADNOM = "ADNOM"
    MISCLL = "MISCLL"

    def __str__(self) -> str:
        return self.value


class LabelError(ValueError):
    pass


class UnknownMain(LabelError):
    pass


class UnknownSubcat(LabelError):
    pass


_SUBCAT_RE = re.compile(r"^[a-z][a-z0-9]*$")

PUBLISHED = "published"
EXTENSION = "extension"

# Ordered as published; every entry has provenance "published".
_PUBLISHED_SUBCATS: Dict[MainLabel, Tuple[str, ...]] = {
    MainLabel.ACT: ("agt", "cau", "exp"),
    MainLabel.ADDR: (),
    MainLabel.EFF: (),
    MainLabel.ORIG: ("src",),
    MainLabel.PAT: ("theme", "atr"),
    MainLabel.MANR: ("acmp", "cpr", "crit", "diff", "ext", "mann", "means",
                     "reg", "resl", "restr", "ben", "contrd", "her", "subs"),
    MainLabel.LOC: ("dir1", "dir2", "dir3", "where", "ori"),
    MainLabel.CAUSE: ("aim", "caus", "cncs", "cond", "intt"),
    MainLabel.TIME: ("fhl", "frwh", "hl", "ho", "owh", "par", "sin", "till", "when"),
    MainLabel.BINDER: ("adv", "apps", "confr", "conj", "contra", "csq", "disj",
                       "grad", "oper", "reas"),
    MainLabel.IND: ("denom", "par", "partl", "pred", "vocat"),
    MainLabel.PCOMPL: ("compl", "efi", "ein"),
    MainLabel.ADNOM: ("auth", "id", "mat", "restr"),
    MainLabel.MISCLL: ("att", "cm", "cphr", "dphr", "fphr", "intf", "mod",
                       "prec", "rhem"),
}

# APP (appurtenance) needs an adnominal target of its own.
_EXTENSIONS = ((MainLabel.ADNOM, "app"),)


def _main(name) -> MainLabel:
    if isinstance(name, MainLabel):
        return name
    try:
        return MainLabel(str(name).upper())
    except ValueError:
        raise UnknownMain(f"unknown main label: {name!r}") from None


@dataclass(frozen=True)
class UnifiedLabel:
    main: MainLabel
    subcat: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "main", _main(self.main))
        if self.subcat is not None and not _SUBCAT_RE.match(self.subcat):
            raise LabelError(f"malformed subcategory: {self.subcat!r}")

    def __str__(self) -> str:
        return format_label(self)

    @property
    def bare(self) -> "UnifiedLabel":
        return UnifiedLabel(self.main)


class Registry:
    """Allowed (main, subcategory) pairs with a provenance tag per pair.

    Immutable: :meth:`extend` and :meth:`restrict` return new registries.
    """

    def __init__(self, entries: Mapping[MainLabel, Iterable[Tuple[str, str]]]):
        table: Dict[MainLabel, Dict[str, str]] = {m: {} for m in MainLabel}
        for main, pairs in entries.items():
            main = _main(main)
            for subcat, provenance in pairs:
                if not _SUBCAT_RE.match(subcat):
                    raise LabelError(f"malformed subcategory: {subcat!r}")
                table[main][subcat] = provenance
        self._table = table

    @classmethod
    def default(cls, strict: bool = False) -> "Registry":
        """The published label set; ``strict`` leaves out extension entries."""
        entries = {m: [(s, PUBLISHED) for s in subs] for m, subs in _PUBLISHED_SUBCATS.items()}
        if not strict:
            for main, subcat in _EXTENSIONS:
                entries[main].append((subcat, EXTENSION))
        return cls(entries)

    def extend(self, main, subcat: str, provenance: str = EXTENSION) -> "Registry":
        entries = {m: list(d.items()) for m, d in self._table.items()}
        entries[_main(main)].append((subcat.lower(), provenance))
        return Registry(entries)

    def restrict(self, provenance: str = PUBLISHED) -> "Registry":
        return Registry({m: [(s, p) for s, p in d.items() if p == provenance]
                         for m, d in self._table.items()})

    def subcats(self, main) -> Tuple[str, ...]:
        return tuple(self._table[_main(main)])

    def provenance(self, main, subcat: str) -> str:
        try:
            return self._table[_main(main)][subcat]
        except KeyError:
            raise UnknownSubcat(f"{_main(main).value}:{subcat}") from None

    def __contains__(self, label) -> bool:
        if not isinstance(label, UnifiedLabel):
            return False
        return label.subcat is None or label.subcat in self._table[label.main]

    def __iter__(self) -> Iterator[UnifiedLabel]:
        """Every valid label: each bare main label followed by its subcategories."""
        for main, subs in self._table.items():
            yield UnifiedLabel(main)
            for s in subs:
                yield UnifiedLabel(main, s)

    def __eq__(self, other) -> bool:
        return isinstance(other, Registry) and self._table == other._table

    def count(self, provenance: Optional[str] = None) -> int:
        return sum(1 for d in self._table.values() for p in d.values()
                   if provenance is None or p == provenance)

    def to_json(self) -> str:
        return json.dumps({m.value: list(d) for m, d in self._table.items()},
                          indent=2, ensure_ascii=False) + "\n"

    def to_tsv(self) -> str:
        buf = io.StringIO()
        buf.write("main\tsubcat\tprovenance\n")
        for main, subs in self._table.items():
            for s, p in subs.items():
                buf.write(f"{main.value}\t{s}\t{p}\n")
        return buf.getvalue()

    @classmethod
    def from_tsv(cls, text: str) -> "Registry":
        entries: Dict[MainLabel, list] = {m: [] for m in MainLabel}
        rows = csv.reader(io.StringIO(text), delimiter="\t")
        for n, row in enumerate(rows, 1):
            if not row or row[0].startswith("#") or row[:2] == ["main", "subcat"]:
                continue
            if len(row) not in (2, 3):
                raise LabelError(f"registry row {n}: expected 2 or 3 columns")
            provenance = row[2] if len(row) == 3 else EXTENSION
            entries[_main(row[0])].append((row[1], provenance))
        return cls(entries)

    def merged(self, other: "Registry") -> "Registry":
        entries = {m: list(d.items()) for m, d in self._table.items()}
        for m, d in other._table.items():
            for s, p in d.items():
                if s not in self._table[m]:
                    entries[m].append((s, p))
        return Registry(entries)


DEFAULT_REGISTRY = Registry.default()


def parse_label(text: str, registry: Registry = DEFAULT_REGISTRY) -> UnifiedLabel:
    """Parse ``MAIN`` or ``MAIN:subcat``, normalizing case.

    >>> parse_label("PAT:theme")
    UnifiedLabel(main=<MainLabel.PAT: 'PAT'>, subcat='theme')
    """
    if not text:
        raise LabelError("empty label")
    main_text, sep, subcat = text.partition(":")
    main = _main(main_text)
    if not sep:
        return UnifiedLabel(main)
    subcat = subcat.lower()
    if subcat not in registry.subcats(main):
        raise UnknownSubcat(f"{main.value}:{subcat} is not a registered label")
    return UnifiedLabel(main, subcat)


def format_label(label: UnifiedLabel) -> str:
    if label.subcat is None:
        return label.main.value
    return f"{label.main.value}:{label.subcat}"


def subsumes(general: UnifiedLabel, specific: UnifiedLabel) -> bool:
    """True if ``general`` is ``specific`` or its bare main label."""
    return general.main == specific.main and (
        general.subcat is None or general.subcat == specific.subcat)
