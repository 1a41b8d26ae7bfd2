"""FGD functors and their injective mapping onto unified labels."""

from __future__ import annotations

import csv
import io
import json
import re
from typing import Dict, Mapping, Optional, Tuple

from .policy import (PASSTHROUGH, UNMAPPED, MappingError, Mapped, Passthrough,
                     Policy, Resolution, as_policy)
from .taxonomy import (DEFAULT_REGISTRY, LabelError, MainLabel, Registry,
                       UnifiedLabel, format_label, parse_label)

__all__ = [
    "FUNCTORS", "PCEDT_EXTRAS", "GROUP_MAIN", "FgdTable", "DEFAULT_FGD_TABLE",
    "UnmappedFunctor", "NoFgdSource", "InvalidFunctor", "TableError",
    "map_functor", "inverse_functor",
]

# code -> (group, gloss), in the order the tectogrammatical manual lists them
FUNCTORS: Dict[str, Tuple[str, str]] = {
    "ACT": ("argument", "actor"),
    "ADDR": ("argument", "addressee"),
    "EFF": ("argument", "effect"),
    "ORIG": ("argument", "origo"),
    "PAT": ("argument", "patient"),
    "DENOM": ("independent", "independent nominal"),
    "PAR": ("independent", "parenthetic clause"),
    "PARTL": ("independent", "independent interjection"),
    "PRED": ("independent", "independent verbal clause"),
    "VOCAT": ("independent", "independent vocative"),
    "TFHL": ("temporal", "for how long"),
    "TFRWH": ("temporal", "from when"),
    "THL": ("temporal", "(after) how long"),
    "THO": ("temporal", "how often"),
    "TOWH": ("temporal", "to when"),
    "TPAR": ("temporal", "in parallel with what"),
    "TSIN": ("temporal", "since when"),
    "TTILL": ("temporal", "until when"),
    "TWHEN": ("temporal", "when"),
    "DIR1": ("locative", "where from"),
    "DIR2": ("locative", "which way"),
    "DIR3": ("locative", "where to"),
    "LOC": ("locative", "where"),
    "AIM": ("causal", "purpose"),
    "CAUS": ("causal", "cause"),
    "CNCS": ("causal", "concession"),
    "COND": ("causal", "condition"),
    "INTT": ("causal", "intention"),
    "ACMP": ("manner", "accompaniment"),
    "CPR": ("manner", "comparison"),
    "CRIT": ("manner", "criterion"),
    "DIFF": ("manner", "difference"),
    "EXT": ("manner", "extent"),
    "MANN": ("manner", "manner"),
    "MEANS": ("manner", "means"),
    "REG": ("manner", "with regard to"),
    "RESL": ("manner", "result"),
    "RESTR": ("manner", "exception, restriction"),
    "COMPL": ("predicative", "predicative complement"),
    "CM": ("conjunction_modifier", "conjunction modifier"),
    "BEN": ("specific", "benefactor"),
    "CONTRD": ("specific", "confrontation"),
    "HER": ("specific", "inheritance"),
    "SUBS": ("specific", "substitution"),
    "APP": ("adnominal", "appurtenance"),
    "AUTH": ("adnominal", "author"),
    "ID": ("adnominal", "identity"),
    "MAT": ("adnominal", "content"),
    "RSTR": ("adnominal", "modification"),
    "ATT": ("rhematizer", "speaker's attitude"),
    "INTF": ("rhematizer", "expletive subject"),
    "MOD": ("rhematizer", "some modal expressions"),
    "PREC": ("rhematizer", "preceding context"),
    "RHEM": ("rhematizer", "rhematizer"),
    "CPHR": ("multiword", "nominal part of complex predicate"),
    "DPHR": ("multiword", "dependent part of idiom"),
    "FPHR": ("multiword", "part of foreign expression"),
    "ADVS": ("paratactic", "adversative"),
    "APPS": ("paratactic", "apposition"),
    "CONFR": ("paratactic", "confrontation"),
    "CONJ": ("paratactic", "conjunction"),
    "CONTRA": ("paratactic", "conflict"),
    "CSQ": ("paratactic", "consequence"),
    "DISJ": ("paratactic", "disjunction"),
    "GRAD": ("paratactic", "gradation"),
    "OPER": ("paratactic", "math operation"),
    "REAS": ("paratactic", "cause"),
}

# Seen in the English Prague data but not in the annotation guidelines.
PCEDT_EXTRAS: Dict[str, str] = {
    "NE": "named entity",
    "DESCR": "adnominal description",
    "SM": "",
}

GROUP_MAIN: Dict[str, Optional[MainLabel]] = {
    "argument": None,  # each argument functor keeps its own main label
    "independent": MainLabel.IND,
    "temporal": MainLabel.TIME,
    "locative": MainLabel.LOC,
    "causal": MainLabel.CAUSE,
    "manner": MainLabel.MANR,
    "specific": MainLabel.MANR,
    "predicative": MainLabel.PCOMPL,
    "adnominal": MainLabel.ADNOM,
    "rhematizer": MainLabel.MISCLL,
    "multiword": MainLabel.MISCLL,
    "conjunction_modifier": MainLabel.MISCLL,
    "paratactic": MainLabel.BINDER,
}

_DEFAULT_ROWS = """\
ACT	ACT	published
ADDR	ADDR	published
EFF	EFF	published
ORIG	ORIG	published
PAT	PAT	published
DENOM	IND:denom	published
PAR	IND:par	published
PARTL	IND:partl	published
PRED	IND:pred	published
VOCAT	IND:vocat	published
TFHL	TIME:fhl	published
TFRWH	TIME:frwh	published
THL	TIME:hl	published
THO	TIME:ho	published
TOWH	TIME:owh	published
TPAR	TIME:par	published
TSIN	TIME:sin	published
TTILL	TIME:till	published
TWHEN	TIME:when	published
DIR1	LOC:dir1	published
DIR2	LOC:dir2	published
DIR3	LOC:dir3	published
LOC	LOC:where	published
AIM	CAUSE:aim	published
CAUS	CAUSE:caus	published
CNCS	CAUSE:cncs	published
COND	CAUSE:cond	published
INTT	CAUSE:intt	published
ACMP	MANR:acmp	published
CPR	MANR:cpr	published
CRIT	MANR:crit	published
DIFF	MANR:diff	published
EXT	MANR:ext	published
MANN	MANR:mann	published
MEANS	MANR:means	published
REG	MANR:reg	published
RESL	MANR:resl	published
RESTR	MANR:restr	published
COMPL	PCOMPL:compl	published
CM	MISCLL:cm	published
BEN	MANR:ben	published
CONTRD	MANR:contrd	published
HER	MANR:her	published
SUBS	MANR:subs	published
APP	ADNOM:app	extension
AUTH	ADNOM:auth	published
ID	ADNOM:id	published
MAT	ADNOM:mat	published
RSTR	ADNOM:restr	published
ATT	MISCLL:att	published
INTF	MISCLL:intf	published
MOD	MISCLL:mod	published
PREC	MISCLL:prec	published
RHEM	MISCLL:rhem	published
CPHR	MISCLL:cphr	published
DPHR	MISCLL:dphr	published
FPHR	MISCLL:fphr	published
ADVS	BINDER:adv	published
APPS	BINDER:apps	published
CONFR	BINDER:confr	published
CONJ	BINDER:conj	published
CONTRA	BINDER:contra	published
CSQ	BINDER:csq	published
DISJ	BINDER:disj	published
GRAD	BINDER:grad	published
OPER	BINDER:oper	published
REAS	BINDER:reas	published
NE	_	pcedt-extra
DESCR	_	pcedt-extra
SM	_	pcedt-extra
"""

_FUNCTOR_RE = re.compile(r"^[A-Z][A-Z0-9]*$")


class UnmappedFunctor(MappingError):
    pass


class NoFgdSource(MappingError):
    pass


class InvalidFunctor(ValueError):
    pass


class TableError(ValueError):
    pass


def _check_code(code: str) -> str:
    if not isinstance(code, str) or not _FUNCTOR_RE.match(code):
        raise InvalidFunctor(f"not a functor code: {code!r}")
    return code


def _read_rows(text: str, registry: Registry, default_provenance: str):
    rows = []
    for n, row in enumerate(csv.reader(io.StringIO(text), delimiter="\t"), 1):
        if not row or row[0].startswith("#") or row[0] == "functor":
            continue
        if len(row) not in (2, 3):
            raise TableError(f"functor table row {n}: expected 2 or 3 columns, got {len(row)}")
        code = _check_code(row[0])
        try:
            label = None if row[1] == "_" else parse_label(row[1], registry)
        except LabelError as exc:
            raise TableError(f"functor table row {n}: {exc}") from None
        rows.append((code, label, row[2] if len(row) == 3 else default_provenance))
    return rows


class FgdTable:
    """Functor -> unified label table, checked for totality and injectivity."""

    def __init__(self, rows, registry: Registry = DEFAULT_REGISTRY, total: bool = True):
        self.registry = registry
        self._labels: Dict[str, Optional[UnifiedLabel]] = {}
        self._provenance: Dict[str, str] = {}
        for code, label, provenance in rows:
            self._labels[_check_code(code)] = label
            self._provenance[code] = provenance
        missing = [f for f in FUNCTORS if self._labels.get(f) is None]
        if missing and total:
            raise TableError(f"core functors without a mapping: {', '.join(missing)}")
        self._total = total
        self._inverse: Dict[UnifiedLabel, str] = {}
        for code, label in self._labels.items():
            if label is None:
                continue
            if label not in registry:
                raise TableError(f"{code}: target {label} not in the label registry")
            if label in self._inverse:
                raise TableError(f"{code} and {self._inverse[label]} both map to {label}")
            self._inverse[label] = code

    @classmethod
    def default(cls, registry: Registry = DEFAULT_REGISTRY) -> "FgdTable":
        """The published table.

        Under a registry without extensions (``Registry.default(strict=True)``)
        rows with extension targets are left unmapped rather than rejected.
        """
        full = _read_rows(_DEFAULT_ROWS, DEFAULT_REGISTRY, "published")
        rows = [(c, l, p) if l is None or l in registry else (c, None, "rejected")
                for c, l, p in full]
        total = all(p != "rejected" for _, _, p in rows)
        return cls(rows, registry, total=total)

    def with_overrides(self, tsv_text: str) -> "FgdTable":
        """Replace rows from ``functor<TAB>label[<TAB>provenance]`` lines."""
        rows = {c: (c, self._labels[c], self._provenance[c]) for c in self._labels}
        for code, label, provenance in _read_rows(tsv_text, self.registry, "override"):
            rows[code] = (code, label, provenance)
        return FgdTable(rows.values(), self.registry, total=self._total)

    @property
    def codes(self) -> Tuple[str, ...]:
        return tuple(self._labels)

    def label(self, code: str) -> Optional[UnifiedLabel]:
        return self._labels.get(code)

    def provenance(self, code: str) -> Optional[str]:
        return self._provenance.get(code)

    def image(self) -> frozenset:
        return frozenset(self._inverse)

    def resolve(self, code: str, policy=Policy.STRICT) -> Resolution:
        policy = as_policy(policy)
        label = self._labels.get(_check_code(code))
        if label is not None:
            return Resolution(label)
        if policy is Policy.STRICT:
            known = "registered but unmapped" if code in self._labels else "unknown"
            raise UnmappedFunctor(f"functor {code} is {known}")
        if policy is Policy.PASSTHROUGH:
            return Resolution(Passthrough(code), PASSTHROUGH)
        return Resolution(UnifiedLabel(MainLabel.MISCLL), UNMAPPED)

    def inverse(self, label: UnifiedLabel) -> str:
        try:
            return self._inverse[label]
        except KeyError:
            raise NoFgdSource(f"no functor maps to {label}") from None

    def to_tsv(self) -> str:
        lines = ["functor\tunified_label\tprovenance"]
        for code, label in self._labels.items():
            target = "_" if label is None else format_label(label)
            lines.append(f"{code}\t{target}\t{self._provenance[code]}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        rows = [{"functor": c,
                 "unified_label": None if l is None else format_label(l),
                 "provenance": self._provenance[c]}
                for c, l in self._labels.items()]
        return json.dumps(rows, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str, registry: Registry = DEFAULT_REGISTRY) -> "FgdTable":
        rows = []
        for row in json.loads(text):
            label = row["unified_label"]
            rows.append((row["functor"],
                         None if label is None else parse_label(label, registry),
                         row.get("provenance", "override")))
        return cls(rows, registry)


DEFAULT_FGD_TABLE = FgdTable.default()


def map_functor(code: str, policy=Policy.STRICT, table: Optional[FgdTable] = None) -> Mapped:
    """Map a functor code to its unified label.

    >>> str(map_functor("TWHEN"))
    'TIME:when'
    """
    return (table or DEFAULT_FGD_TABLE).resolve(code, policy).value


def inverse_functor(label: UnifiedLabel, table: Optional[FgdTable] = None) -> str:
    return (table or DEFAULT_FGD_TABLE).inverse(label)
