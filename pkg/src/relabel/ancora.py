"""AnCora thematic roles (with argument slots) mapped to unified labels.

A source annotation looks like ``arg0:agt`` or ``argM:tmp``; light-verb
complements carry an empty role, ``argL:``.  Most roles map the same way in
every slot; ``cau`` splits on argument vs adjunct position and ``tem`` is
only backed for ``arg1``.
"""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .policy import (PASSTHROUGH, RESIDUAL_ROLE, UNMAPPED, MappingError,
                     Mapped, Passthrough, Policy, Resolution, as_policy)
from .taxonomy import (DEFAULT_REGISTRY, LabelError, MainLabel, Registry,
                       UnifiedLabel, format_label, parse_label)

__all__ = [
    "ARG_POSITIONS", "ARGUMENT_SLOTS", "THEMATIC_ROLES", "ROLE_POSITIONS",
    "RoleContext", "RoleClass", "AncoraRule", "AncoraTable", "DEFAULT_ANCORA_TABLE",
    "RoleAnnotationError", "UnmappedRole", "NoAncoraSource",
    "parse_role_annotation", "map_role", "inverse_role",
]

ARGUMENT_SLOTS = ("arg0", "arg1", "arg2", "arg3", "arg4")
ARG_POSITIONS = ARGUMENT_SLOTS + ("argM", "argL")

THEMATIC_ROLES: Dict[str, str] = {
    "adv": "Adverbial",
    "agt": "Agent",
    "atr": "Attribute",
    "ben": "Beneficiary",
    "cau": "Cause",
    "cot": "Cotheme",
    "des": "Destination",
    "exp": "Experiencer",
    "efi": "Final State",
    "ein": "Initial State",
    "ins": "Instrument",
    "loc": "Location",
    "mnr": "Manner",
    "ori": "Origin",
    "pat": "Patient",
    "fin": "Purpose",
    "src": "Source",
    "tem": "Theme",
    "tmp": "Time",
    "ext": "Extension",
}

# Argument positions each role is attested with in the treebanks.
ROLE_POSITIONS: Dict[str, Tuple[str, ...]] = {
    "pat": ("arg1",),
    "agt": ("arg0",),
    "tem": ("arg1", "arg2", "arg3"),
    "atr": ("arg2", "argM", "arg3"),
    "tmp": ("argM",),
    "loc": ("argM", "arg2", "arg1", "arg3"),
    "adv": ("argM",),
    "cau": ("argM", "arg0"),
    "ben": ("arg2", "arg3"),
    "fin": ("argM", "arg2"),
    "mnr": ("argM",),
    "efi": ("arg2", "arg4"),
    "des": ("arg4",),
    "": ("argL",),
    "ext": ("arg2", "argM", "arg1"),
    "cot": ("arg2", "arg1"),
    "ori": ("arg3",),
    "exp": ("arg2", "arg3", "arg0"),
    "ein": ("arg3", "arg2"),
    "ins": ("arg2",),
    "src": ("arg0",),
}


class RoleClass:
    ARGUMENT = "argument"
    ADJUNCT = "adjunct"
    ANY = "any"


class RoleAnnotationError(ValueError):
    pass


class UnmappedRole(MappingError):
    pass


class NoAncoraSource(MappingError):
    pass


@dataclass(frozen=True)
class RoleContext:
    role: str  # "" for the empty light-verb role
    pos: str

    def __post_init__(self):
        if self.pos not in ARG_POSITIONS:
            raise RoleAnnotationError(f"unknown argument slot {self.pos!r}")
        if self.role and self.role not in THEMATIC_ROLES:
            raise RoleAnnotationError(f"unknown thematic role {self.role!r}")
        if (self.role == "") != (self.pos == "argL"):
            raise RoleAnnotationError("the empty role occurs with argL and only there")

    @property
    def position_class(self) -> str:
        if self.pos in ARGUMENT_SLOTS:
            return RoleClass.ARGUMENT
        if self.pos == "argM":
            return RoleClass.ADJUNCT
        return "lexicalized"

    def __str__(self) -> str:
        return f"{self.pos}:{self.role}"


_ANNOTATION_RE = re.compile(r"^([Aa][Rr][Gg])([0-4MmLl]):(.*)$")


def parse_role_annotation(text: str) -> RoleContext:
    """Parse ``argN:role``; the slot part is case-insensitive.

    >>> parse_role_annotation("Arg0:agt")
    RoleContext(role='agt', pos='arg0')
    """
    m = _ANNOTATION_RE.match(text)
    if not m:
        raise RoleAnnotationError(f"not an argN:role annotation: {text!r}")
    pos = "arg" + m.group(2).upper()
    return RoleContext(m.group(3), pos)


@dataclass(frozen=True)
class AncoraRule:
    role: str
    positions: Optional[FrozenSet[str]]  # None matches every slot
    label: UnifiedLabel
    provenance: str = "published"

    @property
    def residual(self) -> bool:
        return self.provenance == "residual"

    def matches(self, ctx: RoleContext) -> bool:
        return ctx.role == self.role and (self.positions is None or ctx.pos in self.positions)

    def positions_text(self) -> str:
        if self.positions is None:
            return "*"
        return ",".join(p for p in ARG_POSITIONS if p in self.positions)


def _rule(role, positions, label, provenance="published") -> AncoraRule:
    pos = None if positions == "*" else frozenset(positions.split(","))
    return AncoraRule(role, pos, parse_label(label), provenance)


_DEFAULT_RULES = [
    _rule("agt", "*", "ACT:agt"),
    _rule("cau", "arg0,arg1,arg2,arg3,arg4", "ACT:cau"),
    _rule("cau", "argM", "CAUSE:caus"),
    _rule("exp", "*", "ACT:exp"),
    _rule("src", "*", "ORIG:src"),
    _rule("pat", "*", "PAT"),
    _rule("atr", "*", "PAT:atr"),
    _rule("tem", "arg1", "PAT:theme"),
    _rule("ben", "*", "MANR:ben"),
    _rule("mnr", "*", "MANR:mann"),
    _rule("loc", "*", "LOC:where"),
    _rule("des", "*", "LOC:dir3"),
    _rule("ori", "*", "LOC:ori"),
    _rule("fin", "*", "CAUSE:aim"),
    _rule("tmp", "*", "TIME"),
    _rule("efi", "*", "PCOMPL:efi"),
    _rule("ein", "*", "PCOMPL:ein"),
    # no published correspondence; nearest label by name or meaning
    _rule("tem", "*", "PAT:theme", "residual"),
    _rule("adv", "*", "MANR", "residual"),
    _rule("ext", "*", "MANR:ext", "residual"),
    _rule("ins", "*", "MANR:means", "residual"),
    _rule("cot", "*", "PAT:theme", "residual"),
    _rule("", "argL", "MISCLL:cphr", "residual"),
]


class TableError(ValueError):
    pass


class AncoraTable:
    """Ordered rules; a rule naming explicit slots beats a ``*`` rule."""

    def __init__(self, rules: Iterable[AncoraRule], registry: Registry = DEFAULT_REGISTRY):
        self.registry = registry
        keyed: Dict[Tuple[str, Optional[FrozenSet[str]]], AncoraRule] = {}
        for r in rules:
            if r.role and r.role not in THEMATIC_ROLES:
                raise TableError(f"unknown role {r.role!r}")
            if r.positions is not None and not r.positions <= set(ARG_POSITIONS):
                raise TableError(f"{r.role}: unknown slot in {sorted(r.positions)}")
            if r.label not in registry:
                raise TableError(f"{r.role}: target {r.label} not in the label registry")
            keyed[(r.role, r.positions)] = r
        self.rules: List[AncoraRule] = list(keyed.values())
        self._inverse: Dict[UnifiedLabel, Tuple[str, str]] = {}
        for r in self.rules:
            if r.residual:
                continue
            cls = self._rule_class(r)
            if r.label in self._inverse and self._inverse[r.label] != (r.role, cls):
                other = self._inverse[r.label]
                raise TableError(f"{r.label} is the target of both {other} and {(r.role, cls)}")
            self._inverse[r.label] = (r.role, cls)

    def _rule_class(self, rule: AncoraRule) -> str:
        split = [r for r in self.rules if r.role == rule.role and not r.residual]
        if len(split) < 2 or rule.positions is None:
            return RoleClass.ANY
        if rule.positions <= set(ARGUMENT_SLOTS):
            return RoleClass.ARGUMENT
        if rule.positions == {"argM"}:
            return RoleClass.ADJUNCT
        return RoleClass.ANY

    @classmethod
    def default(cls, registry: Registry = DEFAULT_REGISTRY) -> "AncoraTable":
        return cls(_DEFAULT_RULES, registry)

    def rule_for(self, ctx: RoleContext) -> Optional[AncoraRule]:
        explicit = [r for r in self.rules if r.positions is not None and r.matches(ctx)]
        if explicit:
            return explicit[-1]
        wild = [r for r in self.rules if r.positions is None and r.matches(ctx)]
        return wild[-1] if wild else None

    def resolve(self, ctx, policy=Policy.STRICT) -> Resolution:
        policy = as_policy(policy)
        if isinstance(ctx, str):
            ctx = parse_role_annotation(ctx)
        rule = self.rule_for(ctx)
        if rule is not None and not rule.residual:
            return Resolution(rule.label)
        if policy is Policy.STRICT:
            what = "residual role" if rule else "unmapped role"
            raise UnmappedRole(f"{what} {ctx.role or '(empty)'} in slot {ctx.pos}")
        note = RESIDUAL_ROLE if rule else None
        if policy is Policy.PASSTHROUGH:
            return Resolution(Passthrough(str(ctx)), note or PASSTHROUGH)
        if rule is not None:
            return Resolution(rule.label, RESIDUAL_ROLE)
        return Resolution(UnifiedLabel(MainLabel.MISCLL), UNMAPPED)

    def inverse(self, label: UnifiedLabel) -> Tuple[str, str]:
        """Return ``(role, position class)`` for a label in the table's image."""
        try:
            return self._inverse[label]
        except KeyError:
            raise NoAncoraSource(f"no AnCora role maps to {label}") from None

    def image(self) -> frozenset:
        return frozenset(self._inverse)

    def with_overrides(self, tsv_text: str) -> "AncoraTable":
        """Add or replace rules from ``role<TAB>positions-or-*<TAB>label`` lines.

        An optional fourth column sets the provenance; ``residual`` keeps the
        rule diagnosed and out of the inverse table.
        """
        rules = list(self.rules)
        reader = csv.reader(io.StringIO(tsv_text), delimiter="\t")
        for n, row in enumerate(reader, 1):
            if not row or row[0].startswith("#") or row[0] == "role":
                continue
            if len(row) not in (3, 4):
                raise TableError(f"role table row {n}: expected 3 or 4 columns, got {len(row)}")
            role = "" if row[0] in ("", "_") else row[0]
            try:
                label = parse_label(row[2], self.registry)
            except LabelError as exc:
                raise TableError(f"role table row {n}: {exc}") from None
            positions = None if row[1] == "*" else frozenset(p.strip() for p in row[1].split(","))
            rules.append(AncoraRule(role, positions, label, row[3] if len(row) == 4 else "override"))
        return AncoraTable(rules, self.registry)

    def to_tsv(self) -> str:
        lines = ["role\tpositions\tunified_label\tprovenance"]
        for r in self.rules:
            lines.append(f"{r.role or '_'}\t{r.positions_text()}\t{format_label(r.label)}\t{r.provenance}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        rows = [{"role": r.role, "positions": r.positions_text(),
                 "unified_label": format_label(r.label), "provenance": r.provenance}
                for r in self.rules]
        return json.dumps(rows, indent=2) + "\n"


DEFAULT_ANCORA_TABLE = AncoraTable.default()


def map_role(ctx, policy=Policy.STRICT, table: Optional[AncoraTable] = None) -> Mapped:
    return (table or DEFAULT_ANCORA_TABLE).resolve(ctx, policy).value


def inverse_role(label: UnifiedLabel, table: Optional[AncoraTable] = None) -> Tuple[str, str]:
    return (table or DEFAULT_ANCORA_TABLE).inverse(label)
