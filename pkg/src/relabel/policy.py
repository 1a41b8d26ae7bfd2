"""Policies and result types shared by the source-framework mappings."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

from .taxonomy import UnifiedLabel

PASSTHROUGH_PREFIX = "SRC:"

# diagnostic codes attached to resolutions
RESIDUAL_ROLE = "RESIDUAL_ROLE"
PASSTHROUGH = "PASSTHROUGH"
UNMAPPED = "UNMAPPED"


class Policy(str, Enum):
    """What to do with a source label that has no published mapping.

    ``strict`` raises, ``passthrough`` keeps the raw label, ``fallback``
    coarsens to a safe unified label and records a diagnostic.
    """

    STRICT = "strict"
    PASSTHROUGH = "passthrough"
    FALLBACK = "fallback"

    def __str__(self) -> str:
        return self.value


class MappingError(LookupError):
    pass


@dataclass(frozen=True)
class Passthrough:
    raw: str

    def __str__(self) -> str:
        return PASSTHROUGH_PREFIX + self.raw


Mapped = Union[UnifiedLabel, Passthrough]


@dataclass(frozen=True)
class Resolution:
    value: Mapped
    note: Optional[str] = None  # diagnostic code, None when clean

    def __str__(self) -> str:
        return str(self.value)


def as_policy(policy) -> Policy:
    try:
        return Policy(str(policy))
    except ValueError:
        raise ValueError(f"unknown policy {policy!r}; expected one of "
                         f"{', '.join(p.value for p in Policy)}") from None
