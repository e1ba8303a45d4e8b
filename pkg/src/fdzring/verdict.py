"""Tri-state decision results shared by the isomorphism and equivalence procedures."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any, Optional


class VerdictKind(str, enum.Enum):
    ISOMORPHIC = "Isomorphic"
    NOT_ISOMORPHIC = "NotIsomorphic"
    EQUIVALENT = "Equivalent"
    NOT_EQUIVALENT = "NotEquivalent"
    UNKNOWN = "Unknown"

    @property
    def positive(self) -> bool:
        return self in (VerdictKind.ISOMORPHIC, VerdictKind.EQUIVALENT)

    @property
    def negative(self) -> bool:
        return self in (VerdictKind.NOT_ISOMORPHIC, VerdictKind.NOT_EQUIVALENT)

    @property
    def polarity(self) -> str:
        if self.positive:
            return "positive"
        if self.negative:
            return "negative"
        return "unknown"


@dataclass(frozen=True)
class Verdict:
    """Decision outcome.  Positive kinds always carry a checkable witness."""

    kind: VerdictKind
    witness: Optional[Any] = None
    reason: str = ""

    def __post_init__(self):
        if self.kind.positive and self.witness is None:
            raise ValueError("positive verdicts need a witness")

    @property
    def exit_code(self) -> int:
        if self.kind.positive:
            return 0
        if self.kind.negative:
            return 1
        return 3
