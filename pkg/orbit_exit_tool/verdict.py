# orbit_exit_tool/verdict.py
"""
Verification verdicts: Verified / Refuted(witness) / Undecided(budget)
"""
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Iterable, Optional, Tuple


class Status(str, Enum):
    VERIFIED = "Verified"
    REFUTED = "Refuted"
    UNDECIDED = "Undecided"


@dataclass(frozen=True)
class Verdict:
    """Outcome of one check"""

    status: Status
    claim: str = ""
    witness: Any = None
    budget: Optional[int] = None
    notes: Tuple[str, ...] = field(default_factory=tuple)

    @classmethod
    def verified(cls, claim: str = "", witness: Any = None, notes: Iterable[str] = ()) -> "Verdict":
        return cls(Status.VERIFIED, claim, witness, None, tuple(notes))

    @classmethod
    def refuted(cls, claim: str = "", witness: Any = None, notes: Iterable[str] = ()) -> "Verdict":
        return cls(Status.REFUTED, claim, witness, None, tuple(notes))

    @classmethod
    def undecided(cls, claim: str = "", budget: Optional[int] = None, notes: Iterable[str] = ()) -> "Verdict":
        return cls(Status.UNDECIDED, claim, None, budget, tuple(notes))

    @property
    def is_verified(self) -> bool:
        return self.status is Status.VERIFIED

    @property
    def is_refuted(self) -> bool:
        return self.status is Status.REFUTED

    @property
    def is_undecided(self) -> bool:
        return self.status is Status.UNDECIDED

    def __bool__(self) -> bool:
        return self.is_verified

    def with_notes(self, *notes: str) -> "Verdict":
        return replace(self, notes=self.notes + tuple(notes))

    def with_claim(self, claim: str) -> "Verdict":
        return replace(self, claim=claim)


def combine(verdicts: Iterable[Verdict], claim: str = "") -> Verdict:
    """
    Aggregate verdicts: first refutation wins, then any Undecided, else Verified.
    Budgets of undecided parts are summed.
    """
    verdicts = list(verdicts)
    for verdict in verdicts:
        if verdict.is_refuted:
            return replace(verdict, claim=claim or verdict.claim)
    undecided = [v for v in verdicts if v.is_undecided]
    if undecided:
        budget = sum(v.budget or 0 for v in undecided)
        notes = tuple(n for v in undecided for n in v.notes)
        return Verdict.undecided(claim, budget, notes)
    notes = tuple(n for v in verdicts for n in v.notes)
    return Verdict.verified(claim, notes=notes)
