# orbit_exit_tool/report.py
"""
Verification reports
Entries are {theorem, anchor, verdict, witness, budget, notes}; the file form is
sorted-key JSON so reports diff cleanly across runs.
"""
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterable, List, Union

from .verdict import Status, Verdict

logger = logging.getLogger(__name__)

EXIT_VERIFIED = 0
EXIT_REFUTED = 1
EXIT_UNDECIDED = 2
EXIT_INPUT_ERROR = 64
EXIT_INTERNAL_ERROR = 70

SCHEMA_VERSION = 1


def plain(value: Any) -> Any:
    """JSON-ready rendering of witnesses"""
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in sorted(value.items(), key=lambda kv: str(kv[0]))}
    if isinstance(value, (list, tuple)) and not hasattr(value, "_fields"):
        return [plain(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(str(v) for v in value)
    forward = getattr(value, "forward", None)
    if forward is not None:
        return {"objects": {str(a): str(b) for a, b in forward.object_map.items()}}
    return str(value)


@dataclass
class ReportEntry:
    theorem: str
    anchor: str
    verdict: Verdict

    def to_dict(self) -> Dict:
        data = {
            "theorem": self.theorem,
            "anchor": self.anchor,
            "verdict": self.verdict.status.value,
            "claim": self.verdict.claim,
            "notes": list(self.verdict.notes),
        }
        if self.verdict.witness is not None:
            data["witness"] = plain(self.verdict.witness)
        if self.verdict.budget is not None:
            data["budget"] = self.verdict.budget
        return data


@dataclass
class VerificationReport:
    """Per-theorem verdicts for one run, with model provenance"""

    title: str
    provenance: Dict[str, Any] = field(default_factory=dict)
    entries: List[ReportEntry] = field(default_factory=list)

    def add(self, theorem: str, anchor: str, verdict: Verdict) -> Verdict:
        self.entries.append(ReportEntry(theorem, anchor, verdict))
        if verdict.is_verified:
            logger.info(f"✅ {theorem}")
        elif verdict.is_refuted:
            logger.info(f"❌ {theorem}: {plain(verdict.witness)}")
        else:
            logger.info(f"⚠️ {theorem}: undecided (budget {verdict.budget})")
        for note in verdict.notes:
            logger.debug(f"   {note}")
        return verdict

    def extend(self, other: "VerificationReport") -> None:
        self.entries.extend(other.entries)

    def verdicts(self) -> List[Verdict]:
        return [entry.verdict for entry in self.entries]

    @property
    def status(self) -> Status:
        statuses = {v.status for v in self.verdicts()}
        if Status.REFUTED in statuses:
            return Status.REFUTED
        if Status.UNDECIDED in statuses:
            return Status.UNDECIDED
        return Status.VERIFIED

    @property
    def exit_code(self) -> int:
        return exit_code_for(self.verdicts())

    def to_dict(self) -> Dict:
        return {
            "schema": SCHEMA_VERSION,
            "title": self.title,
            "provenance": plain(self.provenance),
            "status": self.status.value,
            "entries": [entry.to_dict() for entry in self.entries],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def write(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        if not path.suffix:
            path = path / "report.json"
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_json(), encoding="utf-8")
        logger.info(f"📄 Report written to {path}")
        return path

    def summary_lines(self) -> List[str]:
        width = max((len(e.theorem) for e in self.entries), default=0)
        return [f"{e.theorem.ljust(width)}  {e.verdict.status.value}" for e in self.entries]


def exit_code_for(verdicts: Iterable[Verdict]) -> int:
    statuses = {v.status for v in verdicts}
    if Status.REFUTED in statuses:
        return EXIT_REFUTED
    if Status.UNDECIDED in statuses:
        return EXIT_UNDECIDED
    return EXIT_VERIFIED
