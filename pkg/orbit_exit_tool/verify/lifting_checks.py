# orbit_exit_tool/verify/lifting_checks.py
"""
Path lifting and segmentation suites over every curated model
"""
import logging

from ..exit_paths import (
    all_lifts,
    enumerate_exit_words,
    exit_category,
    invertibility_check,
    segmentation,
    section_property_check,
)
from ..models import CURATED_MODELS, load_model
from ..stratify import quotient_complex
from ..verdict import Verdict, combine
from . import TheoremCheck

logger = logging.getLogger(__name__)


class LiftingSuiteCheck(TheoremCheck):
    """Every short quotient word lifts at every end lift, projects back, and is counted by the orbit"""

    @property
    def name(self) -> str:
        return "exit paths lift uniquely along the quotient"

    @property
    def anchor(self) -> str:
        return "a quotient exit path with a chosen end lift has exactly one lift"

    def run(self) -> Verdict:
        bound = self.config.lift_word_bound
        verdicts = []
        total = 0
        for model_name in CURATED_MODELS:
            X = load_model(model_name, self.config.group_bound)
            Q, quotient = quotient_complex(X)
            G = X.group
            for w in enumerate_exit_words(Q, bound):
                lifts = all_lifts(X, w, quotient)
                total += len(lifts)
                expected = G.order // X.stabilizer(quotient.fiber(w.end)[0]).order
                if len(lifts) != expected:
                    return Verdict.refuted(self.name, (model_name, str(w), len(lifts), expected))
                for lift in lifts:
                    if not lift.is_exit() or quotient.map_word(lift.steps) != w.steps:
                        return Verdict.refuted(self.name, (model_name, str(w), str(lift)))
            upstairs = list(enumerate_exit_words(X, bound))
            verdicts.append(section_property_check(X, upstairs, quotient))
        return combine(verdicts, self.name).with_notes(f"{total} lifts at word length <= {bound}")


class SegmentationCheck(TheoremCheck):
    """Segmentations reassemble their word, prefixes stay exit words, invertible means single-stratum"""

    @property
    def name(self) -> str:
        return "segmentations of exit words"

    @property
    def anchor(self) -> str:
        return "an exit path splits into one piece per stratum it traverses"

    def run(self) -> Verdict:
        bound = self.config.lift_word_bound
        verdicts = []
        words = 0
        for model_name in CURATED_MODELS:
            X = load_model(model_name, self.config.group_bound)
            for w in enumerate_exit_words(X, bound):
                words += 1
                seg = segmentation(w)
                pieces = seg.pieces(w)
                if tuple(s for piece in pieces for s in piece) != w.steps:
                    return Verdict.refuted(self.name, (model_name, str(w), "pieces", pieces))
                distinct = tuple(p for i, p in enumerate(w.profile) if i == 0 or p != w.profile[i - 1])
                if seg.strata != distinct:
                    return Verdict.refuted(self.name, (model_name, str(w), "strata", seg.strata))
                for n in range(len(w.steps)):
                    if not w.prefix(n).is_exit():
                        return Verdict.refuted(self.name, (model_name, str(w), "prefix", n))
            ec = exit_category(X, self.config.completion_budget)
            if ec.category is not None:
                verdicts.append(invertibility_check(ec))
        return combine(verdicts, self.name).with_notes(f"{words} words at length <= {bound}")
