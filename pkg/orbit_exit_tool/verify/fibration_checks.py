# orbit_exit_tool/verify/fibration_checks.py
"""
Classification checks on the curated models: Pi is a right fibration, Enter(M) is
the pullback of the pointed orbit category, and free actions give coverings
"""
import logging
from typing import Dict, List

from ..classify import (
    Classifier,
    free_action_report,
    omega_presheaf,
    verify_right_fibration,
)
from ..exit_paths import exit_category
from ..fincat import pullback_categories
from ..models import CURATED_MODELS, load_model
from ..orbit_category import forgetful_functor
from ..stratify import quotient_complex
from ..verdict import Status, Verdict, combine
from . import TheoremCheck

logger = logging.getLogger(__name__)

PULLBACK_THEOREM = "Enter(M) is the pullback of the pointed orbit category"
FREE_MODEL = "circle-rotate-3"
REFLECTION_MODEL = "circle-reflect"


class RightFibrationCheck(TheoremCheck):
    """Pi: Exit(M) -> Exit(M/G) has unique lifts and fibers the size of orbits"""

    @property
    def name(self) -> str:
        return "Pi is a right fibration on every curated model"

    @property
    def anchor(self) -> str:
        return "the quotient map induces a right fibration of exit-path categories"

    def run(self) -> Verdict:
        verdicts = []
        statuses: Dict[str, str] = {}
        for model_name in CURATED_MODELS:
            X = load_model(model_name, self.config.group_bound)
            verdict = verify_right_fibration(X, budget=self.config.completion_budget,
                                             word_bound=self.config.lift_word_bound)
            statuses[model_name] = verdict.status.value
            verdicts.append(verdict)
        result = combine(verdicts, self.name)
        return Verdict(result.status, self.name, statuses, result.budget, result.notes)


class ClassificationPullbackCheck(TheoremCheck):
    """Full pipeline per model; finite exit categories must give a Verified pullback"""

    @property
    def name(self) -> str:
        return "Enter(M) is classified by a functor to the orbit category"

    @property
    def anchor(self) -> str:
        return "Enter(M) is the pullback of the forgetful functor along Omega"

    def run(self) -> Verdict:
        verdicts: List[Verdict] = []
        statuses: Dict[str, str] = {}
        notes = []
        for model_name in CURATED_MODELS:
            X = load_model(model_name, self.config.group_bound)
            instance = Classifier(X, self.config.completion_budget, self.config.iso_search_bound).classify()
            entry = next((e for e in instance.report.entries if e.theorem == PULLBACK_THEOREM), None)
            if entry is None:
                verdicts.append(Verdict.refuted(f"{model_name}: pipeline stopped early",
                                                instance.report.summary_lines()))
                statuses[model_name] = Status.REFUTED.value
                continue
            statuses[model_name] = entry.verdict.status.value
            if entry.verdict.is_undecided and instance.exit_M is not None and instance.exit_M.category is None:
                notes.append(f"{model_name}: skipped, exit category not finite")
                continue
            verdicts.append(entry.verdict.with_claim(f"{model_name}: {PULLBACK_THEOREM}"))
            if model_name == REFLECTION_MODEL:
                verdicts.append(self._reflection_objects(instance))
        result = combine(verdicts, self.name)
        return Verdict(result.status, self.name, statuses if not result.is_refuted else result.witness,
                       result.budget, tuple(notes) + result.notes)

    def _reflection_objects(self, instance) -> Verdict:
        """Over the images of N and E the pullback has exactly the vertices N, E, W"""
        claim = f"{REFLECTION_MODEL}: pullback objects over [N] and [E]"
        forget = forgetful_functor(instance.model.group, instance.orbit, instance.pointed)
        pb = pullback_categories(instance.omega_G, forget)
        over = [obj for obj in pb.category.objects if obj[0] in ("N", "E")]
        lifted = sorted(x for x in instance.omega_star.source.objects
                        if instance.omega_star.obj(x) in {obj[1] for obj in over}
                        and instance.Pi.obj(x) in ("N", "E"))
        if len(over) != 3 or lifted != ["E", "N", "W"]:
            return Verdict.refuted(claim, {"objects": [str(o) for o in over], "vertices": lifted})
        return Verdict.verified(claim, lifted)


class FreeActionCheck(TheoremCheck):
    """For a free action Exit(M) is a groupoid, fibers are constant and Omega lands in BG"""

    @property
    def name(self) -> str:
        return "free actions give coverings classified by BG"

    @property
    def anchor(self) -> str:
        return "with a free action the classifying functor factors through BG"

    def run(self) -> Verdict:
        X = load_model(FREE_MODEL, self.config.group_bound)
        _, quotient = quotient_complex(X)
        budget = self.config.completion_budget
        exit_M = exit_category(X, budget)
        exit_MG = exit_category(quotient.target, budget)
        omega = omega_presheaf(X, exit_MG, quotient, budget)
        verdict = free_action_report(X, exit_M, omega)
        fibration = verify_right_fibration(X, quotient=quotient, budget=budget,
                                           word_bound=self.config.lift_word_bound)
        sizes = {b: len(fiber) for b, fiber in omega.values.items()}
        return combine([verdict, fibration], self.name).with_notes(f"fiber sizes {sizes}")
