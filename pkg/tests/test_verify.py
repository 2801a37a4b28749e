# tests/test_verify.py
import pytest

from orbit_exit_tool.errors import CompletionBudgetExceeded, InputError, NoLift
from orbit_exit_tool.models import CURATED_MODELS
from orbit_exit_tool.verdict import Status, Verdict
from orbit_exit_tool.verify import TheoremCheck
from orbit_exit_tool.verify.fibration_checks import ClassificationPullbackCheck, FreeActionCheck, RightFibrationCheck
from orbit_exit_tool.verify.grothendieck_checks import GrothendieckRoundTripCheck
from orbit_exit_tool.verify.lifting_checks import LiftingSuiteCheck, SegmentationCheck
from orbit_exit_tool.verify.orbit_checks import (
    AbelianHomFormulaCheck,
    EIWeylCheck,
    KleinOrbitCategoryCheck,
    PointedOrbitPullbackCheck,
    SymmetricOrbitCategoryCheck,
)
from orbit_exit_tool.verify.suite import DEFAULT_CHECKS, SuiteRunner, run_suite


class RaisingCheck(TheoremCheck):
    def __init__(self, config, error):
        super().__init__(config)
        self.error = error

    @property
    def name(self) -> str:
        return "raising check"

    @property
    def anchor(self) -> str:
        return "test double"

    def run(self) -> Verdict:
        raise self.error


class QuietCheck(RaisingCheck):
    def run(self) -> Verdict:
        return Verdict.verified()


def test_klein_orbit_category(config):
    verdict = KleinOrbitCategoryCheck(config).safe_run()
    assert verdict.is_verified
    assert verdict.witness["endomorphisms"] == ["K4", "C2", "C2", "C2", "1"]


def test_symmetric_orbit_category_notes(config):
    verdict = SymmetricOrbitCategoryCheck(config).safe_run()
    assert verdict.is_verified
    assert verdict.witness["End(S3/C3)"] == "C2"
    assert verdict.notes[0] == "End(S3/C3) computed as C2"
    assert any("C3" in note for note in verdict.notes[1:])


def test_pointed_orbit_pullback(config):
    assert PointedOrbitPullbackCheck(config).safe_run().is_verified


def test_abelian_hom_formula(config):
    verdict = AbelianHomFormulaCheck(config).safe_run()
    assert verdict.is_verified
    assert verdict.notes[0].startswith("25 groups, ")


def test_orbit_categories_are_ei(config):
    verdict = EIWeylCheck(config).safe_run()
    assert verdict.is_verified
    assert "groups C2, C3, C4, K4, S3, D4" in verdict.notes


def test_right_fibration_on_curated_models(config):
    verdict = RightFibrationCheck(config).safe_run()
    assert verdict.is_verified
    assert verdict.witness == {name: "Verified" for name in CURATED_MODELS}
    assert "section property at word length <= 3" in verdict.notes


def test_classification_pullback_on_curated_models(config):
    verdict = ClassificationPullbackCheck(config).safe_run()
    assert verdict.is_verified
    assert verdict.witness["circle-reflect"] == "Verified"
    assert "circle-rotate-3: skipped, exit category not finite" in verdict.notes


def test_free_action_check(config):
    verdict = FreeActionCheck(config).safe_run()
    assert verdict.is_verified
    assert "fibers of size 3" in verdict.notes


def test_lifting_suite_at_word_length_six(config):
    config.lift_word_bound = 6
    verdict = LiftingSuiteCheck(config).safe_run()
    assert verdict.is_verified
    assert "221 lifts at word length <= 6" in verdict.notes


def test_segmentations(config):
    verdict = SegmentationCheck(config).safe_run()
    assert verdict.is_verified
    assert verdict.notes[-1].endswith("words at length <= 3")


def test_grothendieck_round_trip(config):
    verdict = GrothendieckRoundTripCheck(config).safe_run()
    assert verdict.is_verified
    assert verdict.notes == ("10 presheaves, seed 0",)


def test_budget_exhaustion_is_undecided(config):
    verdict = RaisingCheck(config, CompletionBudgetExceeded("out of rewrites", 42)).safe_run()
    assert verdict.status is Status.UNDECIDED
    assert verdict.budget == 42
    assert verdict.claim == "raising check"


def test_failed_precondition_is_refuted(config):
    verdict = RaisingCheck(config, NoLift("no edge into E")).safe_run()
    assert verdict.is_refuted
    assert verdict.witness == "no edge into E"


def test_input_errors_propagate(config):
    with pytest.raises(InputError):
        RaisingCheck(config, InputError("bad model")).safe_run()


def test_claim_defaults_to_name(config):
    assert QuietCheck(config, None).safe_run().claim == "raising check"


def test_suite_filters_by_name(config):
    assert len(SuiteRunner(config).checks) == len(DEFAULT_CHECKS)
    config.only = ["Klein"]
    runner = SuiteRunner(config)
    assert [type(c) for c in runner.checks] == [KleinOrbitCategoryCheck]
    report = runner.run()
    assert report.status is Status.VERIFIED
    assert report.provenance["subcommand"] == "suite"


def test_run_suite_with_explicit_checks(config):
    report = run_suite(config, [QuietCheck(config, None), RaisingCheck(config, NoLift("x"))])
    assert [entry.verdict.status for entry in report.entries] == [Status.VERIFIED, Status.REFUTED]
    assert report.exit_code == 1
