# orbit_exit_tool/verify/suite.py
"""
Acceptance suite orchestrator
"""
import logging
from typing import List, Optional, Sequence

from ..report import VerificationReport
from ..verdict import Status
from . import TheoremCheck
from .fibration_checks import ClassificationPullbackCheck, FreeActionCheck, RightFibrationCheck
from .grothendieck_checks import GrothendieckRoundTripCheck
from .lifting_checks import LiftingSuiteCheck, SegmentationCheck
from .orbit_checks import (
    AbelianHomFormulaCheck,
    EIWeylCheck,
    KleinOrbitCategoryCheck,
    PointedOrbitPullbackCheck,
    SymmetricOrbitCategoryCheck,
)

logger = logging.getLogger(__name__)

DEFAULT_CHECKS = (
    KleinOrbitCategoryCheck,
    SymmetricOrbitCategoryCheck,
    AbelianHomFormulaCheck,
    EIWeylCheck,
    PointedOrbitPullbackCheck,
    GrothendieckRoundTripCheck,
    RightFibrationCheck,
    ClassificationPullbackCheck,
    FreeActionCheck,
    LiftingSuiteCheck,
    SegmentationCheck,
)


class SuiteRunner:
    """Runs acceptance checks in a fixed order and collects one report entry per check"""

    def __init__(self, config, checks: Optional[Sequence[TheoremCheck]] = None):
        self.config = config
        self.checks: List[TheoremCheck] = list(checks) if checks is not None else self.get_default_checks()
        self.report = VerificationReport("acceptance suite", provenance=config.to_provenance())

    def get_default_checks(self) -> List[TheoremCheck]:
        checks = [cls(self.config) for cls in DEFAULT_CHECKS]
        if self.config.only:
            checks = [c for c in checks if any(term in c.name for term in self.config.only)]
        return checks

    def run(self) -> VerificationReport:
        logger.info(f"🚀 Running {len(self.checks)} acceptance checks...")
        for check in self.checks:
            logger.info(f"\n📋 {check.name}")
            logger.info("-" * 60)
            self.report.add(check.name, check.anchor, check.safe_run())
        self._show_suite_summary()
        return self.report

    def _show_suite_summary(self) -> None:
        logger.info("\n" + "=" * 60)
        if self.report.status is Status.VERIFIED:
            logger.info("🎉 ALL ACCEPTANCE CHECKS VERIFIED")
        else:
            logger.info(f"⚠️ SUITE {self.report.status.value.upper()}")
        logger.info("=" * 60)
        for line in self.report.summary_lines():
            logger.info(f"  {line}")


def run_suite(config, checks: Optional[Sequence[TheoremCheck]] = None) -> VerificationReport:
    return SuiteRunner(config, checks).run()
