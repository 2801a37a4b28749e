# orbit_exit_tool/verify/__init__.py
"""
Acceptance checks - one TheoremCheck subclass per checked statement
Kept free of submodule imports; the suite module collects the checks.
"""

import logging
from abc import ABC, abstractmethod

from ..errors import (
    BudgetExceeded,
    EquivarianceFailure,
    ExitCategoryUnavailable,
    NoLift,
    NotAFibration,
)
from ..verdict import Verdict

logger = logging.getLogger(__name__)


class TheoremCheck(ABC):
    """
    Base class for acceptance checks
    run() returns a Verdict; safe_run() turns exhausted budgets into Undecided and
    broken mathematical preconditions into Refuted. Input errors and invariant
    breaches propagate.
    """

    def __init__(self, config):
        self.config = config

    @property
    @abstractmethod
    def name(self) -> str:
        """Short statement recorded as the report entry's theorem"""
        pass

    @property
    @abstractmethod
    def anchor(self) -> str:
        """What the statement is about, in one line"""
        pass

    @abstractmethod
    def run(self) -> Verdict:
        pass

    def safe_run(self) -> Verdict:
        try:
            verdict = self.run()
        except BudgetExceeded as e:
            logger.warning(f"⚠️ {self.name}: budget exhausted after {e.consumed} units")
            return Verdict.undecided(self.name, e.consumed, [str(e)])
        except (NotAFibration, EquivarianceFailure, ExitCategoryUnavailable, NoLift) as e:
            logger.error(f"❌ {self.name}: {e}")
            return Verdict.refuted(self.name, getattr(e, "witness", None) or str(e))
        return verdict if verdict.claim else verdict.with_claim(self.name)


__all__ = ['TheoremCheck']
