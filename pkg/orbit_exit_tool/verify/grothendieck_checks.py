# orbit_exit_tool/verify/grothendieck_checks.py
"""
Grothendieck correspondence on seeded random presheaves over small posets
"""
import logging
import random

from ..fincat import (
    find_isomorphism,
    find_presheaf_isomorphism,
    fibration_to_presheaf,
    is_right_fibration,
    presheaf_to_fibration,
    random_poset_category,
    random_presheaf,
    validate_presheaf,
)
from ..verdict import Verdict
from . import TheoremCheck

logger = logging.getLogger(__name__)

MAX_POSET_SIZE = 4
MAX_VALUE_SIZE = 3


class GrothendieckRoundTripCheck(TheoremCheck):
    """Presheaf -> fibration -> presheaf and fibration -> presheaf -> fibration both close up"""

    @property
    def name(self) -> str:
        return "right fibrations correspond to presheaves"

    @property
    def anchor(self) -> str:
        return "category of elements and its inverse"

    def run(self) -> Verdict:
        rng = random.Random(self.config.seed)
        count = self.config.random_presheaves
        for i in range(count):
            base = random_poset_category(rng, MAX_POSET_SIZE)
            F = random_presheaf(rng, base, MAX_VALUE_SIZE)
            for verdict in self._round_trip(F):
                if not verdict:
                    logger.error(f"❌ presheaf #{i} on {base.name}: {verdict.claim}")
                    return Verdict.refuted(self.name, {"sample": i, "seed": self.config.seed,
                                                       "failed": verdict.claim, "witness": verdict.witness})
        return Verdict.verified(self.name, notes=[f"{count} presheaves, seed {self.config.seed}"])

    def _round_trip(self, F):
        """Lazily yields the verdicts of one sample so the first failure stops it"""
        yield validate_presheaf(F)
        p = presheaf_to_fibration(F)
        yield is_right_fibration(p)
        F_again = fibration_to_presheaf(p)
        yield find_presheaf_isomorphism(F, F_again)
        p_again = presheaf_to_fibration(F_again)
        yield is_right_fibration(p_again)
        yield find_isomorphism(p.source, p_again.source, self.config.iso_search_bound, over=[(p, p_again)])
