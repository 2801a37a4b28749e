# orbit_exit_tool/verify/orbit_checks.py
"""
Orbit-category checks: the Klein four and S3 diagrams, the abelian hom formula,
EI with Weyl endomorphisms, and the pointed orbit category as a pullback
"""
import logging
from typing import Dict, List

from ..fincat import find_isomorphism, group_as_category, is_EI
from ..groups import (
    GSet,
    abelian_groups_up_to,
    builtin_group,
    enumerate_subgroups,
    equivariant_maps,
    identify_group,
    weyl_group,
)
from ..orbit_category import (
    build_orbit_category,
    build_pointed_orbit_category,
    endomorphism_group,
    pointed_orbit_pullback_check,
    weyl_label_audit,
)
from ..verdict import Verdict, combine
from . import TheoremCheck

logger = logging.getLogger(__name__)

EI_GROUPS = ("C2", "C3", "C4", "K4", "S3", "D4")
POINTED_PULLBACK_GROUPS = ("C2", "C3", "K4", "S3")
ABELIAN_ORDER_LIMIT = 16


def _objects_by_order(orbit) -> Dict[int, List]:
    by_order: Dict[int, List] = {}
    for obj in orbit.objects:
        by_order.setdefault(obj.subgroup.order, []).append(obj)
    return by_order


class KleinOrbitCategoryCheck(TheoremCheck):
    """Five objects, "×2" from K/1 to each K/C2, endomorphisms C2, C2, C2, K4, 1"""

    @property
    def name(self) -> str:
        return "orbit category of the Klein four-group"

    @property
    def anchor(self) -> str:
        return "objects G/H for every subgroup H, with equivariant maps"

    def run(self) -> Verdict:
        G = builtin_group("K4", self.config.group_bound)
        orbit = build_orbit_category(G)
        by_order = _objects_by_order(orbit)
        free, middle, top = by_order[1][0], by_order[2], by_order[4][0]
        observed = {
            "objects": len(orbit.objects),
            "homs from K/1": [len(orbit.hom(free, obj)) for obj in middle],
            "endomorphisms": [identify_group(endomorphism_group(orbit, obj)) for obj in orbit.objects],
        }
        expected = {
            "objects": 5,
            "homs from K/1": [2, 2, 2],
            "endomorphisms": ["K4", "C2", "C2", "C2", "1"],
        }
        if observed != expected:
            return Verdict.refuted(self.name, {"observed": observed, "expected": expected})
        if orbit.hom(top, free):
            return Verdict.refuted(self.name, ("arrow out of K/K", str(top)))
        return Verdict.verified(self.name, observed)


class SymmetricOrbitCategoryCheck(TheoremCheck):
    """Hom counts of the S3 diagram; the endomorphism label of S3/C3 is audited, not assumed"""

    @property
    def name(self) -> str:
        return "orbit category of the symmetric group S3"

    @property
    def anchor(self) -> str:
        return "arrow multiplicities ×2 and ×3 out of S3/1"

    def run(self) -> Verdict:
        G = builtin_group("S3", self.config.group_bound)
        orbit = build_orbit_category(G)
        by_order = _objects_by_order(orbit)
        free, rotations, reflections = by_order[1][0], by_order[3][0], by_order[2]
        problems = []
        if len(orbit.hom(free, rotations)) != 2:
            problems.append(("S3/1 -> S3/C3", len(orbit.hom(free, rotations))))
        for obj in reflections:
            if len(orbit.hom(free, obj)) != 3:
                problems.append(("S3/1 ->", str(obj), len(orbit.hom(free, obj))))
            if orbit.hom(obj, rotations):
                problems.append((str(obj), "-> S3/C3", len(orbit.hom(obj, rotations))))
            for other in reflections:
                if other != obj and len(orbit.hom(obj, other)) != 1:
                    problems.append((str(obj), str(other), len(orbit.hom(obj, other))))
        free_endos = identify_group(endomorphism_group(orbit, free))
        if free_endos != "S3":
            problems.append(("End(S3/1)", free_endos))
        if problems:
            return Verdict.refuted(self.name, problems)
        rotation_endos = identify_group(endomorphism_group(orbit, rotations))
        notes = [f"End(S3/C3) computed as {rotation_endos}"] + weyl_label_audit(G, orbit)
        return Verdict.verified(self.name, {"End(S3/1)": free_endos, "End(S3/C3)": rotation_endos}, notes)


class AbelianHomFormulaCheck(TheoremCheck):
    """|hom(G/H, G/K)| = [G:K] when H <= K and 0 otherwise, for abelian G up to order 16"""

    @property
    def name(self) -> str:
        return "hom-set sizes in orbit categories of abelian groups"

    @property
    def anchor(self) -> str:
        return "for abelian G the maps G/H -> G/K are counted by the cosets of K"

    def run(self) -> Verdict:
        pairs = 0
        groups = abelian_groups_up_to(ABELIAN_ORDER_LIMIT)
        for G in groups:
            subgroups = enumerate_subgroups(G)
            coset_sets = {K: GSet.from_cosets(G, K) for K in subgroups}
            for H in subgroups:
                for K in subgroups:
                    count = len(equivariant_maps(G, H, coset_sets[K]))
                    expected = K.index if H.issubset(K) else 0
                    pairs += 1
                    if count != expected:
                        return Verdict.refuted(self.name, (G.label, H.members, K.members, count, expected))
            logger.debug(f"✅ {G.label}: {len(subgroups)} subgroups")
        return Verdict.verified(self.name, notes=[f"{len(groups)} groups, {pairs} subgroup pairs"])


class EIWeylCheck(TheoremCheck):
    """Every orbit category is EI and End(G/H) is isomorphic to N_G(H)/H"""

    @property
    def name(self) -> str:
        return "orbit categories are EI with Weyl groups as endomorphisms"

    @property
    def anchor(self) -> str:
        return "End(G/H) is the Weyl group N_G(H)/H"

    def run(self) -> Verdict:
        verdicts = []
        for group_name in EI_GROUPS:
            G = builtin_group(group_name, self.config.group_bound)
            orbit = build_orbit_category(G)
            verdicts.append(is_EI(orbit))
            for obj in orbit.objects:
                endos = group_as_category(endomorphism_group(orbit, obj), name=f"End({obj})")
                weyl = group_as_category(weyl_group(G, obj.subgroup), name=f"W({obj})")
                verdict = find_isomorphism(endos, weyl, self.config.iso_search_bound)
                if not verdict:
                    verdict = verdict.with_claim(f"{group_name}: End({obj}) is the Weyl group")
                verdicts.append(verdict)
        return combine(verdicts, self.name).with_notes(f"groups {', '.join(EI_GROUPS)}")


class PointedOrbitPullbackCheck(TheoremCheck):
    """The pointed orbit category is thin, has sum of [G:H] objects, and is a pullback of finite sets"""

    @property
    def name(self) -> str:
        return "pointed orbit category as a pullback of pointed finite sets"

    @property
    def anchor(self) -> str:
        return "the evident forgetful functors form a pullback square"

    def run(self) -> Verdict:
        verdicts = []
        for group_name in POINTED_PULLBACK_GROUPS:
            G = builtin_group(group_name, self.config.group_bound)
            orbit = build_orbit_category(G)
            pointed = build_pointed_orbit_category(G, orbit)
            expected = sum(obj.subgroup.index for obj in orbit.objects)
            if len(pointed.objects) != expected or not pointed.is_thin():
                verdicts.append(Verdict.refuted(f"{group_name}: pointed orbit category",
                                                (len(pointed.objects), expected, pointed.is_thin())))
            verdicts.append(pointed_orbit_pullback_check(G, self.config.iso_search_bound))
        return combine(verdicts, self.name).with_notes(f"groups {', '.join(POINTED_PULLBACK_GROUPS)}")
