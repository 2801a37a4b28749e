# orbit_exit_tool/orbit_category.py
"""
Orbit categories O_G and O_G,* as finite categories
A morphism G/H -> G/K is stored as its full coset map (image of coset i at position i).
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .fincat import (
    FinSetSlice,
    FiniteCategory,
    ForgetBasepoint,
    Functor,
    Morphism,
    PointedSet,
    find_isomorphism,
    full_subcategory,
    group_as_category,
    pullback_categories,
    validate_functor,
)
from .groups import (
    ConjClassPoset,
    GSet,
    PermGroup,
    Subgroup,
    conjugacy_class_poset,
    enumerate_subgroups,
    equivariant_maps,
    identify_group,
)
from .verdict import Verdict, combine

logger = logging.getLogger(__name__)

# Endomorphism-group labels drawn on the reference orbit-category diagrams, keyed by class label.
REFERENCE_DIAGRAM_LABELS: Dict[str, Dict[str, str]] = {
    "S3": {"1": "S3", "3": "C3"},
    "K4": {"1": "K4", "2a": "C2", "2b": "C2", "2c": "C2"},
}


@dataclass(frozen=True)
class OrbitObject:
    """The transitive G-set G/H"""

    subgroup: Subgroup
    label: str = field(default="", compare=False)

    def __str__(self) -> str:
        return f"G/{self.label}"

    @property
    def size(self) -> int:
        return self.subgroup.index


@dataclass(frozen=True)
class PointedOrbitObject:
    """G/H pointed at one of its cosets"""

    subgroup: Subgroup
    coset: int
    label: str = field(default="", compare=False)

    def __str__(self) -> str:
        return f"(G/{self.label}, {self.coset})"

    @property
    def unpointed(self) -> OrbitObject:
        return OrbitObject(self.subgroup, self.label)


def _compose_maps(g: Tuple[int, ...], f: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(g[i] for i in f)


def _identity_map(obj) -> Tuple[int, ...]:
    return tuple(range(obj.subgroup.index))


def orbit_objects(G: PermGroup, poset: Optional[ConjClassPoset] = None) -> List[OrbitObject]:
    poset = poset or conjugacy_class_poset(G)
    return [OrbitObject(H, poset.subgroup_label(H)) for H in enumerate_subgroups(G)]


def build_orbit_category(G: PermGroup) -> FiniteCategory:
    """One object per subgroup; hom(G/H, G/K) enumerated as equivariant maps"""
    objects = orbit_objects(G)
    coset_sets = {obj: GSet.from_cosets(G, obj.subgroup) for obj in objects}
    arrows = []
    for source in objects:
        for target in objects:
            for images in equivariant_maps(G, source.subgroup, coset_sets[target]):
                arrows.append(Morphism(source, target, images))
    category = FiniteCategory.generate(objects, arrows, _compose_maps, _identity_map, name=f"O_{G.label}")
    logger.debug(f"{category.name}: {len(objects)} objects, {len(category.morphisms)} morphisms")
    return category


def build_pointed_orbit_category(G: PermGroup, orbit: Optional[FiniteCategory] = None) -> FiniteCategory:
    """Objects (H, coset); at most one basepoint-preserving map between two objects"""
    orbit = orbit or build_orbit_category(G)
    objects = [
        PointedOrbitObject(obj.subgroup, i, obj.label)
        for obj in orbit.objects for i in range(obj.size)
    ]
    arrows = [
        Morphism(
            PointedOrbitObject(m.source.subgroup, i, m.source.label),
            PointedOrbitObject(m.target.subgroup, m.payload[i], m.target.label),
            m.payload,
        )
        for m in orbit.morphisms for i in range(m.source.size)
    ]
    return FiniteCategory.generate(objects, arrows, _compose_maps, _identity_map, name=f"O_{G.label},*")


def forgetful_functor(
        G: PermGroup,
        orbit: Optional[FiniteCategory] = None,
        pointed: Optional[FiniteCategory] = None,
) -> Functor:
    """(H, aH) -> G/H; a pointed map goes to its underlying coset map"""
    orbit = orbit or build_orbit_category(G)
    pointed = pointed or build_pointed_orbit_category(G, orbit)
    return Functor(
        pointed,
        orbit,
        {p: p.unpointed for p in pointed.objects},
        {m: Morphism(m.source.unpointed, m.target.unpointed, m.payload) for m in pointed.morphisms},
        name="forget",
    )


def find_object(orbit: FiniteCategory, H: Subgroup):
    for obj in orbit.objects:
        if obj.subgroup == H:
            return obj
    raise KeyError(f"no orbit object for subgroup {H.members}")


def endomorphism_group(orbit: FiniteCategory, obj) -> PermGroup:
    """End(G/H) as a permutation group on the cosets of H"""
    endos = tuple(m.payload for m in orbit.endomorphisms(obj))
    return PermGroup(obj.size, endos, name=f"End({obj})")


def weyl_labels(orbit: FiniteCategory) -> Dict:
    """Isomorphism-type names of nontrivial endomorphism groups"""
    return {
        obj: identify_group(endomorphism_group(orbit, obj))
        for obj in orbit.objects if len(orbit.endomorphisms(obj)) > 1
    }


def weyl_label_audit(G: PermGroup, orbit: FiniteCategory) -> List[str]:
    """Notes for every object whose computed endomorphism group disagrees with the reference diagram"""
    reference = REFERENCE_DIAGRAM_LABELS.get(G.name, {})
    poset = conjugacy_class_poset(G)
    notes = []
    for obj in orbit.objects:
        expected = reference.get(poset.label_of(obj.subgroup))
        if expected is None:
            continue
        computed = identify_group(endomorphism_group(orbit, obj))
        if computed != expected:
            notes.append(f"{obj}: computed endomorphism group {computed}, reference diagram label {expected}")
    return notes


def object_iso_classes(C: FiniteCategory) -> List[Tuple]:
    """Objects grouped by the existence of an isomorphism between them"""
    classes: List[List] = []
    for a in C.objects:
        for members in classes:
            b = members[0]
            if any(C.inverse_of(m) is not None for m in C.hom(a, b)):
                members.append(a)
                break
        else:
            classes.append([a])
    return [tuple(members) for members in classes]


@dataclass(frozen=True, eq=False)
class BGSubcategory:
    """
    BG as the full subcategory of O_G on G/1, and its pointed counterpart EG: the objects
    (G/1, a) of O_G,* with one arrow between any two. O_G,* is thin, so G acts on the
    basepoint object (G/1, e) only after forgetting the basepoint; covering is that forgetful
    restriction EG -> BG.
    """

    category: FiniteCategory
    inclusion: Functor
    witness: Verdict
    pointed: FiniteCategory
    pointed_inclusion: Functor
    covering: Functor

    @property
    def basepoint(self) -> PointedOrbitObject:
        """Image of the unique object of BG, G pointed at the identity"""
        return next(p for p in self.pointed.objects if p.coset == 0)


def bg_subcategory(
        G: PermGroup,
        orbit: Optional[FiniteCategory] = None,
        pointed: Optional[FiniteCategory] = None,
) -> BGSubcategory:
    """Full subcategories on G/1 and over G/1 with an explicit isomorphism BG = G"""
    orbit = orbit or build_orbit_category(G)
    pointed = pointed or build_pointed_orbit_category(G, orbit)
    free = find_object(orbit, G.trivial_subgroup)
    category = full_subcategory(orbit, [free], name=f"BG in {orbit.name}")
    inclusion = Functor(category, orbit, {free: free}, {m: m for m in category.morphisms}, "BG inclusion")
    witness = find_isomorphism(category, group_as_category(G))

    over_free = [p for p in pointed.objects if p.unpointed == free]
    eg = full_subcategory(pointed, over_free, name=f"EG in {pointed.name}")
    pointed_inclusion = Functor(eg, pointed, {p: p for p in eg.objects}, {m: m for m in eg.morphisms},
                                "EG inclusion")
    forget = forgetful_functor(G, orbit, pointed)
    covering = Functor(eg, category, {p: forget.obj(p) for p in eg.objects},
                       {m: forget.mor(m) for m in eg.morphisms}, "EG -> BG")
    return BGSubcategory(category, inclusion, witness, eg, pointed_inclusion, covering)


# --- the finite-set square ------------------------------------------------------

def coset_set(obj) -> Tuple:
    return tuple((obj.label, i) for i in range(obj.subgroup.index))


@dataclass(frozen=True, eq=False)
class CosetSquare:
    """O_G,* -> FinSet*| over O_G -> FinSet| restricted to the coset sets"""

    orbit: FiniteCategory
    pointed: FiniteCategory
    forget: Functor
    underlying: Functor
    pointed_underlying: Functor
    forget_basepoint: ForgetBasepoint


def coset_square(G: PermGroup) -> CosetSquare:
    orbit = build_orbit_category(G)
    pointed = build_pointed_orbit_category(G, orbit)
    sets = [coset_set(obj) for obj in orbit.objects]
    plain_slice = FinSetSlice(sets, name="FinSet|")
    pointed_slice = FinSetSlice(sets, pointed=True, name="FinSet*|")

    def plain_map(m: Morphism) -> Morphism:
        target = coset_set(m.target)
        return Morphism(coset_set(m.source), target, tuple(target[j] for j in m.payload))

    underlying = Functor(
        orbit, plain_slice,
        {obj: coset_set(obj) for obj in orbit.objects},
        {m: plain_map(m) for m in orbit.morphisms},
        name="U",
    )

    def pointed_obj(p: PointedOrbitObject) -> PointedSet:
        elements = coset_set(p)
        return PointedSet(elements, elements[p.coset])

    pointed_underlying = Functor(
        pointed, pointed_slice,
        {p: pointed_obj(p) for p in pointed.objects},
        {m: Morphism(pointed_obj(m.source), pointed_obj(m.target), plain_map(m).payload) for m in pointed.morphisms},
        name="U*",
    )
    return CosetSquare(orbit, pointed, forgetful_functor(G, orbit, pointed), underlying, pointed_underlying,
                       ForgetBasepoint(pointed_slice, plain_slice))


def pointed_orbit_pullback_check(G: PermGroup, bound: int = 200_000) -> Verdict:
    """
    The square (O_G,*, FinSet*|, O_G, FinSet|) commutes and O_G,* is its pullback
    Sets are truncated to the coset sets G/H that occur.
    """
    claim = f"O_{G.label},* is the pullback of FinSet*| -> FinSet| along O_{G.label} -> FinSet|"
    square = coset_square(G)
    checks = [validate_functor(square.underlying), validate_functor(square.pointed_underlying),
              validate_functor(square.forget)]
    for m in square.pointed.morphisms:
        if square.underlying.mor(square.forget.mor(m)) != square.forget_basepoint.mor(square.pointed_underlying.mor(m)):
            return Verdict.refuted(claim, ("square does not commute", m))
    if not square.pointed.is_thin():
        return Verdict.refuted(claim, "pointed orbit category is not thin")
    pullback = pullback_categories(square.underlying, square.forget_basepoint)
    checks.append(find_isomorphism(
        square.pointed, pullback.category, bound,
        over=[(square.forget, pullback.left), (square.pointed_underlying, pullback.right)],
    ))
    return combine(checks, claim).with_notes("FinSet truncated to the coset sets of G")
