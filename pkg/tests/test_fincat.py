# tests/test_fincat.py
import random

import pytest

from orbit_exit_tool.errors import NotAFibration
from orbit_exit_tool.fincat import (
    FiniteCategory,
    Functor,
    Morphism,
    arrow_category,
    check_pullback_universal_property,
    fibration_to_presheaf,
    find_isomorphism,
    find_presheaf_isomorphism,
    full_subcategory,
    group_as_category,
    identity_functor,
    is_EI,
    is_right_fibration,
    opposite,
    point_and_arrow_cones,
    presheaf_to_fibration,
    pullback_categories,
    random_poset_category,
    random_presheaf,
    terminal_category,
    validate_category,
    validate_functor,
    validate_presheaf,
)
from orbit_exit_tool.orbit_category import build_orbit_category


@pytest.fixture(scope="module")
def orbit_s3(s3):
    return build_orbit_category(s3)


def idempotent_monoid() -> FiniteCategory:
    """One object, endomorphisms 1 and x with x.x = x"""
    return FiniteCategory.generate(
        ("*",),
        [Morphism("*", "*", "x")],
        lambda g, f: "x" if "x" in (g, f) else "1",
        lambda a: "1",
        name="idempotent",
    )


def test_orbit_category_satisfies_axioms(orbit_s3):
    assert validate_category(orbit_s3)


def test_opposite_is_an_involution(orbit_s3):
    twice = opposite(opposite(orbit_s3))
    assert twice.morphisms == orbit_s3.morphisms
    assert twice.composition == orbit_s3.composition
    assert twice.name == orbit_s3.name
    assert validate_category(opposite(orbit_s3))


def test_group_as_category(s3):
    BG = group_as_category(s3)
    assert len(BG.morphisms) == 6
    assert BG.is_groupoid()
    assert validate_category(BG)


def test_non_invertible_endomorphism_is_not_EI():
    verdict = is_EI(idempotent_monoid())
    assert verdict.is_refuted
    assert verdict.witness[0] == "non-invertible endomorphism"


def test_full_subcategory_keeps_homs(orbit_s3):
    free = orbit_s3.objects[0]
    sub = full_subcategory(orbit_s3, [free])
    assert sub.objects == (free,)
    assert len(sub.morphisms) == 6
    assert validate_category(sub)


def test_category_dict_form_rebuilds(orbit_s3):
    rebuilt = FiniteCategory.from_dict(orbit_s3.to_dict())
    assert validate_category(rebuilt)
    assert len(rebuilt.objects) == 6
    assert len(rebuilt.morphisms) == 34
    assert "G/3" in rebuilt.objects


def test_identity_functor_is_a_functor(orbit_s3):
    assert validate_functor(identity_functor(orbit_s3))


def test_broken_functor_is_detected():
    C = arrow_category()
    edge = C.hom("0", "1")[0]
    F = Functor(C, C, {"0": "1", "1": "1"},
                {C.identity("0"): C.identity("1"), C.identity("1"): C.identity("1"), edge: edge})
    assert validate_functor(F).is_refuted


@pytest.mark.parametrize("seed", [0, 1, 2, 3, 4])
def test_random_presheaves_round_trip(seed):
    rng = random.Random(seed)
    base = random_poset_category(rng, 4)
    F = random_presheaf(rng, base, 3)
    assert validate_presheaf(F)
    p = presheaf_to_fibration(F)
    assert is_right_fibration(p)
    assert find_presheaf_isomorphism(F, fibration_to_presheaf(p))


def test_non_fibration_has_no_presheaf():
    C = arrow_category()
    point = terminal_category()
    star = point.objects[0]
    collapse = Functor(C, point, {"0": star, "1": star},
                       {m: point.identity(star) for m in C.morphisms}, name="collapse")
    assert validate_functor(collapse)
    assert is_right_fibration(collapse).is_refuted
    with pytest.raises(NotAFibration):
        fibration_to_presheaf(collapse)


def test_pullback_of_identities_has_the_universal_property():
    C = arrow_category()
    pb = pullback_categories(identity_functor(C), identity_functor(C))
    assert len(pb.category.objects) == 2
    assert len(pb.category.morphisms) == 3
    verdict = check_pullback_universal_property(pb, point_and_arrow_cones(pb))
    assert verdict
    assert verdict.notes == ("5 test cones checked, apexes 1, [1]",)


def test_isomorphism_search(orbit_s3, k4):
    orbit_k4 = build_orbit_category(k4)
    assert find_isomorphism(orbit_k4, build_orbit_category(k4))
    assert find_isomorphism(orbit_k4, orbit_s3).is_refuted


def test_isomorphism_search_reports_exhausted_bound(orbit_s3, s3):
    verdict = find_isomorphism(orbit_s3, build_orbit_category(s3), bound=1)
    assert verdict.is_undecided
    assert verdict.budget > 1
