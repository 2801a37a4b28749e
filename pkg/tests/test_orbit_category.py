# tests/test_orbit_category.py
import pytest

from orbit_exit_tool.fincat import is_EI, is_right_fibration, validate_category, validate_functor
from orbit_exit_tool.groups import builtin_group, identify_group
from orbit_exit_tool.orbit_category import (
    bg_subcategory,
    build_orbit_category,
    build_pointed_orbit_category,
    endomorphism_group,
    forgetful_functor,
    object_iso_classes,
    pointed_orbit_pullback_check,
    weyl_label_audit,
    weyl_labels,
)


@pytest.mark.parametrize("name,objects,morphisms", [
    ("S3", 6, 34),
    ("K4", 5, 21),
])
def test_orbit_category_sizes(name, objects, morphisms):
    orbit = build_orbit_category(builtin_group(name))
    assert len(orbit.objects) == objects
    assert len(orbit.morphisms) == morphisms
    assert validate_category(orbit)


def test_objects_sorted_by_subgroup_order(k4):
    orbit = build_orbit_category(k4)
    assert [obj.subgroup.order for obj in orbit.objects] == [1, 2, 2, 2, 4]
    assert [str(obj) for obj in orbit.objects] == ["G/1", "G/2a", "G/2b", "G/2c", "G/4"]


def test_klein_hom_multiplicities(k4):
    orbit = build_orbit_category(k4)
    free, middle, top = orbit.objects[0], orbit.objects[1:4], orbit.objects[4]
    assert [len(orbit.hom(free, obj)) for obj in middle] == [2, 2, 2]
    assert len(orbit.hom(top, free)) == 0
    assert len(orbit.hom(middle[0], middle[1])) == 0


@pytest.mark.parametrize("name", ["C2", "C4", "K4", "S3", "D4"])
def test_orbit_categories_are_EI(name):
    assert is_EI(build_orbit_category(builtin_group(name)))


def test_endomorphisms_of_s3_orbits(s3):
    orbit = build_orbit_category(s3)
    rotations = next(obj for obj in orbit.objects if obj.subgroup.order == 3)
    assert identify_group(endomorphism_group(orbit, orbit.objects[0])) == "S3"
    assert identify_group(endomorphism_group(orbit, rotations)) == "C2"
    assert weyl_labels(orbit)[rotations] == "C2"


def test_weyl_label_audit_flags_rotation_orbit(s3, k4):
    notes = weyl_label_audit(s3, build_orbit_category(s3))
    assert len(notes) == 1
    assert notes[0].startswith("G/3")
    assert "C3" in notes[0]
    assert weyl_label_audit(k4, build_orbit_category(k4)) == []


@pytest.mark.parametrize("name,objects", [("K4", 11), ("S3", 18)])
def test_pointed_orbit_category(name, objects):
    G = builtin_group(name)
    orbit = build_orbit_category(G)
    pointed = build_pointed_orbit_category(G, orbit)
    assert len(pointed.objects) == objects
    assert pointed.is_thin()
    assert validate_category(pointed)
    assert validate_functor(forgetful_functor(G, orbit, pointed))


def test_forgetful_functor_from_the_group(c2):
    forget = forgetful_functor(c2)
    assert len(forget.source.objects) == 3
    assert sorted(len(forget.preimages(obj)) for obj in forget.target.objects) == [1, 2]
    assert validate_functor(forget)


def test_bg_subcategory(s3):
    orbit = build_orbit_category(s3)
    pointed = build_pointed_orbit_category(s3, orbit)
    bg = bg_subcategory(s3, orbit, pointed)
    assert len(bg.category.objects) == 1
    assert len(bg.category.morphisms) == 6
    assert bg.witness
    assert bg.inclusion.target is orbit
    assert validate_functor(bg.inclusion)


def test_bg_lifts_to_the_pointed_orbit_category(s3):
    pointed = build_pointed_orbit_category(s3)
    bg = bg_subcategory(s3, pointed=pointed)
    assert bg.pointed_inclusion.target is pointed
    assert validate_functor(bg.pointed_inclusion)
    assert len(bg.pointed.objects) == 6
    assert bg.pointed.is_thin()
    assert bg.pointed.is_groupoid()
    assert bg.basepoint.coset == 0
    assert len(bg.pointed.endomorphisms(bg.basepoint)) == 1
    assert bg.covering.obj(bg.basepoint) == bg.category.objects[0]
    assert validate_functor(bg.covering)
    assert is_right_fibration(bg.covering)


def test_conjugate_subgroups_give_isomorphic_orbits(s3):
    orbit = build_orbit_category(s3)
    classes = object_iso_classes(orbit)
    assert len(classes) == 4
    assert sorted(len(members) for members in classes) == [1, 1, 1, 3]


@pytest.mark.parametrize("name", ["C2", "C3", "K4"])
def test_pointed_orbit_category_is_a_pullback(name):
    assert pointed_orbit_pullback_check(builtin_group(name))
