# tests/test_classify.py
import pytest

from orbit_exit_tool.classify import (
    Classifier,
    check_fibers_agree,
    fiber_identifications,
    free_action_report,
    omega_orbit_functor,
    omega_presheaf,
    quotient_exit_functor,
    verify_right_fibration,
)
from orbit_exit_tool.errors import ActionNotFree
from orbit_exit_tool.exit_paths import PresentedFunctor, exit_category
from orbit_exit_tool.fincat import Functor, is_right_fibration, validate_presheaf
from orbit_exit_tool.stratify import quotient_complex

PULLBACK_ENTRY = "Enter(M) is the pullback of the pointed orbit category"


def entry(instance, theorem):
    return next(e.verdict for e in instance.report.entries if e.theorem == theorem)


@pytest.fixture
def collapsing_functor(circle_reflect):
    """Sends both southern edges onto NE: fibers no longer match orbits"""
    source = exit_category(circle_reflect).category
    Q, _ = quotient_complex(circle_reflect)
    target = exit_category(Q).category
    objects = {"N": "N", "S": "N", "E": "E", "W": "E"}
    NE = target.hom("N", "E")[0]
    morphisms = {
        m: target.identity(objects[m.source]) if m.source == m.target else NE
        for m in source.morphisms
    }
    return Functor(source, target, objects, morphisms, name="collapse")


@pytest.mark.parametrize("name", [
    "interval-flip", "circle-reflect", "circle-rotate-3", "disk-rotate-4", "square-klein4",
])
def test_quotient_map_is_a_right_fibration(curated, name):
    assert verify_right_fibration(curated[name])


def test_projection_kinds(circle_reflect, circle_rotate):
    assert isinstance(quotient_exit_functor(circle_reflect), Functor)
    assert isinstance(quotient_exit_functor(circle_rotate), PresentedFunctor)


def test_collapsed_edges_have_two_lifts(collapsing_functor):
    verdict = is_right_fibration(collapsing_functor)
    assert verdict.is_refuted
    assert verdict.witness[0] == "E"


def test_collapsed_fibers_do_not_match_orbits(circle_reflect, collapsing_functor):
    verdict = verify_right_fibration(circle_reflect, collapsing_functor)
    assert verdict.is_refuted
    assert verdict.witness[0] == "fiber size differs from orbit size"


def test_omega_values_are_fibers(circle_reflect):
    omega = omega_presheaf(circle_reflect)
    assert omega.values == {"N": ("N",), "E": ("E", "W"), "S": ("S",)}
    assert validate_presheaf(omega)


def test_omega_sends_each_lift_to_the_fixed_point(circle_reflect):
    omega = omega_presheaf(circle_reflect)
    NE = omega.base.hom("N", "E")[0]
    assert omega.action[NE] == {"E": "N", "W": "N"}


def test_fibers_of_pi_agree_with_omega(circle_reflect):
    Pi = quotient_exit_functor(circle_reflect)
    assert check_fibers_agree(Pi, omega_presheaf(circle_reflect))


def test_fiber_identifications(circle_reflect):
    ids = fiber_identifications(circle_reflect, omega_presheaf(circle_reflect))
    assert ids["E"].basepoint == "E"
    assert ids["E"].coset("W") == 1
    assert ids["E"].point(1) == "W"
    assert ids["N"].subgroup.order == 2


def test_omega_into_the_orbit_category(circle_reflect):
    functor = omega_orbit_functor(circle_reflect, omega_presheaf(circle_reflect))
    assert str(functor.obj("N")) == "G/2"
    assert str(functor.obj("E")) == "G/1"


@pytest.mark.parametrize("name", ["interval-flip", "circle-reflect"])
def test_enter_category_is_the_pullback(curated, name):
    instance = Classifier(curated[name]).classify()
    assert entry(instance, PULLBACK_ENTRY)
    assert entry(instance, "Pi is a right fibration")


def test_pullback_over_the_north_pole(circle_reflect):
    instance = Classifier(circle_reflect).classify()
    assert len(instance.exit_M.category.morphisms) == 8
    assert len(instance.omega_star.source.objects) == 4
    assert "pullback has 4 objects" in entry(instance, PULLBACK_ENTRY).notes


def test_presented_models_leave_the_pullback_undecided(circle_rotate):
    instance = Classifier(circle_rotate).classify()
    verdict = entry(instance, PULLBACK_ENTRY)
    assert verdict.is_undecided
    assert "exit category not finite" in verdict.notes
    assert entry(instance, "free action gives a covering")


def test_free_square_cycle(square_cycle):
    _, quotient = quotient_complex(square_cycle)
    exit_M = exit_category(square_cycle)
    omega = omega_presheaf(square_cycle, quotient=quotient)
    assert exit_M.status == "presented"
    assert free_action_report(square_cycle, exit_M, omega)
    assert verify_right_fibration(square_cycle, quotient=quotient)


def test_non_free_action_has_no_covering_report(circle_reflect):
    exit_M = exit_category(circle_reflect)
    with pytest.raises(ActionNotFree):
        free_action_report(circle_reflect, exit_M, omega_presheaf(circle_reflect))


def test_classifier_stops_at_an_invalid_model(rotated_square_face):
    instance = Classifier(rotated_square_face).classify()
    assert instance.report.status.value == "Refuted"
    assert instance.quotient is None


def test_free_action_sends_omega_star_into_eg(two_intervals):
    instance = Classifier(two_intervals).classify()
    assert instance.omega_star.target is instance.pointed
    assert entry(instance, "free action gives a covering")
    whole = next(p for p in instance.pointed.objects if not p.subgroup.is_trivial())
    stray = Functor(instance.omega_star.source, instance.pointed,
                    {x: whole for x in instance.omega_star.source.objects}, {}, name="stray")
    verdict = free_action_report(two_intervals, instance.exit_M, instance.omega, instance.omega_G, stray)
    assert verdict.is_refuted
    assert verdict.witness == list(instance.omega_star.source.objects)


def test_section_property_follows_the_word_bound(circle_rotate):
    assert "section property at word length <= 3" in verify_right_fibration(circle_rotate).notes
    assert "section property at word length <= 2" in verify_right_fibration(circle_rotate, word_bound=2).notes
