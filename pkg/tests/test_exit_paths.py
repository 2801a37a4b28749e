# tests/test_exit_paths.py
import pytest

from orbit_exit_tool.errors import CompletionBudgetExceeded, InvalidEndLift, InvalidWord, NotMonotone
from orbit_exit_tool.exit_paths import (
    FINITE,
    PRESENTED,
    UNDECIDED,
    ExitWord,
    all_lifts,
    enumerate_exit_words,
    exit_category,
    exit_generators,
    invertibility_check,
    is_immediately_exiting,
    lift_path,
    lift_relations_check,
    path_length,
    section_property_check,
    segmentation,
)
from orbit_exit_tool.stratify import quotient_complex

FINITE_EXIT_MODELS = ("interval-flip", "circle-reflect", "square-klein4")
PRESENTED_EXIT_MODELS = ("circle-rotate-3", "disk-rotate-4")


@pytest.fixture
def reflect_quotient(circle_reflect):
    return quotient_complex(circle_reflect)


def test_word_must_be_a_walk(circle_reflect):
    with pytest.raises(InvalidWord):
        ExitWord(circle_reflect, "X")
    with pytest.raises(InvalidWord):
        ExitWord(circle_reflect, "E", ("NE",))
    with pytest.raises(InvalidWord):
        ExitWord.parse(circle_reflect, [])


def test_exit_word_profile(circle_reflect):
    w = ExitWord.parse(circle_reflect, ["N", "NE"])
    assert w.end == "E"
    assert w.profile == ("2", "1")
    assert w.is_exit()
    assert str(w) == "N NE"


def test_backwards_step_is_not_an_exit_path(circle_reflect):
    w = ExitWord.parse(circle_reflect, ["E", "-NE"])
    assert w.end == "N"
    assert not w.is_exit()
    with pytest.raises(NotMonotone):
        w.check_exit()


def test_segmentation(circle_reflect):
    w = ExitWord.parse(circle_reflect, ["N", "NE"])
    seg = segmentation(w)
    assert seg.strata == ("2", "1")
    assert seg.pieces(w) == [(), ("NE",)]
    assert path_length(w) == 2
    assert is_immediately_exiting(w)


def test_generators_include_inverses_inside_a_stratum(circle_rotate):
    names = {g.name for g in exit_generators(circle_rotate)}
    assert all(f"-{e.id}" in names for e in circle_rotate.edges)


@pytest.mark.parametrize("name", FINITE_EXIT_MODELS)
def test_finite_exit_categories(curated, name):
    ec = exit_category(curated[name])
    assert ec.status == FINITE
    assert ec.category is not None
    assert invertibility_check(ec)


@pytest.mark.parametrize("name", PRESENTED_EXIT_MODELS)
def test_presented_exit_categories(curated, name):
    ec = exit_category(curated[name])
    assert ec.status == PRESENTED
    assert ec.category is None
    assert ec.infinite_homs
    assert invertibility_check(ec).is_undecided


@pytest.mark.parametrize("name,morphisms", [
    ("interval-flip", 5),
    ("circle-reflect", 8),
    ("square-klein4", 25),
])
def test_exit_category_sizes(curated, name, morphisms):
    assert len(exit_category(curated[name]).category.morphisms) == morphisms


@pytest.mark.parametrize("name,morphisms", [
    ("interval-flip", 3),
    ("circle-reflect", 5),
])
def test_quotient_exit_category_sizes(curated, name, morphisms):
    Q, _ = quotient_complex(curated[name])
    assert len(exit_category(Q).category.morphisms) == morphisms


def test_exhausted_budget_is_undecided(circle_rotate):
    ec = exit_category(circle_rotate, budget=1)
    assert ec.status == UNDECIDED
    assert not ec.is_decided
    with pytest.raises(CompletionBudgetExceeded):
        ec.normal_form(())


def test_enter_category_is_the_opposite(circle_reflect):
    ec = exit_category(circle_reflect)
    assert len(ec.enter.hom("E", "N")) == 1
    assert len(ec.enter.hom("N", "E")) == 0


def test_morphism_classes(circle_reflect):
    ec = exit_category(circle_reflect)
    m = ec.morphism("N", ["NE"])
    assert (m.source, m.target) == ("N", "E")
    assert m in ec.category.morphisms


def test_lift_at_each_end(circle_reflect, reflect_quotient):
    Q, quotient = reflect_quotient
    w = ExitWord(Q, "N", ("NE",))
    assert str(lift_path(circle_reflect, w, "W", quotient=quotient)) == "N NW"
    assert str(lift_path(circle_reflect, w, "E", quotient=quotient)) == "N NE"
    assert len(all_lifts(circle_reflect, w, quotient)) == 2


def test_end_lift_must_lie_over_the_end(circle_reflect, reflect_quotient):
    Q, quotient = reflect_quotient
    with pytest.raises(InvalidEndLift):
        lift_path(circle_reflect, ExitWord(Q, "N", ("NE",)), "N", quotient=quotient)


def test_section_property(circle_reflect, reflect_quotient):
    _, quotient = reflect_quotient
    words = list(enumerate_exit_words(circle_reflect, 3))
    assert section_property_check(circle_reflect, words, quotient)


@pytest.mark.parametrize("name", PRESENTED_EXIT_MODELS)
def test_related_words_lift_to_equal_words(curated, name):
    assert lift_relations_check(curated[name])


def test_asymmetric_face_breaks_lifted_relations(two_bigons):
    verdict = lift_relations_check(two_bigons, validate=False)
    assert verdict.is_refuted
    assert verdict.witness[1] in ("p2", "q2")
