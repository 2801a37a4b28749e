# tests/test_complexes.py
import pytest

from orbit_exit_tool.complexes import Edge, GComplex, StratPoset
from orbit_exit_tool.errors import ModelError
from orbit_exit_tool.validators import GComplexValidator, validate_gcomplex


def test_poset_from_relation_is_transitively_closed():
    P = StratPoset.from_relation("abc", [("a", "b"), ("b", "c")])
    assert P.lt("a", "c")
    assert P.leq("b", "b")
    assert not P.lt("c", "a")


def test_poset_rejects_cycles_and_unknown_elements():
    with pytest.raises(ModelError):
        StratPoset.from_relation("ab", [("a", "b"), ("b", "a")])
    with pytest.raises(ModelError):
        StratPoset.from_relation("ab", [("a", "z")])


def test_poset_opens_are_up_sets():
    P = StratPoset.chain(3)
    assert P.up_set("2") == frozenset({"2", "3"})
    assert P.is_open({"2", "3"})
    assert not P.is_open({"1", "2"})
    assert P.depths() == {"1": 1, "2": 2, "3": 3}
    assert P.minimal_elements() == ("1",)


def test_left_cone_adds_a_minimum():
    P = StratPoset.discrete(["x", "y"]).left_cone("c")
    assert P.lt("c", "x") and P.lt("c", "y")
    assert not P.comparable("x", "y")
    with pytest.raises(ModelError):
        P.left_cone("x")


def test_complex_rejects_duplicate_ids():
    with pytest.raises(ModelError):
        GComplex(name="dup", vertices=("a", "a"), edges=())


def test_complex_rejects_unknown_endpoints():
    with pytest.raises(ModelError):
        GComplex(name="dangling", vertices=("a",), edges=(Edge("e", "a", "b"),))


def test_stabilizer_labels(circle_reflect):
    assert circle_reflect.label("N") == "2"
    assert circle_reflect.label("S") == "2"
    assert circle_reflect.label("E") == "1"
    assert circle_reflect.label("NE") == "1"
    assert circle_reflect.strat_poset.lt("2", "1")


def test_orbits_and_movers(circle_reflect):
    assert circle_reflect.orbit("E") == ("E", "W")
    assert circle_reflect.orbit("N") == ("N",)
    assert circle_reflect.orbit_rep("NW") == "NE"
    assert circle_reflect.act(circle_reflect.mover("E", "W"), "E") == "W"
    assert not circle_reflect.is_free()


def test_free_action(square_cycle):
    assert square_cycle.is_free()
    assert validate_gcomplex(square_cycle)


@pytest.mark.parametrize("name", [
    "interval-flip", "circle-reflect", "circle-rotate-3", "disk-rotate-4", "square-klein4",
])
def test_curated_models_are_admissible(curated, name):
    assert validate_gcomplex(curated[name])


def test_swapped_endpoints_break_incidence(raw_flip_data):
    from orbit_exit_tool.models import load_model

    verdict = validate_gcomplex(load_model(raw_flip_data))
    assert verdict.is_refuted
    assert verdict.witness[:2] == ("incidence", "e")


def test_subdivision_repairs_swapped_endpoints(raw_flip_data):
    from orbit_exit_tool.models import load_model

    assert validate_gcomplex(load_model(dict(raw_flip_data, subdivide=True)))


def test_rotated_face_breaks_regularity(rotated_square_face):
    verdict = validate_gcomplex(rotated_square_face)
    assert verdict.is_refuted
    assert verdict.witness[:2] == ("regularity", "F")


def test_face_bound(rotated_square_face):
    verdict = GComplexValidator(rotated_square_face, face_bound=3).validate()
    assert verdict.witness[:2] == ("structure", "F")


def test_dict_form_keeps_cells(circle_reflect):
    data = circle_reflect.to_dict()
    assert data["vertices"] == ["N", "E", "S", "W"]
    assert data["group"]["name"] == "C2"
    assert "strat" not in data
