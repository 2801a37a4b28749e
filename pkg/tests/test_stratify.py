# tests/test_stratify.py
import pytest

from orbit_exit_tool.complexes import CellMap
from orbit_exit_tool.errors import EmptyStratum, ModelError, NotANeighborhood, NotValidated
from orbit_exit_tool.groups import conjugacy_class_poset
from orbit_exit_tool.stratify import (
    barycentric_subdivide,
    check_basic_neighborhood,
    check_stratification_descends,
    cone_complex,
    depth_map,
    exit_functor_of_map,
    quotient_complex,
    stabilizer_stratification,
    stratum_covering_check,
)
from orbit_exit_tool.validators import validate_gcomplex


def test_stabilizer_stratification_is_monotone(circle_reflect):
    strat = stabilizer_stratification(circle_reflect)
    assert strat.is_monotone()
    assert strat.labeling["N"] == "2"
    assert strat.labeling["SW"] == "1"


def test_invalid_model_is_not_stratified(rotated_square_face):
    with pytest.raises(NotValidated):
        stabilizer_stratification(rotated_square_face)


def test_quotient_of_circle_reflect(circle_reflect):
    Q, quotient = quotient_complex(circle_reflect)
    assert Q.vertices == ("N", "E", "S")
    assert [(e.id, e.src, e.dst) for e in Q.edges] == [("NE", "N", "E"), ("SE", "S", "E")]
    assert quotient.fiber("E") == ("E", "W")
    assert quotient.is_cellular()
    assert quotient.preserves_strata()
    assert Q.group.order == 1


@pytest.mark.parametrize("name", [
    "interval-flip", "circle-reflect", "circle-rotate-3", "disk-rotate-4", "square-klein4",
])
def test_stratification_descends(curated, name):
    assert check_stratification_descends(curated[name])


def test_neighborhood_of_a_free_vertex(circle_reflect):
    assert check_basic_neighborhood(circle_reflect, "E", ["E"])


def test_neighborhood_of_a_fixed_vertex(circle_reflect):
    assert check_basic_neighborhood(circle_reflect, "N", ["N", "NE", "NW", "E", "W"])


def test_asymmetric_neighborhood_names_symmetry(circle_reflect):
    verdict = check_basic_neighborhood(circle_reflect, "N", ["N", "NE"])
    assert verdict.is_refuted
    assert "Symmetry" in verdict.witness.failing


@pytest.mark.parametrize("x,cells", [
    ("NE", ["NE"]),
    ("N", ["N", "nowhere"]),
    ("N", ["E"]),
])
def test_neighborhood_arguments(circle_reflect, x, cells):
    with pytest.raises(NotANeighborhood):
        check_basic_neighborhood(circle_reflect, x, cells)


def test_generic_stratum_covers_its_image(circle_reflect):
    verdict = stratum_covering_check(circle_reflect, "1")
    assert verdict
    assert verdict.witness == {"E": 2}


def test_fixed_stratum_has_single_sheets(circle_reflect):
    assert stratum_covering_check(circle_reflect, "2").witness == {"N": 1, "S": 1}


def test_stratum_covering_uses_the_given_quotient(circle_reflect):
    _, quotient = quotient_complex(circle_reflect)
    split = CellMap(quotient.source, quotient.target, {**quotient.mapping, "W": "W"})
    verdict = stratum_covering_check(circle_reflect, "1", split)
    assert verdict.is_refuted
    assert verdict.witness[0] == "fiber size"


def test_empty_stratum(circle_reflect):
    with pytest.raises(EmptyStratum):
        stratum_covering_check(circle_reflect, "9")


def test_barycentric_subdivision(circle_reflect):
    sd = barycentric_subdivide(circle_reflect)
    assert len(sd.vertices) == 8
    assert len(sd.edges) == 8
    assert sd.edge_map["N|NE"].src == "N"
    assert validate_gcomplex(sd)


def test_subdivided_interval(interval_flip):
    assert interval_flip.vertices == ("a", "b", "e")
    assert {(e.id, e.src, e.dst) for e in interval_flip.edges} == {("a|e", "e", "a"), ("b|e", "e", "b")}


def test_loops_cannot_be_subdivided():
    from orbit_exit_tool.complexes import Edge, GComplex

    loop = GComplex(name="loop", vertices=("v",), edges=(Edge("l", "v", "v"),))
    with pytest.raises(ModelError):
        barycentric_subdivide(loop)


def test_cone(circle_reflect):
    cone = cone_complex(circle_reflect)
    assert cone.vertices[0] == "apex"
    assert cone.label("apex") == "cone"
    assert cone.strat_poset.lt("cone", "2")
    assert len(cone.faces) == len(circle_reflect.edges)
    assert validate_gcomplex(cone)


def test_depth_map_of_circle_reflect(circle_reflect):
    depths = depth_map(circle_reflect.strat_poset)
    assert depths.mapping == {"2": "1", "1": "2"}
    assert depths.depth == 2
    assert depths.is_strictly_monotone()


def test_depth_map_of_s3_classes(s3):
    P = conjugacy_class_poset(s3, opposite=True).as_strat_poset()
    depths = depth_map(P)
    assert depths.mapping == {"6": "1", "2": "2", "3": "2", "1": "3"}
    assert depths.is_strictly_monotone()


def test_quotient_map_induces_exit_functor(circle_reflect):
    _, quotient = quotient_complex(circle_reflect)
    functor = exit_functor_of_map(quotient)
    assert functor.obj("W") == "E"
    assert len(functor.source.morphisms) == 8
    assert len(functor.target.morphisms) == 5