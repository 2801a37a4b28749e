# tests/test_groups.py
import pytest

from orbit_exit_tool.errors import GroupTooLarge, InputError, NotASubgroup
from orbit_exit_tool.groups import (
    GSet,
    PermGroup,
    builtin_group,
    conjugacy_class_poset,
    enumerate_subgroups,
    equivariant_maps,
    identify_group,
    load_group,
    weyl_group,
)


@pytest.mark.parametrize("name,order", [
    ("1", 1), ("C2", 2), ("C3", 3), ("C4", 4), ("K4", 4), ("S3", 6), ("D4", 8),
])
def test_builtin_group_orders(name, order):
    assert builtin_group(name).order == order


def test_bad_permutation_is_rejected():
    with pytest.raises(InputError):
        PermGroup(3, ((0, 0, 1),))


def test_group_bound_stops_closure():
    with pytest.raises(GroupTooLarge):
        builtin_group("S3", bound=5).elements


def test_subgroup_must_be_closed(s3):
    transposition = next(i for i in range(s3.order) if s3.element_order(i) == 2)
    rotation = next(i for i in range(s3.order) if s3.element_order(i) == 3)
    with pytest.raises(NotASubgroup):
        s3.subgroup([0, transposition, rotation])


def test_unknown_group_name():
    with pytest.raises(InputError):
        load_group("nope")


@pytest.mark.parametrize("name,subgroups,classes", [
    ("S3", 6, 4),
    ("K4", 5, 5),
    ("D4", 10, 8),
])
def test_subgroup_and_class_counts(name, subgroups, classes):
    G = builtin_group(name)
    assert len(enumerate_subgroups(G)) == subgroups
    assert len(conjugacy_class_poset(G).classes) == classes


def test_class_labels(s3, k4):
    assert conjugacy_class_poset(s3).labels == ("1", "2", "3", "6")
    assert conjugacy_class_poset(k4).labels == ("1", "2a", "2b", "2c", "4")


def test_subgroups_in_one_class_get_numbered(s3):
    poset = conjugacy_class_poset(s3)
    reflections = [H for H in enumerate_subgroups(s3) if H.order == 2]
    assert sorted(poset.subgroup_label(H) for H in reflections) == ["2.0", "2.1", "2.2"]


def test_class_order_flips(s3):
    poset = conjugacy_class_poset(s3)
    flipped = poset.flipped()
    assert poset.leq(0, 3)
    assert flipped.leq(3, 0)
    assert not flipped.leq(0, 3)
    assert poset.is_antisymmetric()


def test_weyl_groups_of_s3(s3):
    by_order = {H.order: H for H in enumerate_subgroups(s3)}
    assert weyl_group(s3, by_order[3]).order == 2
    assert weyl_group(s3, by_order[1]).order == 6
    assert weyl_group(s3, by_order[2]).order == 1


@pytest.mark.parametrize("name,expected", [
    ("1", "1"), ("C3", "C3"), ("C4", "C4"), ("K4", "K4"), ("S3", "S3"), ("D4", "D4"),
])
def test_identify_group(name, expected):
    assert identify_group(builtin_group(name)) == expected


@pytest.mark.parametrize("name", ["C4", "K4"])
def test_equivariant_map_counts_for_abelian_groups(name):
    G = builtin_group(name)
    subgroups = enumerate_subgroups(G)
    for H in subgroups:
        for K in subgroups:
            expected = K.index if H.issubset(K) else 0
            assert len(equivariant_maps(G, H, GSet.from_cosets(G, K))) == expected


def test_coset_action_is_transitive(s3):
    H = next(H for H in enumerate_subgroups(s3) if H.order == 2)
    cosets = GSet.from_cosets(s3, H)
    assert cosets.is_valid()
    assert cosets.is_transitive()
    assert len(cosets.points) == 3


def test_group_from_file(tmp_path):
    path = tmp_path / "c5.json"
    path.write_text('{"degree": 5, "generators": [[1, 2, 3, 4, 0]], "name": "C5"}')
    G = load_group(str(path))
    assert G.order == 5
    assert identify_group(G) == "C5"
