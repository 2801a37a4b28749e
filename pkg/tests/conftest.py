# tests/conftest.py
"""
Shared fixtures: built-in groups, curated models and small hand-made complexes
"""
import pytest

from orbit_exit_tool.complexes import Edge, Face, GComplex, StratPoset
from orbit_exit_tool.config import RunConfig
from orbit_exit_tool.groups import builtin_group
from orbit_exit_tool.models import CURATED_MODELS, load_model


@pytest.fixture(scope="session")
def c2():
    return builtin_group("C2")


@pytest.fixture(scope="session")
def k4():
    return builtin_group("K4")


@pytest.fixture(scope="session")
def s3():
    return builtin_group("S3")


@pytest.fixture(scope="session")
def circle_reflect():
    return load_model("circle-reflect")


@pytest.fixture(scope="session")
def circle_rotate():
    return load_model("circle-rotate-3")


@pytest.fixture(scope="session")
def interval_flip():
    return load_model("interval-flip")


@pytest.fixture(scope="session")
def curated():
    return {name: load_model(name) for name in CURATED_MODELS}


@pytest.fixture
def square_cycle(c2):
    """Four-cycle with C2 acting freely by the antipodal rotation"""
    return GComplex(
        name="square-cycle",
        vertices=("v0", "v1", "v2", "v3"),
        edges=(Edge("e0", "v0", "v1"), Edge("e1", "v1", "v2"), Edge("e2", "v2", "v3"), Edge("e3", "v3", "v0")),
        group=c2,
        action={0: {"v0": "v2", "v2": "v0", "v1": "v3", "v3": "v1",
                    "e0": "e2", "e2": "e0", "e1": "e3", "e3": "e1"}},
    )


@pytest.fixture
def rotated_square_face(c2):
    """A square face fixed by C2 while its corners rotate"""
    return GComplex(
        name="rotated-face",
        vertices=("v0", "v1", "v2", "v3"),
        edges=(Edge("e0", "v0", "v1"), Edge("e1", "v1", "v2"), Edge("e2", "v2", "v3"), Edge("e3", "v3", "v0")),
        faces=(Face("F", ("e0", "e1", "e2", "e3")),),
        group=c2,
        action={0: {"v0": "v2", "v2": "v0", "v1": "v3", "v3": "v1",
                    "e0": "e2", "e2": "e0", "e1": "e3", "e3": "e1"}},
    )


@pytest.fixture
def two_bigons(c2):
    """
    Two bigons p_i -> q_i swapped by C2, with a face only in the first copy
    Not admissible: the action does not carry faces to faces.
    """
    vertices = ("p1", "q1", "p2", "q2")
    return GComplex(
        name="two-bigons",
        vertices=vertices,
        edges=(Edge("u1", "p1", "q1"), Edge("w1", "p1", "q1"), Edge("u2", "p2", "q2"), Edge("w2", "p2", "q2")),
        faces=(Face("F1", ("u1", "-w1")),),
        group=c2,
        action={0: {"p1": "p2", "p2": "p1", "q1": "q2", "q2": "q1",
                    "u1": "u2", "u2": "u1", "w1": "w2", "w2": "w1"}},
        strat={v: "0" for v in vertices},
        poset=StratPoset.discrete(["0"]),
    )


@pytest.fixture
def raw_flip_data():
    """Interval with its endpoints swapped and no subdivision"""
    return {
        "name": "raw-flip",
        "group": "C2",
        "vertices": ["a", "b"],
        "edges": [{"id": "e", "src": "a", "dst": "b"}],
        "action": [{"a": "b", "b": "a"}],
    }


@pytest.fixture
def config(tmp_path, monkeypatch):
    """Small budgets for acceptance checks, isolated from any .env in the working tree"""
    monkeypatch.chdir(tmp_path)
    return RunConfig(random_presheaves=10, lift_word_bound=3)


@pytest.fixture
def two_intervals(c2):
    """Two disjoint intervals swapped freely by C2"""
    return GComplex(
        name="two-intervals",
        vertices=("a1", "b1", "a2", "b2"),
        edges=(Edge("e1", "a1", "b1"), Edge("e2", "a2", "b2")),
        group=c2,
        action={0: {"a1": "a2", "a2": "a1", "b1": "b2", "b2": "b1", "e1": "e2", "e2": "e1"}},
    )
