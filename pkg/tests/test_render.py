# tests/test_render.py
from orbit_exit_tool.fincat import FiniteCategory, arrow_category
from orbit_exit_tool.orbit_category import build_orbit_category
from orbit_exit_tool.render import dot_text, export_dot, node_labels


def test_klein_orbit_diagram(k4):
    text = dot_text(build_orbit_category(k4))
    lines = text.splitlines()
    assert lines[0].startswith("digraph ")
    assert lines[-1] == "}"
    assert '  n0 [label="G/1"];' in lines
    assert '  n0 -> n0 [label="×4"];' in lines
    assert '  n1 -> n1 [label="×2"];' in lines
    assert '  n0 -> n1 [label="×2"];' in lines
    assert "  n0 -> n4;" in lines
    assert not any(line.startswith("  n4 -> n4") for line in lines)
    assert not any(line.startswith("  n4 -> n0") for line in lines)


def test_identity_loops_on_request(k4):
    text = dot_text(build_orbit_category(k4), include_identities=True)
    assert '  n4 -> n4 [label="id"];' in text.splitlines()


def test_loop_labels_override_counts(k4):
    orbit = build_orbit_category(k4)
    text = dot_text(orbit, loop_labels={orbit.objects[0]: "K4"})
    assert '  n0 -> n0 [label="K4"];' in text.splitlines()


def test_node_labels_number_duplicates():
    twins = FiniteCategory.generate((1, "1"), [], lambda g, f: None, lambda a: None, "twins")
    assert node_labels(twins) == {1: "1 #1", "1": "1 #2"}


def test_export_dot_creates_parents(tmp_path):
    path = export_dot(arrow_category(), tmp_path / "diagrams" / "arrow.dot")
    assert path.exists()
    text = path.read_text(encoding="utf-8")
    assert text.startswith('digraph "[1]" {')
    assert "  n0 -> n1;" in text
