# tests/test_models.py
import json

import pytest

from orbit_exit_tool.errors import InputError
from orbit_exit_tool.models import CURATED_MODELS, complex_from_dict, curated_models, load_model, save_model


def test_every_curated_model_loads():
    models = curated_models()
    assert [m.name for m in models] == list(CURATED_MODELS)
    assert all(m.group.order > 1 for m in models)


def test_unknown_model_name():
    with pytest.raises(InputError):
        load_model("no-such-model")


def test_model_from_file(tmp_path, raw_flip_data):
    path = tmp_path / "flip.json"
    path.write_text(json.dumps(raw_flip_data), encoding="utf-8")
    model = load_model(path)
    assert model.name == "raw-flip"
    assert model.vertices == ("a", "b")


def test_unreadable_model_file(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(InputError):
        load_model(path)


def test_missing_key_is_input_error(raw_flip_data):
    del raw_flip_data["vertices"]
    with pytest.raises(InputError):
        complex_from_dict(raw_flip_data)


def test_too_many_action_generators(raw_flip_data):
    raw_flip_data["action"].append({"a": "a"})
    with pytest.raises(InputError):
        complex_from_dict(raw_flip_data)


def test_subdivide_flag(raw_flip_data):
    raw_flip_data["subdivide"] = True
    model = complex_from_dict(raw_flip_data)
    assert model.name == "raw-flip"
    assert len(model.vertices) == 3
    assert len(model.edges) == 2


def test_save_and_reload(tmp_path, circle_reflect):
    path = save_model(circle_reflect, tmp_path / "out" / "circle.json")
    assert path.exists()
    reloaded = load_model(path)
    assert reloaded.vertices == circle_reflect.vertices
    assert reloaded.edges == circle_reflect.edges
    assert reloaded.faces == circle_reflect.faces
    assert reloaded.group.order == circle_reflect.group.order
    assert reloaded.to_dict() == circle_reflect.to_dict()
