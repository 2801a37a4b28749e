# orbit_exit_tool/models.py
"""
Curated G-complexes and the JSON model format

A model file holds name, description, group (built-in name or
{degree, generators, name}), vertices, edges [{id, src, dst}],
faces [{id, boundary}] and action, one {cell: image} dict per group
generator. Explicit strata come as strat {cell: label}, strata [labels] and
order [[lower, higher], ...]. With "subdivide": true the complex is replaced
by its barycentric subdivision before use.
"""
import json
import logging
from dataclasses import replace
from pathlib import Path
from typing import Dict, List, Union

from .complexes import Edge, Face, GComplex, StratPoset
from .errors import InputError
from .groups import DEFAULT_GROUP_BOUND, load_group

logger = logging.getLogger(__name__)

MODELS_DIR = Path(__file__).parent / "data" / "models"

CURATED_MODELS = (
    "interval-flip",
    "circle-reflect",
    "circle-rotate-3",
    "disk-rotate-4",
    "square-klein4",
)


def complex_from_dict(data: Dict, bound: int = DEFAULT_GROUP_BOUND) -> GComplex:
    """Build a GComplex from its parsed JSON form"""
    try:
        name = str(data["name"])
        group = load_group(data.get("group", "1"), bound)
        vertices = tuple(str(v) for v in data["vertices"])
        edges = tuple(Edge(str(e["id"]), str(e["src"]), str(e["dst"])) for e in data.get("edges", []))
        faces = tuple(Face(str(f["id"]), tuple(str(s) for s in f["boundary"])) for f in data.get("faces", []))
        raw_action = data.get("action", [])
    except (KeyError, TypeError) as e:
        raise InputError(f"malformed model description: missing or invalid {e}") from e

    if isinstance(raw_action, dict):
        raw_action = [raw_action]
    if len(raw_action) > len(group.generators):
        raise InputError(
            f"{name}: action lists {len(raw_action)} generators but the group has {len(group.generators)}"
        )
    action = {i: {str(k): str(v) for k, v in images.items()} for i, images in enumerate(raw_action)}

    strat = poset = None
    if "strat" in data:
        strat = {str(k): str(v) for k, v in data["strat"].items()}
        strata = [str(p) for p in data.get("strata", sorted(set(strat.values())))]
        poset = StratPoset.from_relation(strata, [tuple(pair) for pair in data.get("order", [])])

    complex_ = GComplex(
        name=name,
        vertices=vertices,
        edges=edges,
        faces=faces,
        group=group,
        action=action,
        strat=strat,
        poset=poset,
        description=str(data.get("description", "")),
    )
    if data.get("subdivide"):
        from .stratify import barycentric_subdivide

        complex_ = replace(barycentric_subdivide(complex_), name=name, description=complex_.description)
        logger.debug(f"{name}: using barycentric subdivision ({len(complex_.vertices)} vertices)")
    return complex_


def curated_model_path(name: str) -> Path:
    if name not in CURATED_MODELS:
        raise InputError(f"unknown curated model '{name}' (choose from {', '.join(CURATED_MODELS)})")
    return MODELS_DIR / f"{name}.json"


def _read_json(path: Path) -> Dict:
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: {e}") from e


def load_model(source: Union[str, Path, Dict], bound: int = DEFAULT_GROUP_BOUND) -> GComplex:
    """Curated model name, path to a model file, or an already parsed dict"""
    if isinstance(source, dict):
        return complex_from_dict(source, bound)
    if str(source) in CURATED_MODELS:
        return complex_from_dict(_read_json(curated_model_path(str(source))), bound)
    path = Path(source)
    if not path.exists():
        raise InputError(f"'{source}' is neither a curated model nor a readable file")
    return complex_from_dict(_read_json(path), bound)


def curated_models(bound: int = DEFAULT_GROUP_BOUND) -> List[GComplex]:
    return [load_model(name, bound) for name in CURATED_MODELS]


def save_model(complex_: GComplex, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(complex_.to_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    logger.info(f"📄 Model written to {path}")
    return path
