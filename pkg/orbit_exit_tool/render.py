# orbit_exit_tool/render.py
"""
Graphviz DOT export for finite categories
One node per object in canonical order, one arrow per nonempty hom-set with a
"×k" label when k > 1, and loops only where the endomorphisms are nontrivial.
"""
import logging
from pathlib import Path
from typing import Dict, Hashable, List, Optional, Union

from .fincat import FiniteCategory

logger = logging.getLogger(__name__)


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def node_labels(category: FiniteCategory) -> Dict[Hashable, str]:
    """str(object), numbered when several objects print alike"""
    names = [str(obj) for obj in category.objects]
    labels = {}
    for obj, name in zip(category.objects, names):
        if names.count(name) > 1:
            seen = sum(1 for other in labels.values() if other.startswith(f"{name} #"))
            name = f"{name} #{seen + 1}"
        labels[obj] = name
    return labels


def dot_text(
        category: FiniteCategory,
        include_identities: bool = False,
        loop_labels: Optional[Dict[Hashable, str]] = None,
) -> str:
    loop_labels = loop_labels or {}
    labels = node_labels(category)
    ids = {obj: f"n{i}" for i, obj in enumerate(category.objects)}
    lines: List[str] = [
        f"digraph {_quote(category.name or 'category')} {{",
        "  rankdir=TB;",
        "  node [shape=plaintext];",
    ]
    for obj in category.objects:
        lines.append(f"  {ids[obj]} [label={_quote(labels[obj])}];")
    for a in category.objects:
        endos = len(category.endomorphisms(a))
        if endos > 1 or include_identities:
            label = loop_labels.get(a, f"×{endos}" if endos > 1 else "id")
            lines.append(f"  {ids[a]} -> {ids[a]} [label={_quote(label)}];")
        for b in category.objects:
            if a == b:
                continue
            count = len(category.hom(a, b))
            if count == 0:
                continue
            attrs = f" [label={_quote(f'×{count}')}]" if count > 1 else ""
            lines.append(f"  {ids[a]} -> {ids[b]}{attrs};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot(
        category: FiniteCategory,
        path: Union[str, Path],
        include_identities: bool = False,
        loop_labels: Optional[Dict[Hashable, str]] = None,
) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dot_text(category, include_identities, loop_labels), encoding="utf-8")
    logger.info(f"📄 Diagram written to {path}")
    return path
