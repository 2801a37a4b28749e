# orbit_exit_tool/validators.py
"""
Validators for models and run configuration
Each validator checks one thing and reports through logging
"""
import logging
from pathlib import Path
from typing import List, Optional, Tuple

from .complexes import GComplex
from .errors import ModelError
from .verdict import Verdict

logger = logging.getLogger(__name__)

DEFAULT_FACE_BOUND = 8


class GComplexValidator:
    """
    Admissibility of a finite G-complex: structure, action, regularity,
    monotone stratification and the unique-lift condition
    """

    def __init__(self, complex_: GComplex, face_bound: int = DEFAULT_FACE_BOUND):
        self.complex = complex_
        self.face_bound = face_bound

    def validate(self) -> Verdict:
        X = self.complex
        claim = f"{X.name} is an admissible G-complex"
        logger.debug(f"Validating {X.name}...")
        for check in (
                self._check_structure,
                self._check_action,
                self._check_incidence,
                self._check_regularity,
                self._check_stratification,
                self._check_unique_lifts,
        ):
            witness = check()
            if witness is not None:
                logger.info(f"❌ {X.name}: {witness[0]} fails at {witness[1]} ({witness[2]})")
                if witness[0] in ("regularity", "unique lifts", "incidence"):
                    logger.info("💡 Try a barycentric subdivision of the model (space subdivide)")
                return Verdict.refuted(claim, witness)
        logger.debug(f"✅ {X.name} is admissible")
        return Verdict.verified(claim)

    def _check_structure(self) -> Optional[Tuple[str, str, str]]:
        X = self.complex
        for face in X.faces:
            if len(face.boundary) > self.face_bound:
                return "structure", face.id, f"boundary longer than {self.face_bound}"
            walk = X.face_walk(face)
            for step, (start, _) in zip(face.boundary, zip(walk, walk[1:])):
                if X.step_endpoints(step)[0] != start:
                    return "structure", face.id, f"boundary is not a walk at {step}"
            if walk[0] != walk[-1]:
                return "structure", face.id, "boundary walk is not closed"
        return None

    def _check_action(self) -> Optional[Tuple[str, str, str]]:
        try:
            self.complex.cell_action
        except ModelError as e:
            return "action", self.complex.name, str(e)
        return None

    def _check_incidence(self) -> Optional[Tuple[str, str, str]]:
        X = self.complex
        for position, g in enumerate(X.group.generator_indices):
            for edge in X.edges:
                image = X.edge_map[X.act(g, edge.id)]
                if (X.act(g, edge.src), X.act(g, edge.dst)) != (image.src, image.dst):
                    return "incidence", edge.id, f"generator {position} breaks its endpoints"
            for face in X.faces:
                moved = tuple(X.act_step(g, step) for step in face.boundary)
                target = X.face_map[X.act(g, face.id)].boundary
                rotations = {target[i:] + target[:i] for i in range(len(target))}
                if moved not in rotations:
                    return "incidence", face.id, f"generator {position} breaks its boundary"
        return None

    def _check_regularity(self) -> Optional[Tuple[str, str, str]]:
        X = self.complex
        for cell in X.cells:
            boundary = X.boundary_cells(cell)
            for h in X.stabilizer(cell).members:
                for lower in boundary:
                    if X.act(h, lower) != lower:
                        return "regularity", cell, f"stabilizer moves boundary cell {lower}"
        return None

    def _check_stratification(self) -> Optional[Tuple[str, str, str]]:
        X = self.complex
        try:
            labels = X.labels
            poset = X.strat_poset
        except ModelError as e:
            return "stratification", X.name, str(e)
        for cell in X.cells:
            for g in X.group.generator_indices:
                if labels[X.act(g, cell)] != labels[cell]:
                    return "stratification", cell, "labels are not G-invariant"
        for edge in X.edges:
            if not poset.leq(labels[edge.src], labels[edge.dst]):
                return "stratification", edge.id, "edge runs from a more generic to a less generic stratum"
            if labels[edge.id] != labels[edge.dst]:
                return "stratification", edge.id, "edge label differs from its more generic endpoint"
        for face in X.faces:
            corners = [v for v in X.boundary_cells(face.id) if v in X.vertices]
            top = poset.maximum(labels[v] for v in corners)
            if top is None or labels[face.id] != top:
                return "stratification", face.id, "face label is not the most generic boundary stratum"
        return None

    def _check_unique_lifts(self) -> Optional[Tuple[str, str, str]]:
        X = self.complex
        for edge in X.edges:
            orbit = [X.edge_map[e] for e in X.orbit(edge.id)]
            for v in X.orbit(edge.dst):
                count = sum(1 for e in orbit if e.dst == v)
                if count != 1:
                    return "unique lifts", edge.id, f"{count} edges of its orbit end at {v}"
            if X.in_stratum(edge.id):
                for v in X.orbit(edge.src):
                    count = sum(1 for e in orbit if e.src == v)
                    if count != 1:
                        return "unique lifts", edge.id, f"{count} edges of its orbit start at {v}"
        return None


def validate_gcomplex(complex_: GComplex, face_bound: int = DEFAULT_FACE_BOUND) -> Verdict:
    return GComplexValidator(complex_, face_bound).validate()


class RunConfigValidator:
    """Validates budgets and input references of a run configuration"""

    def __init__(self, config):
        self.config = config

    def validate(self) -> bool:
        problems = self.problems()
        for problem in problems:
            logger.error(f"❌ {problem}")
        return not problems

    def problems(self) -> List[str]:
        from .groups import BUILTIN_GROUPS
        from .models import CURATED_MODELS

        config = self.config
        problems = []
        for name in ("completion_budget", "iso_search_bound", "group_bound", "face_bound",
                     "random_presheaves", "lift_word_bound"):
            value = getattr(config, name)
            if not isinstance(value, int) or value <= 0:
                problems.append(f"{name} must be a positive integer, got {value!r}")
        if config.group and config.group not in BUILTIN_GROUPS and not Path(config.group).exists():
            problems.append(f"group '{config.group}' is neither built in nor a readable file")
        if config.model and config.model not in CURATED_MODELS and not Path(config.model).exists():
            problems.append(f"model '{config.model}' is neither curated nor a readable file")
        if config.word is not None and not config.word:
            problems.append("--word needs at least a start vertex")
        return problems
