# orbit_exit_tool/complexes.py
"""
Finite 2-dimensional G-complexes and the posets that stratify them
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from .errors import ModelError
from .groups import ConjClassPoset, PermGroup, Subgroup, compose, conjugacy_class_poset, trivial_group

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StratPoset:
    """
    Finite poset; opens of its Alexandrov topology are the up-sets
    relation holds the strict pairs (a, b) with a < b, transitively closed.
    """

    elements: Tuple[str, ...]
    relation: FrozenSet[Tuple[str, str]]

    @classmethod
    def from_relation(cls, elements: Iterable[str], pairs: Iterable[Tuple[str, str]]) -> "StratPoset":
        elements = tuple(elements)
        graph = nx.DiGraph()
        graph.add_nodes_from(elements)
        for a, b in pairs:
            if a not in graph or b not in graph:
                raise ModelError(f"order pair ({a}, {b}) mentions an unknown stratum")
            if a != b:
                graph.add_edge(a, b)
        if not nx.is_directed_acyclic_graph(graph):
            cycle = nx.find_cycle(graph)
            raise ModelError(f"stratum order has a cycle: {cycle}")
        closure = nx.transitive_closure_dag(graph)
        return cls(elements, frozenset(closure.edges()))

    @classmethod
    def chain(cls, n: int) -> "StratPoset":
        """The chain 1 < 2 < ... < n"""
        labels = [str(i) for i in range(1, n + 1)]
        return cls.from_relation(labels, zip(labels, labels[1:]))

    @classmethod
    def discrete(cls, elements: Iterable[str]) -> "StratPoset":
        return cls.from_relation(elements, ())

    def __contains__(self, p: str) -> bool:
        return p in self.elements

    def leq(self, a: str, b: str) -> bool:
        return a == b or (a, b) in self.relation

    def lt(self, a: str, b: str) -> bool:
        return (a, b) in self.relation

    def comparable(self, a: str, b: str) -> bool:
        return self.leq(a, b) or self.leq(b, a)

    def up_set(self, p: str) -> FrozenSet[str]:
        """Smallest open containing p"""
        return frozenset({p} | {b for a, b in self.relation if a == p})

    def is_open(self, subset: Iterable[str]) -> bool:
        subset = set(subset)
        return all(self.up_set(p) <= subset for p in subset)

    def maximum(self, labels: Iterable[str]) -> Optional[str]:
        """Greatest element of the given labels, None when there is none"""
        labels = set(labels)
        for candidate in labels:
            if all(self.leq(other, candidate) for other in labels):
                return candidate
        return None

    def minimal_elements(self) -> Tuple[str, ...]:
        return tuple(p for p in self.elements if not any(self.lt(q, p) for q in self.elements))

    @cached_property
    def graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.elements)
        graph.add_edges_from(self.relation)
        return graph

    def depths(self) -> Dict[str, int]:
        """Number of elements in the longest chain ending at each element"""
        depth: Dict[str, int] = {}
        for p in nx.topological_sort(self.graph):
            below = [depth[q] for q in self.graph.predecessors(p)]
            depth[p] = 1 + max(below, default=0)
        return depth

    def left_cone(self, apex: str) -> "StratPoset":
        """This poset with a freely adjoined minimum"""
        if apex in self.elements:
            raise ModelError(f"cone label '{apex}' already names a stratum")
        pairs = list(self.relation) + [(apex, p) for p in self.elements]
        return StratPoset.from_relation((apex,) + self.elements, pairs)


@dataclass(frozen=True)
class Edge:
    id: str
    src: str
    dst: str

    @property
    def is_loop(self) -> bool:
        return self.src == self.dst


@dataclass(frozen=True)
class Face:
    id: str
    boundary: Tuple[str, ...]

    def signed_edges(self) -> Iterator[Tuple[str, bool]]:
        """(edge id, traversed backwards)"""
        for step in self.boundary:
            yield (step[1:], True) if step.startswith("-") else (step, False)


def signed(edge_id: str, backwards: bool) -> str:
    return f"-{edge_id}" if backwards else edge_id


def unsigned(step: str) -> Tuple[str, bool]:
    return (step[1:], True) if step.startswith("-") else (step, False)


@dataclass(frozen=True, eq=False)
class GComplex:
    """
    Vertices, directed edges and faces with a cellwise group action
    action maps each generator position to a partial cell permutation; omitted cells are fixed.
    strat optionally assigns explicit stratum labels in poset; otherwise cells are labeled by
    the conjugacy class of their stabilizer in the opposite subconjugacy order.
    """

    name: str
    vertices: Tuple[str, ...]
    edges: Tuple[Edge, ...]
    faces: Tuple[Face, ...] = ()
    group: PermGroup = field(default_factory=trivial_group)
    action: Dict[int, Dict[str, str]] = field(default_factory=dict)
    strat: Optional[Dict[str, str]] = None
    poset: Optional[StratPoset] = None
    description: str = ""

    def __post_init__(self):
        ids = list(self.vertices) + [e.id for e in self.edges] + [f.id for f in self.faces]
        duplicates = sorted({c for c in ids if ids.count(c) > 1})
        if duplicates:
            raise ModelError(f"{self.name}: duplicate cell ids {duplicates}")
        vertex_set = set(self.vertices)
        for edge in self.edges:
            if edge.src not in vertex_set or edge.dst not in vertex_set:
                raise ModelError(f"{self.name}: edge {edge.id} has an unknown endpoint")
        edge_ids = {e.id for e in self.edges}
        for face in self.faces:
            if not face.boundary:
                raise ModelError(f"{self.name}: face {face.id} has an empty boundary")
            for edge_id, _ in face.signed_edges():
                if edge_id not in edge_ids:
                    raise ModelError(f"{self.name}: face {face.id} uses unknown edge {edge_id}")
        if (self.strat is None) != (self.poset is None):
            raise ModelError(f"{self.name}: explicit strata need both labels and an order")

    # --- cells -----------------------------------------------------------

    @cached_property
    def cells(self) -> Tuple[str, ...]:
        return self.vertices + tuple(e.id for e in self.edges) + tuple(f.id for f in self.faces)

    @cached_property
    def edge_map(self) -> Dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def face_map(self) -> Dict[str, Face]:
        return {f.id: f for f in self.faces}

    def dimension(self, cell: str) -> int:
        if cell in self.face_map:
            return 2
        if cell in self.edge_map:
            return 1
        if cell in self.vertices:
            return 0
        raise ModelError(f"{self.name}: unknown cell {cell}")

    def step_endpoints(self, step: str) -> Tuple[str, str]:
        edge_id, backwards = unsigned(step)
        if edge_id not in self.edge_map:
            raise ModelError(f"{self.name}: unknown edge {edge_id}")
        edge = self.edge_map[edge_id]
        return (edge.dst, edge.src) if backwards else (edge.src, edge.dst)

    def face_walk(self, face: Face) -> List[str]:
        """Vertices visited along the boundary, first vertex repeated at the end if closed"""
        walk = []
        for step in face.boundary:
            start, end = self.step_endpoints(step)
            if not walk:
                walk.append(start)
            walk.append(end)
        return walk

    def boundary_cells(self, cell: str) -> Tuple[str, ...]:
        if cell in self.edge_map:
            edge = self.edge_map[cell]
            return tuple(sorted({edge.src, edge.dst}))
        if cell in self.face_map:
            found = set()
            for edge_id, _ in self.face_map[cell].signed_edges():
                found.add(edge_id)
                found.update(self.boundary_cells(edge_id))
            return tuple(sorted(found))
        return ()

    def cofaces(self, cell: str) -> Tuple[str, ...]:
        """Cells having this cell in their boundary"""
        return tuple(c for c in self.cells if cell in self.boundary_cells(c))

    def open_star(self, vertex: str) -> FrozenSet[str]:
        return frozenset({vertex, *self.cofaces(vertex)})

    # --- action ----------------------------------------------------------

    @cached_property
    def generator_actions(self) -> Tuple[Dict[str, str], ...]:
        actions = []
        for position in range(len(self.group.generators)):
            partial = self.action.get(position, {})
            unknown = [c for c in list(partial) + list(partial.values()) if c not in self.cells]
            if unknown:
                raise ModelError(f"{self.name}: action of generator {position} mentions unknown cells {unknown}")
            full = {c: partial.get(c, c) for c in self.cells}
            if len(set(full.values())) != len(full):
                raise ModelError(f"{self.name}: action of generator {position} is not a bijection")
            for c, image in full.items():
                if self.dimension(c) != self.dimension(image):
                    raise ModelError(f"{self.name}: generator {position} sends {c} to a cell of another dimension")
            actions.append(full)
        return tuple(actions)

    @cached_property
    def cell_action(self) -> Tuple[Dict[str, str], ...]:
        """Cell permutation for every group element, indexed like group.elements"""
        G = self.group
        gens = self.generator_actions
        identity = {c: c for c in self.cells}
        table: Dict[int, Dict[str, str]] = {0: identity}
        queue = deque([0])
        while queue:
            h = queue.popleft()
            for position, s in enumerate(G.generator_indices):
                g = G.multiply(s, h)
                image = {c: gens[position][table[h][c]] for c in self.cells}
                if g in table:
                    if table[g] != image:
                        raise ModelError(f"{self.name}: action is not a group homomorphism")
                else:
                    table[g] = image
                    queue.append(g)
        return tuple(table[g] for g in range(G.order))

    def act(self, g: int, cell: str) -> str:
        return self.cell_action[g][cell]

    def act_step(self, g: int, step: str) -> str:
        edge_id, backwards = unsigned(step)
        return signed(self.act(g, edge_id), backwards)

    @cached_property
    def _stabilizers(self) -> Dict[str, Subgroup]:
        G = self.group
        return {
            c: Subgroup(G, tuple(g for g in range(G.order) if self.cell_action[g][c] == c))
            for c in self.cells
        }

    def stabilizer(self, cell: str) -> Subgroup:
        return self._stabilizers[cell]

    def orbit(self, cell: str) -> Tuple[str, ...]:
        return tuple(sorted({self.act(g, cell) for g in range(self.group.order)}))

    def orbit_rep(self, cell: str) -> str:
        return self.orbit(cell)[0]

    def is_free(self) -> bool:
        return all(self.stabilizer(v).is_trivial() for v in self.vertices)

    def mover(self, source: str, target: str) -> int:
        """Smallest group element carrying source to target"""
        for g in range(self.group.order):
            if self.act(g, source) == target:
                return g
        raise ModelError(f"{self.name}: {target} is not in the orbit of {source}")

    # --- stratification --------------------------------------------------

    @cached_property
    def class_poset(self) -> ConjClassPoset:
        return conjugacy_class_poset(self.group, opposite=True)

    @cached_property
    def strat_poset(self) -> StratPoset:
        if self.poset is not None:
            return self.poset
        return self.class_poset.as_strat_poset()

    def stabilizer_label(self, cell: str) -> str:
        return self.class_poset.label_of(self.stabilizer(cell))

    @cached_property
    def labels(self) -> Dict[str, str]:
        if self.strat is None:
            return {c: self.stabilizer_label(c) for c in self.cells}
        labels = {}
        for v in self.vertices:
            if v not in self.strat:
                raise ModelError(f"{self.name}: vertex {v} has no stratum label")
            labels[v] = self.strat[v]
        poset = self.strat_poset
        for c in self.cells:
            if c in labels:
                continue
            if c in self.strat:
                labels[c] = self.strat[c]
                continue
            derived = poset.maximum(labels[v] for v in self.boundary_cells(c) if v in self.vertices)
            if derived is None:
                raise ModelError(f"{self.name}: cannot derive a stratum for {c}")
            labels[c] = derived
        unknown = sorted({p for p in labels.values() if p not in poset})
        if unknown:
            raise ModelError(f"{self.name}: labels {unknown} are not in the stratum order")
        return labels

    def label(self, cell: str) -> str:
        return self.labels[cell]

    def in_stratum(self, edge_id: str) -> bool:
        edge = self.edge_map[edge_id]
        return self.label(edge.src) == self.label(edge.dst)

    def stratum_vertices(self, label: str) -> Tuple[str, ...]:
        return tuple(v for v in self.vertices if self.label(v) == label)

    # --- export ----------------------------------------------------------

    def to_dict(self) -> Dict:
        data = {
            "name": self.name,
            "description": self.description,
            "group": self.group.to_dict(),
            "vertices": list(self.vertices),
            "edges": [{"id": e.id, "src": e.src, "dst": e.dst} for e in self.edges],
            "faces": [{"id": f.id, "boundary": list(f.boundary)} for f in self.faces],
            "action": [
                {c: t for c, t in sorted(self.generator_actions[i].items()) if c != t}
                for i in range(len(self.group.generators))
            ],
        }
        if self.strat is not None:
            data["strat"] = dict(sorted(self.strat.items()))
            data["order"] = sorted([a, b] for a, b in self.poset.relation)
            data["strata"] = list(self.poset.elements)
        return data


@dataclass(frozen=True)
class StratMap:
    """Cell labeling of a complex by a poset"""

    source: GComplex
    target: StratPoset
    labeling: Dict[str, str]

    def violations(self) -> List[Tuple[str, str]]:
        """(cell, boundary cell) pairs where a boundary cell is labeled above its coface"""
        bad = []
        for cell in self.source.cells:
            for lower in self.source.boundary_cells(cell):
                if not self.target.leq(self.labeling[lower], self.labeling[cell]):
                    bad.append((cell, lower))
        return bad

    def is_monotone(self) -> bool:
        return not self.violations()

    def compose(self, relabel: Dict[str, str], target: StratPoset) -> "StratMap":
        return StratMap(self.source, target, {c: relabel[p] for c, p in self.labeling.items()})


@dataclass(frozen=True)
class CellMap:
    """Dimension-preserving map of cells between complexes"""

    source: GComplex
    target: GComplex
    mapping: Dict[str, str]

    def __call__(self, cell: str) -> str:
        return self.mapping[cell]

    def map_step(self, step: str) -> str:
        edge_id, backwards = unsigned(step)
        return signed(self.mapping[edge_id], backwards)

    def map_word(self, steps: Sequence[str]) -> Tuple[str, ...]:
        return tuple(self.map_step(s) for s in steps)

    def fiber(self, cell: str) -> Tuple[str, ...]:
        return tuple(c for c in self.source.cells if self.mapping[c] == cell)

    def is_cellular(self) -> bool:
        for edge in self.source.edges:
            image = self.target.edge_map.get(self.mapping[edge.id])
            if image is None:
                return False
            if (self.mapping[edge.src], self.mapping[edge.dst]) != (image.src, image.dst):
                return False
        return True

    def preserves_strata(self) -> bool:
        return all(self.source.label(c) == self.target.label(self.mapping[c]) for c in self.source.cells)
