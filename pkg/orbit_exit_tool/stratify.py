# orbit_exit_tool/stratify.py
"""
Stabilizer stratifications, quotients, basic neighborhoods, stratum coverings,
subdivision, cones and depth maps
"""
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .complexes import CellMap, Edge, Face, GComplex, StratMap, StratPoset, signed
from .errors import EmptyStratum, ExitCategoryUnavailable, ModelError, NotANeighborhood, NotValidated
from .groups import trivial_group
from .validators import DEFAULT_FACE_BOUND, validate_gcomplex
from .verdict import Verdict

logger = logging.getLogger(__name__)


def require_valid(X: GComplex, face_bound: int = DEFAULT_FACE_BOUND) -> None:
    verdict = validate_gcomplex(X, face_bound)
    if not verdict:
        raise NotValidated(f"{X.name} is not admissible: {verdict.witness}")


def stabilizer_stratification(X: GComplex, validate: bool = True) -> StratMap:
    """Each cell labeled by the conjugacy class of its stabilizer, in the opposite subconjugacy order"""
    if validate:
        require_valid(X)
    poset = X.class_poset.as_strat_poset()
    return StratMap(X, poset, {c: X.stabilizer_label(c) for c in X.cells})


def quotient_complex(X: GComplex, validate: bool = True) -> Tuple[GComplex, CellMap]:
    """
    Orbit complex with trivial action; cells named by their minimal orbit member
    Stratum labels descend unchanged.
    """
    if validate:
        require_valid(X)
    rep = {c: X.orbit_rep(c) for c in X.cells}
    vertices = tuple(v for v in X.vertices if rep[v] == v)
    edges = tuple(
        Edge(e.id, rep[e.src], rep[e.dst])
        for e in X.edges if rep[e.id] == e.id
    )
    faces = []
    for face in X.faces:
        if rep[face.id] != face.id:
            continue
        boundary = tuple(signed(rep[edge_id], backwards) for edge_id, backwards in face.signed_edges())
        faces.append(Face(face.id, boundary))
    kept = set(vertices) | {e.id for e in edges} | {f.id for f in faces}
    Q = GComplex(
        name=f"{X.name}/G",
        vertices=vertices,
        edges=edges,
        faces=tuple(faces),
        group=trivial_group(),
        strat={c: X.label(c) for c in kept},
        poset=X.strat_poset,
        description=f"orbit complex of {X.name}",
    )
    logger.debug(f"{Q.name}: {len(vertices)} vertices, {len(edges)} edges, {len(faces)} faces")
    return Q, CellMap(X, Q, rep)


def check_stratification_descends(X: GComplex) -> Verdict:
    """strat o pi = strat cellwise, monotone labels, and G_{g.c} = g G_c g^-1"""
    claim = f"stabilizer stratification of {X.name} descends to the quotient"
    strat = stabilizer_stratification(X)
    if not strat.is_monotone():
        return Verdict.refuted(claim, ("not monotone", strat.violations()[0]))
    Q, quotient_map = quotient_complex(X, validate=False)
    for c in X.cells:
        if Q.label(quotient_map(c)) != X.label(c):
            return Verdict.refuted(claim, ("label changes under the quotient", c))
    G = X.group
    for c in X.cells:
        stabilizer = X.stabilizer(c)
        for g in range(G.order):
            if X.stabilizer(X.act(g, c)) != G.conjugate_subgroup(g, stabilizer):
                return Verdict.refuted(claim, ("stabilizer is not conjugated", c, g))
    return Verdict.verified(claim)


@dataclass(frozen=True)
class NeighborhoodReport:
    failing: Tuple[str, ...]
    witnesses: Dict[str, object]
    translates: Tuple[FrozenSet[str], ...]


def check_basic_neighborhood(X: GComplex, x: str, V: Iterable[str]) -> Verdict:
    """
    Inclusion, Discontinuity, Symmetry and the coproduct decomposition of the saturation
    All four conditions are evaluated; a refutation names every failing one.
    """
    V = frozenset(V)
    if x not in X.vertices:
        raise NotANeighborhood(f"{x} is not a vertex of {X.name}")
    unknown = sorted(c for c in V if c not in X.cells)
    if unknown:
        raise NotANeighborhood(f"{unknown} are not cells of {X.name}")
    if x not in V:
        raise NotANeighborhood(f"{x} does not lie in the given cell set")
    claim = f"{sorted(V)} is a basic neighborhood of {x} in {X.name}"
    G = X.group
    G_x = X.stabilizer(x)

    def translate(g: int) -> FrozenSet[str]:
        return frozenset(X.act(g, c) for c in V)

    witnesses: Dict[str, object] = {}
    for y in sorted(V):
        if not X.stabilizer(y).issubset(G_x):
            witnesses["Inclusion"] = y
            break
    for g in range(G.order):
        if g not in G_x and translate(g) & V:
            witnesses["Discontinuity"] = G.elements[g]
            break
    for g in G_x.members:
        if translate(g) != V:
            witnesses["Symmetry"] = G.elements[g]
            break
    cosets = G.cosets(G_x)
    translates = tuple(translate(cosets.representative(i)) for i in range(len(cosets)))
    saturation = frozenset(X.act(g, c) for g in range(G.order) for c in V)
    disjoint = sum(len(t) for t in translates) == len(frozenset().union(*translates))
    if not disjoint or frozenset().union(*translates) != saturation:
        witnesses["Coproduct"] = sorted(saturation)
    report = NeighborhoodReport(tuple(sorted(witnesses)), witnesses, translates)
    if witnesses:
        return Verdict.refuted(claim, report)
    return Verdict.verified(claim, report)


def stratum_subcomplex(X: GComplex, label: str) -> Tuple[GComplex, CellMap]:
    """Vertices of one stratum with the edges and faces spanned inside it"""
    vertices = tuple(v for v in X.vertices if X.label(v) == label)
    if not vertices:
        raise EmptyStratum(f"{X.name} has no vertex in stratum {label}")
    inside = set(vertices)
    edges = tuple(e for e in X.edges if e.src in inside and e.dst in inside)
    edge_ids = {e.id for e in edges}
    faces = tuple(f for f in X.faces if all(e in edge_ids for e, _ in f.signed_edges()))
    cells = inside | edge_ids | {f.id for f in faces}
    action = {
        position: {c: t for c, t in X.generator_actions[position].items() if c in cells and c != t}
        for position in range(len(X.group.generators))
    }
    strat = None if X.strat is None else {c: X.label(c) for c in cells}
    sub = GComplex(
        name=f"{X.name}[{label}]",
        vertices=vertices,
        edges=edges,
        faces=faces,
        group=X.group,
        action=action,
        strat=strat,
        poset=X.poset,
    )
    return sub, CellMap(sub, X, {c: c for c in sub.cells})


def stratum_covering_check(X: GComplex, label: str, quotient: Optional[CellMap] = None) -> Verdict:
    """The quotient map restricted to one stratum is a graph covering with |G|/|G_x| sheets"""
    sub, _ = stratum_subcomplex(X, label)
    if quotient is None:
        _, quotient = quotient_complex(X, validate=False)
    claim = f"{X.name}: stratum {label} covers its image"
    G = X.group
    sheets = {}
    for v in sub.vertices:
        fiber = quotient.fiber(quotient(v))
        if len(fiber) != G.order // X.stabilizer(v).order:
            return Verdict.refuted(claim, ("fiber size", v, len(fiber)))
        if any(w not in sub.vertices for w in fiber):
            return Verdict.refuted(claim, ("fiber leaves the stratum", v))
        sheets[X.orbit_rep(v)] = len(fiber)
    for edge in sub.edges:
        orbit = [sub.edge_map[e] for e in X.orbit(edge.id)]
        if sheets[X.orbit_rep(edge.src)] != sheets[X.orbit_rep(edge.dst)]:
            return Verdict.refuted(claim, ("sheet count jumps along", edge.id))
        for end, attr in ((edge.dst, "dst"), (edge.src, "src")):
            for v in X.orbit(end):
                count = sum(1 for e in orbit if getattr(e, attr) == v)
                if count != 1:
                    return Verdict.refuted(claim, ("edge lifts", edge.id, v, count))
    notes = [f"{rep}: {n} sheet{'s' if n != 1 else ''}" for rep, n in sorted(sheets.items())]
    return Verdict.verified(claim, sheets, notes)


# --- constructions ------------------------------------------------------------

def _orient(X: GComplex, labels: Dict[str, str], low: str, high: str) -> Tuple[str, str]:
    """Direction of the subdivision edge joining a cell to one of its cofaces"""
    poset = X.strat_poset
    a, b = labels[low], labels[high]
    if a == b or poset.lt(a, b):
        return low, high
    if poset.lt(b, a):
        return high, low
    raise ModelError(f"{X.name}: strata of {low} and {high} are incomparable")


def barycentric_subdivide(X: GComplex) -> GComplex:
    """
    A vertex per cell, an edge per incidence, a triangle per flag (vertex, edge, face)
    Edges point from the less generic to the more generic stratum, ties from lower to higher dimension.
    """
    for edge in X.edges:
        if edge.is_loop:
            raise ModelError(f"{X.name}: loop {edge.id} cannot be subdivided")
    for face in X.faces:
        ids = [e for e, _ in face.signed_edges()]
        if len(set(ids)) != len(ids):
            raise ModelError(f"{X.name}: face {face.id} repeats an edge")
    if X.strat is None:
        labels = {c: X.stabilizer_label(c) for c in X.cells}
    else:
        labels = dict(X.labels)

    incidences: List[Tuple[str, str]] = []
    for edge in X.edges:
        incidences += [(edge.src, edge.id), (edge.dst, edge.id)]
    for face in X.faces:
        for v in sorted({w for w in X.boundary_cells(face.id) if w in X.vertices}):
            incidences.append((v, face.id))
        for edge_id in dict.fromkeys(e for e, _ in face.signed_edges()):
            incidences.append((edge_id, face.id))
    edges = []
    for low, high in incidences:
        src, dst = _orient(X, labels, low, high)
        edges.append(Edge(f"{low}|{high}", src, dst))
    edge_map = {e.id: e for e in edges}

    def step(start: str, low: str, high: str) -> str:
        edge_id = f"{low}|{high}"
        return signed(edge_id, edge_map[edge_id].src != start)

    faces = []
    for face in X.faces:
        for edge_id in dict.fromkeys(e for e, _ in face.signed_edges()):
            edge = X.edge_map[edge_id]
            for v in (edge.src, edge.dst):
                boundary = (step(v, v, edge_id), step(edge_id, edge_id, face.id), step(face.id, v, face.id))
                faces.append(Face(f"{v}|{edge_id}|{face.id}", boundary))

    def move(position: int, cell_id: str) -> str:
        return "|".join(X.generator_actions[position][part] for part in cell_id.split("|"))

    new_cells = list(X.cells) + [e.id for e in edges] + [f.id for f in faces]
    action = {}
    for position in range(len(X.group.generators)):
        images = {c: move(position, c) for c in new_cells}
        action[position] = {c: t for c, t in images.items() if c != t}

    strat = None
    if X.strat is not None:
        poset = X.strat_poset
        strat = {c: labels[c] for c in X.cells}
        for e in edges:
            strat[e.id] = poset.maximum(labels[p] for p in e.id.split("|"))
        for f in faces:
            strat[f.id] = poset.maximum(labels[p] for p in f.id.split("|"))
    subdivided = GComplex(
        name=f"sd({X.name})",
        vertices=tuple(X.cells),
        edges=tuple(edges),
        faces=tuple(faces),
        group=X.group,
        action=action,
        strat=strat,
        poset=X.poset,
        description=f"barycentric subdivision of {X.name}",
    )
    logger.debug(f"{subdivided.name}: {len(subdivided.vertices)} vertices, {len(edges)} edges, {len(faces)} faces")
    return subdivided


def cone_complex(X: GComplex, apex: str = "apex", apex_label: str = "cone") -> GComplex:
    """Cone with a fixed apex, stratified by the left cone of the stratum order"""
    if apex in X.cells:
        raise ModelError(f"{X.name}: apex name {apex} is already a cell")
    spokes = [Edge(f"{apex}>{v}", apex, v) for v in X.vertices]
    fans = [Face(f"{apex}>{e.id}", (f"{apex}>{e.src}", e.id, f"-{apex}>{e.dst}")) for e in X.edges]
    action = {}
    for position in range(len(X.group.generators)):
        moves = dict(X.action.get(position, {}))
        generator = X.generator_actions[position]
        for v in X.vertices:
            if generator[v] != v:
                moves[f"{apex}>{v}"] = f"{apex}>{generator[v]}"
        for e in X.edges:
            if generator[e.id] != e.id:
                moves[f"{apex}>{e.id}"] = f"{apex}>{generator[e.id]}"
        action[position] = moves
    strat = {c: X.label(c) for c in X.cells}
    strat[apex] = apex_label
    strat.update({s.id: X.label(s.dst) for s in spokes})
    strat.update({f.id: X.label(f.id.split(">", 1)[1]) for f in fans})
    return GComplex(
        name=f"cone({X.name})",
        vertices=(apex,) + X.vertices,
        edges=tuple(spokes) + X.edges,
        faces=tuple(fans) + X.faces,
        group=X.group,
        action=action,
        strat=strat,
        poset=X.strat_poset.left_cone(apex_label),
        description=f"cone on {X.name}",
    )


@dataclass(frozen=True)
class DepthMap:
    source: StratPoset
    target: StratPoset
    mapping: Dict[str, str]

    @property
    def depth(self) -> int:
        return len(self.target.elements)

    def is_strictly_monotone(self) -> bool:
        return all(
            self.target.lt(self.mapping[a], self.mapping[b])
            for a, b in self.source.relation
        )


def depth_map(P: StratPoset) -> DepthMap:
    """p -> length of the longest chain ending at p, into the chain [depth of P]"""
    depths = P.depths()
    n = max(depths.values(), default=0)
    return DepthMap(P, StratPoset.chain(n), {p: str(d) for p, d in depths.items()})


def exit_functor_of_map(phi: CellMap, source_exit=None, target_exit=None, budget: Optional[int] = None):
    """Functor Exit(source) -> Exit(target) induced by a stratified cell map"""
    from .exit_paths import DEFAULT_COMPLETION_BUDGET, exit_category
    from .fincat import Functor, validate_functor

    budget = budget or DEFAULT_COMPLETION_BUDGET
    if not phi.is_cellular() or not phi.preserves_strata():
        raise ExitCategoryUnavailable("cell map is not a stratified map of complexes")
    source_exit = source_exit or exit_category(phi.source, budget)
    target_exit = target_exit or exit_category(phi.target, budget)
    for ec in (source_exit, target_exit):
        if ec.category is None:
            raise ExitCategoryUnavailable(f"exit category of {ec.complex.name} is {ec.status}")
    functor = Functor(
        source_exit.category,
        target_exit.category,
        {x: phi(x) for x in source_exit.category.objects},
        {
            m: target_exit.morphism(phi(m.source), phi.map_word(m.payload))
            for m in source_exit.category.morphisms
        },
        name=f"Exit({phi.source.name} -> {phi.target.name})",
    )
    verdict = validate_functor(functor)
    if not verdict:
        raise ExitCategoryUnavailable(f"induced map is not functorial: {verdict.witness}")
    return functor
