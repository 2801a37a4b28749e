# orbit_exit_tool/fincat.py
"""
Finite categories as data
Functors, opposites, EI and right-fibration checks, the category of elements,
pullbacks and isomorphism search. Morphisms are (source, target, payload) triples;
composition tables map (g, f) to g o f for f: a -> b and g: b -> c.
"""
import itertools
import logging
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Dict, Hashable, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .errors import InputError, InvariantBreach, NotAFibration, SearchBoundExceeded
from .verdict import Verdict

logger = logging.getLogger(__name__)

DEFAULT_ISO_BOUND = 200_000


class Morphism(NamedTuple):
    source: Hashable
    target: Hashable
    payload: Hashable


def op(m: Morphism) -> Morphism:
    return Morphism(m.target, m.source, m.payload)


@dataclass(frozen=True)
class FiniteCategory:
    """Objects, morphisms, identities and a total composition table on composable pairs"""

    objects: Tuple[Hashable, ...]
    morphisms: Tuple[Morphism, ...]
    identities: Dict[Hashable, Morphism]
    composition: Dict[Tuple[Morphism, Morphism], Morphism]
    name: str = field(default="", compare=False)

    @classmethod
    def generate(
            cls,
            objects: Iterable[Hashable],
            arrows: Iterable[Morphism],
            compose_fn: Callable[[Hashable, Hashable], Hashable],
            identity_fn: Callable[[Hashable], Hashable],
            name: str = ""
    ) -> "FiniteCategory":
        """
        Build the table from payload-level composition
        compose_fn(g_payload, f_payload) must return the payload of g o f.
        """
        objects = tuple(objects)
        identities = {a: Morphism(a, a, identity_fn(a)) for a in objects}
        morphisms = list(identities.values())
        seen = set(morphisms)
        for m in arrows:
            if m not in seen:
                seen.add(m)
                morphisms.append(m)
        outgoing: Dict[Hashable, List[Morphism]] = {a: [] for a in objects}
        for m in morphisms:
            outgoing[m.source].append(m)
        composition = {}
        for f in morphisms:
            for g in outgoing[f.target]:
                h = Morphism(f.source, g.target, compose_fn(g.payload, f.payload))
                if h not in seen:
                    raise InvariantBreach(f"{name}: composite of {g} and {f} is not a listed morphism")
                composition[(g, f)] = h
        return cls(objects, tuple(morphisms), identities, composition, name)

    @classmethod
    def from_poset(cls, poset, name: str = "") -> "FiniteCategory":
        """One arrow a -> b whenever a <= b"""
        arrows = [Morphism(a, b, None) for a in poset.elements for b in poset.elements if poset.lt(a, b)]
        return cls.generate(poset.elements, arrows, lambda g, f: None, lambda a: None, name)

    @cached_property
    def _homs(self) -> Dict[Tuple[Hashable, Hashable], Tuple[Morphism, ...]]:
        homs: Dict[Tuple[Hashable, Hashable], List[Morphism]] = {}
        for m in self.morphisms:
            homs.setdefault((m.source, m.target), []).append(m)
        return {k: tuple(v) for k, v in homs.items()}

    @cached_property
    def _outgoing(self) -> Dict[Hashable, Tuple[Morphism, ...]]:
        out: Dict[Hashable, List[Morphism]] = {a: [] for a in self.objects}
        for m in self.morphisms:
            out.setdefault(m.source, []).append(m)
        return {a: tuple(v) for a, v in out.items()}

    @cached_property
    def _incoming(self) -> Dict[Hashable, Tuple[Morphism, ...]]:
        into: Dict[Hashable, List[Morphism]] = {a: [] for a in self.objects}
        for m in self.morphisms:
            into.setdefault(m.target, []).append(m)
        return {a: tuple(v) for a, v in into.items()}

    @cached_property
    def _object_set(self) -> frozenset:
        return frozenset(self.objects)

    def __contains__(self, obj: Hashable) -> bool:
        return obj in self._object_set

    def hom(self, a: Hashable, b: Hashable) -> Tuple[Morphism, ...]:
        return self._homs.get((a, b), ())

    def outgoing(self, a: Hashable) -> Tuple[Morphism, ...]:
        return self._outgoing.get(a, ())

    def incoming(self, a: Hashable) -> Tuple[Morphism, ...]:
        return self._incoming.get(a, ())

    def endomorphisms(self, a: Hashable) -> Tuple[Morphism, ...]:
        return self.hom(a, a)

    def identity(self, a: Hashable) -> Morphism:
        return self.identities[a]

    def compose(self, g: Morphism, f: Morphism) -> Morphism:
        """g after f"""
        try:
            return self.composition[(g, f)]
        except KeyError:
            raise ValueError(f"{self.name}: {g} and {f} are not composable") from None

    def is_identity(self, m: Morphism) -> bool:
        return self.identities.get(m.source) == m

    def inverse_of(self, m: Morphism) -> Optional[Morphism]:
        for candidate in self.hom(m.target, m.source):
            if (self.compose(candidate, m) == self.identity(m.source)
                    and self.compose(m, candidate) == self.identity(m.target)):
                return candidate
        return None

    def is_groupoid(self) -> bool:
        return all(self.inverse_of(m) is not None for m in self.morphisms)

    def is_thin(self) -> bool:
        return all(len(v) <= 1 for v in self._homs.values())

    def signature(self, a: Hashable) -> Tuple:
        """Hom-size profile used to prune isomorphism search"""
        return (
            len(self.hom(a, a)),
            tuple(sorted(len(self.hom(a, b)) for b in self.objects if b != a)),
            tuple(sorted(len(self.hom(b, a)) for b in self.objects if b != a)),
        )

    def to_dict(self) -> Dict:
        """Exchange form: morphisms renamed m0, m1, ... in canonical order"""
        names = {m: f"m{i}" for i, m in enumerate(self.morphisms)}
        return {
            "name": self.name,
            "objects": [str(a) for a in self.objects],
            "morphisms": [
                {"id": names[m], "src": str(m.source), "dst": str(m.target)} for m in self.morphisms
            ],
            "identities": {str(a): names[m] for a, m in self.identities.items()},
            "composition": [[names[g], names[f], names[h]] for (g, f), h in self.composition.items()],
        }

    @classmethod
    def from_dict(cls, data: Dict) -> "FiniteCategory":
        try:
            objects = tuple(data["objects"])
            by_id = {m["id"]: Morphism(m["src"], m["dst"], m["id"]) for m in data["morphisms"]}
            identities = {a: by_id[i] for a, i in data["identities"].items()}
            composition = {(by_id[g], by_id[f]): by_id[h] for g, f, h in data["composition"]}
        except (KeyError, TypeError, ValueError) as e:
            raise InputError(f"malformed category description: {e}") from e
        return cls(objects, tuple(by_id.values()), identities, composition, data.get("name", ""))


def terminal_category(name: str = "1") -> FiniteCategory:
    return FiniteCategory.generate(("*",), (), lambda g, f: None, lambda a: None, name)


def validate_category(C: FiniteCategory) -> Verdict:
    """Identity laws, closure of the table and associativity"""
    claim = f"{C.name or 'category'} satisfies the category axioms"
    for a in C.objects:
        ident = C.identities.get(a)
        if ident is None or ident.source != a or ident.target != a or ident not in set(C.morphisms):
            return Verdict.refuted(claim, ("identity", a))
    composable = set()
    for f in C.morphisms:
        for g in C.outgoing(f.target):
            composable.add((g, f))
            h = C.composition.get((g, f))
            if h is None:
                return Verdict.refuted(claim, ("missing composite", g, f))
            if h.source != f.source or h.target != g.target:
                return Verdict.refuted(claim, ("composite endpoints", g, f, h))
    extra = [k for k in C.composition if k not in composable]
    if extra:
        return Verdict.refuted(claim, ("composite of non-composable pair",) + extra[0])
    for f in C.morphisms:
        if C.compose(f, C.identity(f.source)) != f or C.compose(C.identity(f.target), f) != f:
            return Verdict.refuted(claim, ("identity law", f))
    for f in C.morphisms:
        for g in C.outgoing(f.target):
            gf = C.compose(g, f)
            for h in C.outgoing(g.target):
                if C.compose(h, gf) != C.compose(C.compose(h, g), f):
                    return Verdict.refuted(claim, ("associativity", h, g, f))
    return Verdict.verified(claim)


def opposite(C: FiniteCategory) -> FiniteCategory:
    """Transposed homs and reversed composition; an involution on the nose"""
    return FiniteCategory(
        C.objects,
        tuple(op(m) for m in C.morphisms),
        {a: op(m) for a, m in C.identities.items()},
        {(op(f), op(g)): op(h) for (g, f), h in C.composition.items()},
        name=C.name[:-3] if C.name.endswith("^op") else f"{C.name}^op",
    )


def is_EI(C: FiniteCategory) -> Verdict:
    """Every endomorphism invertible; an iso c -> d forces every c -> d to be iso"""
    claim = f"{C.name or 'category'} is EI"
    for a in C.objects:
        for m in C.endomorphisms(a):
            if C.inverse_of(m) is None:
                return Verdict.refuted(claim, ("non-invertible endomorphism", m))
    for a in C.objects:
        for b in C.objects:
            homs = C.hom(a, b)
            isos = [m for m in homs if C.inverse_of(m) is not None]
            if isos and len(isos) != len(homs):
                bad = next(m for m in homs if m not in isos)
                return Verdict.refuted(claim, ("non-iso beside an iso", bad))
    return Verdict.verified(claim)


def group_as_category(G, name: str = "") -> FiniteCategory:
    """One object whose endomorphisms are the group elements, composed by the group law"""
    arrows = [Morphism("*", "*", g) for g in range(G.order)]
    return FiniteCategory.generate(("*",), arrows, G.multiply, lambda a: 0, name or f"B{G.label}")


def full_subcategory(C: FiniteCategory, objects: Sequence[Hashable], name: str = "") -> FiniteCategory:
    keep = [a for a in C.objects if a in set(objects)]
    keep_set = set(keep)
    morphisms = tuple(m for m in C.morphisms if m.source in keep_set and m.target in keep_set)
    composition = {
        (g, f): h for (g, f), h in C.composition.items()
        if f.source in keep_set and f.target in keep_set and g.target in keep_set
    }
    return FiniteCategory(tuple(keep), morphisms, {a: C.identities[a] for a in keep}, composition,
                          name or f"{C.name}|{len(keep)}")


# --- finite set slices ----------------------------------------------------

class PointedSet(NamedTuple):
    elements: Tuple
    point: Hashable


def _elements(obj) -> Tuple:
    return obj.elements if isinstance(obj, PointedSet) else obj


class FinSetSlice:
    """
    Full subcategory of finite (pointed) sets on the listed sets
    Morphisms are computed on demand: payload is the image tuple aligned with the source elements.
    """

    def __init__(self, sets: Iterable[Tuple], pointed: bool = False, name: str = ""):
        self.sets = tuple(dict.fromkeys(tuple(s) for s in sets))
        self.pointed = pointed
        self.name = name or ("FinSet*" if pointed else "FinSet")
        if pointed:
            self.objects = tuple(PointedSet(s, x) for s in self.sets for x in s)
        else:
            self.objects = self.sets
        self._object_set = frozenset(self.objects)

    def __contains__(self, obj) -> bool:
        return obj in self._object_set

    def identity(self, obj) -> Morphism:
        return Morphism(obj, obj, _elements(obj))

    def compose(self, g: Morphism, f: Morphism) -> Morphism:
        if f.target != g.source:
            raise ValueError(f"{self.name}: {g} and {f} are not composable")
        position = {x: i for i, x in enumerate(_elements(g.source))}
        return Morphism(f.source, g.target, tuple(g.payload[position[y]] for y in f.payload))

    def is_morphism(self, m: Morphism) -> bool:
        if m.source not in self or m.target not in self:
            return False
        codomain = set(_elements(m.target))
        if len(m.payload) != len(_elements(m.source)) or not set(m.payload) <= codomain:
            return False
        if self.pointed:
            return m.payload[_elements(m.source).index(m.source.point)] == m.target.point
        return True

    def hom(self, a, b) -> Tuple[Morphism, ...]:
        """All maps a -> b; only sensible for small sets"""
        maps = (Morphism(a, b, images) for images in itertools.product(_elements(b), repeat=len(_elements(a))))
        return tuple(m for m in maps if self.is_morphism(m))


class ForgetBasepoint:
    """FinSet*| -> FinSet| dropping the point; knows its own fibers"""

    def __init__(self, pointed: FinSetSlice, plain: FinSetSlice):
        self.source = pointed
        self.target = plain
        self.name = "forget basepoint"

    def obj(self, p: PointedSet) -> Tuple:
        return p.elements

    def mor(self, m: Morphism) -> Morphism:
        return Morphism(m.source.elements, m.target.elements, m.payload)

    def preimages(self, s: Tuple) -> Tuple[PointedSet, ...]:
        if s not in self.target:
            return ()
        return tuple(PointedSet(s, x) for x in s)

    def morphism_preimages(self, m: Morphism, src: PointedSet, dst: PointedSet) -> Tuple[Morphism, ...]:
        if src.elements != m.source or dst.elements != m.target:
            return ()
        if m.payload[m.source.index(src.point)] != dst.point:
            return ()
        return (Morphism(src, dst, m.payload),)


# --- functors ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Functor:
    """Object and morphism maps out of a finite category"""

    source: FiniteCategory
    target: Any
    object_map: Dict[Hashable, Hashable]
    morphism_map: Dict[Morphism, Morphism]
    name: str = ""

    def obj(self, x: Hashable) -> Hashable:
        return self.object_map[x]

    def mor(self, f: Morphism) -> Morphism:
        return self.morphism_map[f]

    @cached_property
    def _object_fibers(self) -> Dict[Hashable, Tuple]:
        fibers: Dict[Hashable, List] = {}
        for x in self.source.objects:
            fibers.setdefault(self.object_map[x], []).append(x)
        return {k: tuple(v) for k, v in fibers.items()}

    @cached_property
    def _morphism_fibers(self) -> Dict[Morphism, Tuple[Morphism, ...]]:
        fibers: Dict[Morphism, List[Morphism]] = {}
        for f in self.source.morphisms:
            fibers.setdefault(self.morphism_map[f], []).append(f)
        return {k: tuple(v) for k, v in fibers.items()}

    def preimages(self, y: Hashable) -> Tuple:
        return self._object_fibers.get(y, ())

    def morphism_preimages(self, m: Morphism, src: Hashable = None, dst: Hashable = None) -> Tuple[Morphism, ...]:
        return tuple(
            f for f in self._morphism_fibers.get(m, ())
            if (src is None or f.source == src) and (dst is None or f.target == dst)
        )


def validate_functor(F: Functor) -> Verdict:
    claim = f"{F.name or 'functor'} is a functor"
    for x in F.source.objects:
        if x not in F.object_map or F.obj(x) not in F.target:
            return Verdict.refuted(claim, ("object", x))
    for f in F.source.morphisms:
        if f not in F.morphism_map:
            return Verdict.refuted(claim, ("unmapped morphism", f))
        image = F.mor(f)
        if image.source != F.obj(f.source) or image.target != F.obj(f.target):
            return Verdict.refuted(claim, ("endpoints", f, image))
    for x in F.source.objects:
        if F.mor(F.source.identity(x)) != F.target.identity(F.obj(x)):
            return Verdict.refuted(claim, ("identity", x))
    for (g, f), h in F.source.composition.items():
        if F.mor(h) != F.target.compose(F.mor(g), F.mor(f)):
            return Verdict.refuted(claim, ("composition", g, f))
    return Verdict.verified(claim)


def identity_functor(C: FiniteCategory) -> Functor:
    return Functor(C, C, {a: a for a in C.objects}, {m: m for m in C.morphisms}, f"id {C.name}")


def compose_functors(G: Functor, F: Functor, name: str = "") -> Functor:
    """G after F"""
    return Functor(
        F.source,
        G.target,
        {x: G.obj(F.obj(x)) for x in F.source.objects},
        {f: G.mor(F.mor(f)) for f in F.source.morphisms},
        name or f"{G.name} o {F.name}",
    )


def opposite_functor(F: Functor, source_op: Optional[FiniteCategory] = None,
                     target_op: Optional[FiniteCategory] = None) -> Functor:
    return Functor(
        source_op or opposite(F.source),
        target_op or opposite(F.target),
        dict(F.object_map),
        {op(f): op(m) for f, m in F.morphism_map.items()},
        f"{F.name}^op",
    )


def _lift_index(p: Functor) -> Dict[Tuple[Hashable, Morphism], List[Morphism]]:
    index: Dict[Tuple[Hashable, Morphism], List[Morphism]] = {}
    for g in p.source.morphisms:
        index.setdefault((g.target, p.mor(g)), []).append(g)
    return index


def is_right_fibration(p: Functor) -> Verdict:
    """Every f: b -> p(e) has exactly one lift with target e"""
    claim = f"{p.name or 'functor'} is a right fibration"
    index = _lift_index(p)
    for e in p.source.objects:
        for f in p.target.incoming(p.obj(e)):
            count = len(index.get((e, f), ()))
            if count != 1:
                return Verdict.refuted(claim, (e, f, count))
    return Verdict.verified(claim)


# --- presheaves ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Presheaf:
    """
    Contravariant set-valued functor
    action[f] for f: a -> b maps values[b] to values[a]. Over a presented base the
    action is given on generators and checked against the relations.
    """

    base: Any
    values: Dict[Hashable, Tuple]
    action: Dict[Hashable, Dict[Hashable, Hashable]]
    name: str = ""

    def apply(self, f: Hashable, x: Hashable) -> Hashable:
        return self.action[f][x]


def validate_presheaf(F: Presheaf) -> Verdict:
    claim = f"{F.name or 'presheaf'} is functorial"
    C = F.base
    for f in C.morphisms:
        mapping = F.action.get(f)
        if mapping is None or set(mapping) != set(F.values[f.target]):
            return Verdict.refuted(claim, ("domain", f))
        if not set(mapping.values()) <= set(F.values[f.source]):
            return Verdict.refuted(claim, ("codomain", f))
    for a in C.objects:
        if any(F.apply(C.identity(a), x) != x for x in F.values[a]):
            return Verdict.refuted(claim, ("identity", a))
    for (g, f), h in C.composition.items():
        for x in F.values[g.target]:
            if F.apply(h, x) != F.apply(f, F.apply(g, x)):
                return Verdict.refuted(claim, ("composition", g, f, x))
    return Verdict.verified(claim)


def presheaf_to_fibration(F: Presheaf) -> Functor:
    """
    Category of elements with its projection
    Objects (b, x); an arrow (b, F(f)(x')) -> (b', x') with payload (f, x') per f: b -> b'.
    """
    C = F.base
    objects = [(b, x) for b in C.objects for x in F.values[b]]
    arrows = [
        Morphism((f.source, F.apply(f, x)), (f.target, x), (f, x))
        for f in C.morphisms for x in F.values[f.target]
    ]
    elements = FiniteCategory.generate(
        objects,
        arrows,
        lambda g, f: (C.compose(g[0], f[0]), g[1]),
        lambda obj: (C.identity(obj[0]), obj[1]),
        name=f"el({F.name or C.name})",
    )
    return Functor(
        elements,
        C,
        {obj: obj[0] for obj in elements.objects},
        {m: m.payload[0] for m in elements.morphisms},
        name=f"projection {elements.name}",
    )


def fibration_to_presheaf(p: Functor) -> Presheaf:
    """Fibers as values; f acts by sending e' to the source of its unique lift"""
    verdict = is_right_fibration(p)
    if not verdict:
        raise NotAFibration(f"{p.name or 'functor'} is not a right fibration: {verdict.witness}")
    index = _lift_index(p)
    C = p.target
    values = {b: p.preimages(b) for b in C.objects}
    action = {
        f: {e: index[(e, f)][0].source for e in values[f.target]}
        for f in C.morphisms
    }
    return Presheaf(C, values, action, name=f"fibers of {p.name}")


@dataclass(frozen=True)
class NaturalIso:
    components: Dict[Hashable, Dict[Hashable, Hashable]]


def find_presheaf_isomorphism(F: Presheaf, G: Presheaf) -> Verdict:
    """Backtracking over componentwise bijections, checking naturality as objects get fixed"""
    claim = f"{F.name} is naturally isomorphic to {G.name}"
    C = F.base
    objects = list(C.objects)
    for b in objects:
        if len(F.values[b]) != len(G.values[b]):
            return Verdict.refuted(claim, ("sizes differ", b))
    components: Dict[Hashable, Dict] = {}

    def natural_at(b) -> bool:
        for f in itertools.chain(C.outgoing(b), C.incoming(b)):
            if f.source not in components or f.target not in components:
                continue
            eta_src, eta_dst = components[f.source], components[f.target]
            for x in F.values[f.target]:
                if G.apply(f, eta_dst[x]) != eta_src[F.apply(f, x)]:
                    return False
        return True

    def search(i: int) -> bool:
        if i == len(objects):
            return True
        b = objects[i]
        for images in itertools.permutations(G.values[b]):
            components[b] = dict(zip(F.values[b], images))
            if natural_at(b) and search(i + 1):
                return True
            del components[b]
        return False

    if search(0):
        return Verdict.verified(claim, NaturalIso(dict(components)))
    return Verdict.refuted(claim, "no natural bijection")


def random_poset_category(rng: random.Random, max_objects: int = 4) -> FiniteCategory:
    from .complexes import StratPoset

    n = rng.randint(1, max_objects)
    labels = [f"p{i}" for i in range(n)]
    pairs = [(labels[i], labels[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.5]
    return FiniteCategory.from_poset(StratPoset.from_relation(labels, pairs), name=f"poset{n}")


def random_presheaf(rng: random.Random, base: FiniteCategory, max_size: int = 3) -> Presheaf:
    """
    Random presheaf on a poset category, built top-down
    Each new value receives the colimit of the values above it, followed by a random map,
    so functoriality holds by construction.
    """
    values: Dict[Hashable, Tuple] = {}
    action: Dict[Morphism, Dict] = {}
    # a < b implies b has strictly fewer arrows out, so maximal objects come first
    order = sorted(base.objects, key=lambda a: (len(base.outgoing(a)), base.objects.index(a)))
    for a in order:
        above = [m.target for m in base.outgoing(a) if m.target != a]
        parent = {(b, x): (b, x) for b in above for x in values[b]}

        def find(node):
            while parent[node] != node:
                parent[node] = parent[parent[node]]
                node = parent[node]
            return node

        for b in above:
            for c in above:
                for m in base.hom(b, c):
                    if b == c:
                        continue
                    for x in values[c]:
                        parent[find((c, x))] = find((b, action[m][x]))
        classes = sorted({find(node) for node in parent}, key=repr)
        size = rng.randint(1, max_size)
        image_of = {cls: rng.randrange(size) for cls in classes}
        values[a] = tuple(range(size))
        action[base.identity(a)] = {x: x for x in values[a]}
        for m in base.outgoing(a):
            if m.target != a:
                action[m] = {x: image_of[find((m.target, x))] for x in values[m.target]}
    return Presheaf(base, values, action, name=f"random presheaf on {base.name}")


# --- pullbacks ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Pullback:
    category: FiniteCategory
    left: Functor
    right: Functor
    F: Any
    G: Any


def pullback_categories(F: Functor, G: Any, name: str = "") -> Pullback:
    """
    Strict pullback of F: C -> E and G: D -> E
    G only needs to answer fiber queries, so D may be an unmaterialized slice.
    """
    C, D = F.source, G.source
    objects = [(c, d) for c in C.objects for d in G.preimages(F.obj(c))]
    object_set = set(objects)
    arrows = []
    for f in C.morphisms:
        image = F.mor(f)
        for src in objects:
            if src[0] != f.source:
                continue
            for dst in objects:
                if dst[0] != f.target:
                    continue
                for phi in G.morphism_preimages(image, src[1], dst[1]):
                    arrows.append(Morphism(src, dst, (f, phi)))
    category = FiniteCategory.generate(
        objects,
        arrows,
        lambda g, f: (C.compose(g[0], f[0]), D.compose(g[1], f[1])),
        lambda obj: (C.identity(obj[0]), D.identity(obj[1])),
        name=name or f"pullback of {F.name} and {G.name}",
    )
    if set(category.objects) != object_set:
        raise InvariantBreach("pullback objects changed during generation")
    left = Functor(category, C, {o: o[0] for o in objects}, {m: m.payload[0] for m in category.morphisms},
                   name="pullback projection 1")
    right = Functor(category, D, {o: o[1] for o in objects}, {m: m.payload[1] for m in category.morphisms},
                    name="pullback projection 2")
    return Pullback(category, left, right, F, G)


def arrow_category() -> FiniteCategory:
    return FiniteCategory.generate(("0", "1"), [Morphism("0", "1", None)], lambda g, f: None, lambda a: None, "[1]")


def point_and_arrow_cones(pb: Pullback) -> List[Tuple[FiniteCategory, Functor, Functor]]:
    """
    Every cone over the cospan with apex the point or the walking arrow
    Only materialized second legs are supported here.
    """
    F, G = pb.F, pb.G
    cones = []
    point = terminal_category()
    star = point.objects[0]
    for c in F.source.objects:
        for d in G.source.objects:
            if F.obj(c) == G.obj(d):
                cones.append((
                    point,
                    Functor(point, F.source, {star: c}, {point.identity(star): F.source.identity(c)}),
                    Functor(point, G.source, {star: d}, {point.identity(star): G.source.identity(d)}),
                ))
    arrow = arrow_category()
    edge = arrow.hom("0", "1")[0]
    for f in F.source.morphisms:
        for g in G.source.morphisms:
            if F.mor(f) != G.mor(g):
                continue
            cones.append((
                arrow,
                Functor(arrow, F.source, {"0": f.source, "1": f.target},
                        {arrow.identity("0"): F.source.identity(f.source),
                         arrow.identity("1"): F.source.identity(f.target), edge: f}),
                Functor(arrow, G.source, {"0": g.source, "1": g.target},
                        {arrow.identity("0"): G.source.identity(g.source),
                         arrow.identity("1"): G.source.identity(g.target), edge: g}),
            ))
    return cones


def check_pullback_universal_property(pb: Pullback, cones: Iterable[Tuple[FiniteCategory, Functor, Functor]]) -> Verdict:
    """
    Each given cone factors through the pullback by exactly one mediating functor
    Only the supplied test cones are checked; point_and_arrow_cones gives the point and arrow apexes.
    """
    claim = f"{pb.category.name} mediates every test cone"
    P = pb.category
    checked = 0
    apexes = set()
    for apex, left, right in cones:
        object_map = {}
        for x in apex.objects:
            if pb.F.obj(left.obj(x)) != pb.G.obj(right.obj(x)):
                return Verdict.refuted(claim, ("cone does not commute", x))
            matches = [o for o in P.objects if pb.left.obj(o) == left.obj(x) and pb.right.obj(o) == right.obj(x)]
            if len(matches) != 1:
                return Verdict.refuted(claim, ("mediating object", x, len(matches)))
            object_map[x] = matches[0]
        morphism_map = {}
        for m in apex.morphisms:
            matches = [
                h for h in P.hom(object_map[m.source], object_map[m.target])
                if pb.left.mor(h) == left.mor(m) and pb.right.mor(h) == right.mor(m)
            ]
            if len(matches) != 1:
                return Verdict.refuted(claim, ("mediating morphism", m, len(matches)))
            morphism_map[m] = matches[0]
        mediator = Functor(apex, P, object_map, morphism_map, "mediator")
        if not validate_functor(mediator):
            return Verdict.refuted(claim, ("mediator is not a functor", apex.name))
        checked += 1
        apexes.add(apex.name)
    return Verdict.verified(claim, notes=[f"{checked} test cones checked, apexes {', '.join(sorted(apexes))}"])


# --- isomorphism search ---------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CategoryIsomorphism:
    forward: Functor
    backward: Functor


class _IsoSearch:
    """Object bijection by backtracking, then morphism bijection with composition propagation"""

    def __init__(self, C: FiniteCategory, D: FiniteCategory, bound: int, over: Sequence[Tuple[Functor, Functor]]):
        self.C, self.D = C, D
        self.bound = bound
        self.over = list(over)
        self.nodes = 0
        self.obj_map: Dict[Hashable, Hashable] = {}
        self.mor_map: Dict[Morphism, Morphism] = {}
        self.used: Dict[Morphism, Morphism] = {}

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.bound:
            raise SearchBoundExceeded(f"isomorphism search passed {self.bound} nodes", self.nodes)

    def _object_candidates(self, a) -> List:
        signature = self.C.signature(a)
        return [
            d for d in self.D.objects
            if self.D.signature(d) == signature and all(Q.obj(d) == P.obj(a) for P, Q in self.over)
        ]

    def _consistent(self, a, d) -> bool:
        for b, e in self.obj_map.items():
            if len(self.C.hom(a, b)) != len(self.D.hom(d, e)) or len(self.C.hom(b, a)) != len(self.D.hom(e, d)):
                return False
        return len(self.C.hom(a, a)) == len(self.D.hom(d, d))

    def run(self) -> bool:
        candidates = {a: self._object_candidates(a) for a in self.C.objects}
        order = sorted(self.C.objects, key=lambda a: (len(candidates[a]), self.C.objects.index(a)))
        return self._assign_objects(order, 0, candidates, set())

    def _assign_objects(self, order, i, candidates, taken) -> bool:
        if i == len(order):
            return self._assign_morphisms()
        a = order[i]
        for d in candidates[a]:
            if d in taken or not self._consistent(a, d):
                continue
            self._tick()
            self.obj_map[a] = d
            taken.add(d)
            if self._assign_objects(order, i + 1, candidates, taken):
                return True
            taken.discard(d)
            del self.obj_map[a]
        return False

    def _assign_morphisms(self) -> bool:
        self.mor_map, self.used = {}, {}
        trail: List[Morphism] = []
        for a in self.C.objects:
            if not self._propagate(self.C.identity(a), self.D.identity(self.obj_map[a]), trail):
                self._undo(trail, 0)
                return False
        pending = [f for f in self.C.morphisms if not self.C.is_identity(f)]
        if self._search_morphisms(pending, 0, trail):
            return True
        self._undo(trail, 0)
        return False

    def _search_morphisms(self, pending, i, trail) -> bool:
        while i < len(pending) and pending[i] in self.mor_map:
            i += 1
        if i == len(pending):
            return True
        f = pending[i]
        for m in self.D.hom(self.obj_map[f.source], self.obj_map[f.target]):
            if m in self.used or any(Q.mor(m) != P.mor(f) for P, Q in self.over):
                continue
            self._tick()
            mark = len(trail)
            if self._propagate(f, m, trail) and self._search_morphisms(pending, i + 1, trail):
                return True
            self._undo(trail, mark)
        return False

    def _propagate(self, f: Morphism, m: Morphism, trail: List[Morphism]) -> bool:
        stack = [(f, m)]
        while stack:
            f, m = stack.pop()
            known = self.mor_map.get(f)
            if known is not None:
                if known != m:
                    return False
                continue
            if self.used.get(m, f) != f:
                return False
            if m.source != self.obj_map[f.source] or m.target != self.obj_map[f.target]:
                return False
            if any(Q.mor(m) != P.mor(f) for P, Q in self.over):
                return False
            self.mor_map[f] = m
            self.used[m] = f
            trail.append(f)
            for g in self.C.outgoing(f.target):
                if g in self.mor_map:
                    stack.append((self.C.compose(g, f), self.D.compose(self.mor_map[g], m)))
            for e in self.C.incoming(f.source):
                if e in self.mor_map:
                    stack.append((self.C.compose(f, e), self.D.compose(m, self.mor_map[e])))
        return True

    def _undo(self, trail: List[Morphism], mark: int) -> None:
        while len(trail) > mark:
            f = trail.pop()
            m = self.mor_map.pop(f)
            del self.used[m]


def find_isomorphism(
        C: FiniteCategory,
        D: FiniteCategory,
        bound: int = DEFAULT_ISO_BOUND,
        over: Sequence[Tuple[Functor, Functor]] = ()
) -> Verdict:
    """
    Search for mutually inverse functors C <-> D
    over holds pairs (P: C -> E, Q: D -> E); the forward functor must satisfy Q o F = P.
    """
    claim = f"{C.name} is isomorphic to {D.name}"
    if len(C.objects) != len(D.objects) or len(C.morphisms) != len(D.morphisms):
        return Verdict.refuted(claim, ("sizes", (len(C.objects), len(C.morphisms)),
                                       (len(D.objects), len(D.morphisms))))
    if sorted(map(C.signature, C.objects)) != sorted(map(D.signature, D.objects)):
        return Verdict.refuted(claim, "hom-size profiles differ")
    search = _IsoSearch(C, D, bound, over)
    try:
        found = search.run()
    except SearchBoundExceeded as e:
        logger.warning(f"⚠️ {claim}: undecided after {e.consumed} search nodes")
        return Verdict.undecided(claim, e.consumed, [str(e)])
    logger.debug(f"{claim}: {search.nodes} search nodes")
    if not found:
        return Verdict.refuted(claim, "exhaustive search found no isomorphism")
    forward = Functor(C, D, dict(search.obj_map), dict(search.mor_map), f"{C.name} -> {D.name}")
    backward = Functor(D, C, {d: a for a, d in search.obj_map.items()},
                       {m: f for f, m in search.mor_map.items()}, f"{D.name} -> {C.name}")
    for functor in (forward, backward):
        verdict = validate_functor(functor)
        if not verdict:
            raise InvariantBreach(f"isomorphism search produced a non-functor: {verdict.witness}")
    return Verdict.verified(claim, CategoryIsomorphism(forward, backward))
