# orbit_exit_tool/groups.py
"""
Finite permutation groups: subgroups, conjugacy classes, Weyl groups, G-sets
Permutations are one-line image tuples and compose right-to-left:
(p * q)[i] = p[q[i]]
"""
import itertools
import json
import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from .errors import GroupTooLarge, InputError, NotASubgroup

logger = logging.getLogger(__name__)

Perm = Tuple[int, ...]

DEFAULT_GROUP_BOUND = 360


def compose(p: Perm, q: Perm) -> Perm:
    """p after q"""
    return tuple(p[i] for i in q)


def invert(p: Perm) -> Perm:
    inverse = [0] * len(p)
    for i, image in enumerate(p):
        inverse[image] = i
    return tuple(inverse)


def _check_permutation(images: Sequence[int], degree: int) -> Perm:
    perm = tuple(int(i) for i in images)
    if len(perm) != degree or sorted(perm) != list(range(degree)):
        raise InputError(f"{list(images)} is not a permutation of {degree} points")
    return perm


@dataclass(frozen=True)
class PermGroup:
    """A finite group generated by permutations of 0..degree-1"""

    degree: int
    generators: Tuple[Perm, ...]
    name: str = field(default="", compare=False)
    bound: int = field(default=DEFAULT_GROUP_BOUND, compare=False, repr=False)

    def __post_init__(self):
        if self.degree < 1:
            raise InputError(f"group degree must be positive, got {self.degree}")
        checked = tuple(_check_permutation(g, self.degree) for g in self.generators)
        object.__setattr__(self, "generators", checked)

    @cached_property
    def identity(self) -> Perm:
        return tuple(range(self.degree))

    @cached_property
    def elements(self) -> Tuple[Perm, ...]:
        """Canonical sorted enumeration; the identity is lexicographically first"""
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            current = queue.popleft()
            for generator in self.generators:
                product = compose(generator, current)
                if product not in seen:
                    seen.add(product)
                    if len(seen) > self.bound:
                        raise GroupTooLarge(len(seen), self.bound)
                    queue.append(product)
        logger.debug(f"Closed group {self.name or self.generators} at order {len(seen)}")
        return tuple(sorted(seen))

    @cached_property
    def index(self) -> Dict[Perm, int]:
        return {perm: i for i, perm in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def table(self) -> Tuple[Tuple[int, ...], ...]:
        """table[i][j] is the index of elements[i] * elements[j]"""
        elements, index = self.elements, self.index
        return tuple(
            tuple(index[compose(a, b)] for b in elements)
            for a in elements
        )

    @cached_property
    def inverses(self) -> Tuple[int, ...]:
        return tuple(self.index[invert(p)] for p in self.elements)

    @cached_property
    def generator_indices(self) -> Tuple[int, ...]:
        return tuple(self.index[g] for g in self.generators)

    def multiply(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inverse(self, i: int) -> int:
        return self.inverses[i]

    def conjugate(self, g: int, h: int) -> int:
        """g h g^-1"""
        return self.multiply(self.multiply(g, h), self.inverse(g))

    def element_order(self, i: int) -> int:
        order, current = 1, i
        while current != 0:
            current = self.multiply(current, i)
            order += 1
        return order

    def is_abelian(self) -> bool:
        table = self.table
        return all(table[i][j] == table[j][i] for i in range(self.order) for j in range(i))

    def closure(self, members: Iterable[int]) -> FrozenSet[int]:
        """Subgroup generated by the given element indices"""
        gens = sorted(set(members))
        found = {0}
        queue = deque([0])
        while queue:
            current = queue.popleft()
            for g in gens:
                product = self.multiply(g, current)
                if product not in found:
                    found.add(product)
                    queue.append(product)
        return frozenset(found)

    def subgroup(self, members: Iterable[int]) -> "Subgroup":
        """Subgroup with exactly these members; NotASubgroup unless closed"""
        members = frozenset(members)
        if not members or any(m < 0 or m >= self.order for m in members):
            raise NotASubgroup(f"{sorted(members)} are not element indices of {self.label}")
        if 0 not in members or self.closure(members) != members:
            raise NotASubgroup(f"{sorted(members)} is not closed in {self.label}")
        return Subgroup(self, tuple(sorted(members)))

    def generated_subgroup(self, perms: Iterable[Sequence[int]]) -> "Subgroup":
        try:
            indices = [self.index[tuple(p)] for p in perms]
        except KeyError as e:
            raise NotASubgroup(f"{list(e.args[0])} is not an element of {self.label}") from e
        return Subgroup(self, tuple(sorted(self.closure(indices))))

    @property
    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, (0,))

    @property
    def whole(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.order)))

    @property
    def label(self) -> str:
        return self.name or f"<{len(self.generators)} generators on {self.degree} points>"

    # Cosets are cached per subgroup; lists are indexed by coset number.

    @cached_property
    def _coset_cache(self) -> Dict[Tuple[int, ...], "Cosets"]:
        return {}

    def cosets(self, H: "Subgroup") -> "Cosets":
        """Left cosets gH sorted by their smallest member; coset 0 is H"""
        self._require_member(H)
        cached = self._coset_cache.get(H.members)
        if cached is not None:
            return cached
        assigned: Dict[int, int] = {}
        blocks: List[Tuple[int, ...]] = []
        for g in range(self.order):
            if g in assigned:
                continue
            block = tuple(sorted(self.multiply(g, h) for h in H.members))
            for member in block:
                assigned[member] = len(blocks)
            blocks.append(block)
        cosets = Cosets(tuple(blocks), assigned)
        self._coset_cache[H.members] = cosets
        return cosets

    def normalizer(self, H: "Subgroup") -> "Subgroup":
        self._require_member(H)
        members = set(H.members)
        normal = [
            g for g in range(self.order)
            if {self.conjugate(g, h) for h in H.members} == members
        ]
        return Subgroup(self, tuple(normal))

    def conjugate_subgroup(self, g: int, H: "Subgroup") -> "Subgroup":
        return Subgroup(self, tuple(sorted({self.conjugate(g, h) for h in H.members})))

    def _require_member(self, H: "Subgroup") -> None:
        if H.parent != self:
            raise NotASubgroup(f"subgroup of {H.parent.label} used with {self.label}")

    def to_dict(self) -> Dict:
        return {"degree": self.degree, "generators": [list(g) for g in self.generators], "name": self.name}


@dataclass(frozen=True)
class Cosets:
    """Left cosets of a subgroup with a member -> coset lookup"""

    blocks: Tuple[Tuple[int, ...], ...]
    lookup: Dict[int, int] = field(compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.blocks)

    def of(self, g: int) -> int:
        return self.lookup[g]

    def representative(self, i: int) -> int:
        return self.blocks[i][0]


@dataclass(frozen=True)
class Subgroup:
    """A subgroup stored as sorted element indices of its parent"""

    parent: PermGroup = field(compare=False, repr=False)
    members: Tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    @property
    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return len(self.members), self.members

    def __contains__(self, g: int) -> bool:
        return g in self.members

    def issubset(self, other: "Subgroup") -> bool:
        return set(self.members) <= set(other.members)

    def is_trivial(self) -> bool:
        return self.members == (0,)

    def intersection(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.parent, tuple(sorted(set(self.members) & set(other.members))))

    def as_group(self, name: str = "") -> PermGroup:
        perms = tuple(self.parent.elements[m] for m in self.members)
        return PermGroup(self.parent.degree, perms, name=name, bound=self.parent.bound)


def enumerate_subgroups(G: PermGroup) -> List[Subgroup]:
    """
    All subgroups in canonical order (size, then member list)
    Breadth-first closure over cyclic extensions starting at the trivial subgroup.
    """
    if G.order > G.bound:
        raise GroupTooLarge(G.order, G.bound)
    start = frozenset({0})
    found = {start}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for g in range(G.order):
            if g in current:
                continue
            extended = G.closure(current | {g})
            if extended not in found:
                found.add(extended)
                queue.append(extended)
    subgroups = [Subgroup(G, tuple(sorted(members))) for members in found]
    subgroups.sort(key=lambda H: H.sort_key)
    logger.debug(f"{G.label}: {len(subgroups)} subgroups")
    return subgroups


def is_subconjugate(G: PermGroup, H: Subgroup, K: Subgroup) -> bool:
    """Some conjugate gHg^-1 is contained in K"""
    if K.order % H.order:
        return False
    target = set(K.members)
    return any(
        all(G.conjugate(g, h) in target for h in H.members)
        for g in range(G.order)
    )


@dataclass(frozen=True)
class ConjClassPoset:
    """Conjugacy classes of subgroups ordered by subconjugacy"""

    group: PermGroup = field(repr=False)
    classes: Tuple[Tuple[Subgroup, ...], ...]
    labels: Tuple[str, ...]
    relation: FrozenSet[Tuple[int, int]] = field(repr=False)
    opposite: bool = False

    def leq(self, i: int, j: int) -> bool:
        if self.opposite:
            i, j = j, i
        return (i, j) in self.relation

    def class_index(self, H: Subgroup) -> int:
        for i, members in enumerate(self.classes):
            if H in members:
                return i
        raise NotASubgroup(f"{H.members} is not a subgroup of {self.group.label}")

    def label_of(self, H: Subgroup) -> str:
        return self.labels[self.class_index(H)]

    def subgroup_label(self, H: Subgroup) -> str:
        """Class label, suffixed with the member position when the class is not a singleton"""
        i = self.class_index(H)
        if len(self.classes[i]) == 1:
            return self.labels[i]
        return f"{self.labels[i]}.{self.classes[i].index(H)}"

    def flipped(self) -> "ConjClassPoset":
        return ConjClassPoset(self.group, self.classes, self.labels, self.relation, not self.opposite)

    def is_antisymmetric(self) -> bool:
        return all(
            i == j or (j, i) not in self.relation
            for i, j in self.relation
        )

    def as_strat_poset(self):
        from .complexes import StratPoset

        pairs = [
            (self.labels[i], self.labels[j])
            for i in range(len(self.classes)) for j in range(len(self.classes))
            if i != j and self.leq(i, j)
        ]
        return StratPoset.from_relation(self.labels, pairs)


def _class_labels(classes: Sequence[Sequence[Subgroup]]) -> Tuple[str, ...]:
    by_order: Dict[int, int] = {}
    for members in classes:
        by_order[members[0].order] = by_order.get(members[0].order, 0) + 1
    labels, seen = [], {}
    for members in classes:
        order = members[0].order
        if by_order[order] == 1:
            labels.append(str(order))
        else:
            position = seen.get(order, 0)
            seen[order] = position + 1
            labels.append(f"{order}{chr(ord('a') + position)}")
    return tuple(labels)


def conjugacy_class_poset(G: PermGroup, opposite: bool = False) -> ConjClassPoset:
    subgroups = enumerate_subgroups(G)
    assigned = set()
    classes: List[Tuple[Subgroup, ...]] = []
    for H in subgroups:
        if H in assigned:
            continue
        conjugates = {G.conjugate_subgroup(g, H) for g in range(G.order)}
        members = tuple(sorted(conjugates, key=lambda S: S.sort_key))
        assigned.update(members)
        classes.append(members)
    relation = frozenset(
        (i, j)
        for i, lower in enumerate(classes)
        for j, upper in enumerate(classes)
        if is_subconjugate(G, lower[0], upper[0])
    )
    poset = ConjClassPoset(G, tuple(classes), _class_labels(classes), relation, opposite)
    logger.debug(f"{G.label}: {len(classes)} conjugacy classes of subgroups")
    return poset


def weyl_group(G: PermGroup, H: Subgroup) -> PermGroup:
    """
    N_G(H)/H acting on the cosets of H by n: gH -> g n^-1 H
    The assignment n -> (gH -> g n^-1 H) is a homomorphism with kernel H.
    """
    if H.parent != G:
        raise NotASubgroup(f"subgroup of {H.parent.label} used with {G.label}")
    G.subgroup(H.members)
    normalizer = G.normalizer(H)
    cosets = G.cosets(H)
    perms = []
    for n in normalizer.members:
        n_inv = G.inverse(n)
        image = tuple(
            cosets.of(G.multiply(cosets.representative(i), n_inv))
            for i in range(len(cosets))
        )
        perms.append(image)
    generators = tuple(sorted(set(perms))) or (tuple(range(len(cosets))),)
    return PermGroup(len(cosets), generators, name=f"W({len(H.members)})", bound=G.bound)


@dataclass(frozen=True)
class GSet:
    """A finite set with an action table: action[g][point] = g . point"""

    group: PermGroup = field(repr=False)
    points: Tuple
    action: Tuple[Dict, ...] = field(repr=False)

    def act(self, g: int, x):
        return self.action[g][x]

    def is_valid(self) -> bool:
        G = self.group
        if any(self.act(0, x) != x for x in self.points):
            return False
        return all(
            self.act(G.multiply(g, h), x) == self.act(g, self.act(h, x))
            for g in range(G.order) for h in G.generator_indices for x in self.points
        )

    def orbit(self, x) -> Tuple:
        return tuple(sorted({self.act(g, x) for g in range(self.group.order)}))

    def is_transitive(self) -> bool:
        return not self.points or len(self.orbit(self.points[0])) == len(self.points)

    def stabilizer(self, x) -> Subgroup:
        return Subgroup(self.group, tuple(g for g in range(self.group.order) if self.act(g, x) == x))

    @classmethod
    def from_cosets(cls, G: PermGroup, K: Subgroup) -> "GSet":
        """G/K with points numbered as in PermGroup.cosets"""
        cosets = G.cosets(K)
        action = tuple(
            {i: cosets.of(G.multiply(g, cosets.representative(i))) for i in range(len(cosets))}
            for g in range(G.order)
        )
        return cls(G, tuple(range(len(cosets))), action)


def fixed_points(X: GSet, H: Subgroup) -> Tuple:
    return tuple(x for x in X.points if all(X.act(h, x) == x for h in H.members))


def equivariant_maps(G: PermGroup, H: Subgroup, X: GSet) -> List[Tuple]:
    """
    Every G-map G/H -> X, one per admissible image of eH, as a tuple over cosets of H
    Candidates are tried for every point of X; only well-defined equivariant ones survive.
    """
    cosets = G.cosets(H)
    maps = []
    for x in X.points:
        images = []
        well_defined = True
        for block in cosets.blocks:
            values = {X.act(g, x) for g in block}
            if len(values) != 1:
                well_defined = False
                break
            images.append(values.pop())
        if not well_defined:
            continue
        image = tuple(images)
        equivariant = all(
            image[cosets.of(G.multiply(s, cosets.representative(i)))] == X.act(s, image[i])
            for s in G.generator_indices for i in range(len(cosets))
        )
        if equivariant:
            maps.append(image)
    return maps


# --- constructors -----------------------------------------------------------

def trivial_group() -> PermGroup:
    return PermGroup(1, ((0,),), name="1")


def cyclic_group(n: int) -> PermGroup:
    if n == 1:
        return trivial_group()
    return PermGroup(n, (tuple((i + 1) % n for i in range(n)),), name=f"C{n}")


def symmetric_group(n: int) -> PermGroup:
    if n == 1:
        return trivial_group()
    swap = (1, 0) + tuple(range(2, n))
    cycle = tuple((i + 1) % n for i in range(n))
    return PermGroup(n, (swap, cycle), name=f"S{n}")


def dihedral_group(n: int) -> PermGroup:
    """Symmetries of the n-gon acting on its vertices"""
    rotation = tuple((i + 1) % n for i in range(n))
    reflection = tuple((-i) % n for i in range(n))
    return PermGroup(n, (rotation, reflection), name=f"D{n}")


def direct_product(G: PermGroup, H: PermGroup, name: str = "") -> PermGroup:
    """G x H acting on the disjoint union of their points"""
    shift = G.degree
    gens = [g + tuple(range(shift, shift + H.degree)) for g in G.generators]
    gens += [tuple(range(shift)) + tuple(h_i + shift for h_i in h) for h in H.generators]
    return PermGroup(G.degree + H.degree, tuple(gens), name=name or f"{G.label}x{H.label}",
                     bound=max(G.bound, H.bound))


def _partitions(n: int, largest: Optional[int] = None) -> Iterable[Tuple[int, ...]]:
    largest = largest or n
    if n == 0:
        yield ()
        return
    for part in range(min(n, largest), 0, -1):
        for rest in _partitions(n - part, part):
            yield (part,) + rest


def _prime_powers(n: int) -> Dict[int, int]:
    factors, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def abelian_groups_of_order(n: int) -> List[PermGroup]:
    """One representative per isomorphism class, as products of cyclic groups"""
    if n == 1:
        return [trivial_group()]
    per_prime = []
    for p, k in sorted(_prime_powers(n).items()):
        per_prime.append([tuple(p ** e for e in partition) for partition in _partitions(k)])
    groups = []
    for choice in itertools.product(*per_prime):
        factors = sorted(f for part in choice for f in part)
        group = cyclic_group(factors[0])
        for f in factors[1:]:
            group = direct_product(group, cyclic_group(f))
        name = "x".join(f"C{f}" for f in factors)
        groups.append(PermGroup(group.degree, group.generators, name=name))
    return groups


def abelian_groups_up_to(order: int) -> List[PermGroup]:
    return [G for n in range(1, order + 1) for G in abelian_groups_of_order(n)]


def identify_group(G: PermGroup) -> str:
    """Short isomorphism-type name for small groups"""
    n = G.order
    if n == 1:
        return "1"
    orders = [G.element_order(i) for i in range(n)]
    if n in orders:
        return f"C{n}"
    involutions = orders.count(2)
    if n == 4:
        return "K4"
    if n == 6:
        return "S3"
    if n == 8:
        return {5: "D4", 1: "Q8", 3: "C2xC4", 7: "C2^3"}.get(involutions, f"order {n}")
    if G.is_abelian():
        return f"abelian of order {n}"
    return f"order {n}"


BUILTIN_GROUPS: Dict[str, Tuple[int, Tuple[Perm, ...]]] = {
    "1": (1, ((0,),)),
    "C2": (2, ((1, 0),)),
    "C3": (3, ((1, 2, 0),)),
    "C4": (4, ((1, 2, 3, 0),)),
    "K4": (4, ((1, 0, 3, 2), (2, 3, 0, 1))),
    "S3": (3, ((1, 0, 2), (1, 2, 0))),
    "D4": (4, ((1, 2, 3, 0), (0, 3, 2, 1))),
}


def builtin_group(name: str, bound: int = DEFAULT_GROUP_BOUND) -> PermGroup:
    if name not in BUILTIN_GROUPS:
        raise InputError(f"unknown built-in group '{name}' (choose from {', '.join(BUILTIN_GROUPS)})")
    degree, generators = BUILTIN_GROUPS[name]
    return PermGroup(degree, generators, name=name, bound=bound)


def group_from_dict(data: Dict, bound: int = DEFAULT_GROUP_BOUND) -> PermGroup:
    try:
        degree = int(data["degree"])
        generators = tuple(tuple(g) for g in data["generators"])
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"malformed group description: {e}") from e
    if not generators:
        generators = (tuple(range(degree)),)
    return PermGroup(degree, generators, name=str(data.get("name", "")), bound=bound)


def load_group(source: Union[str, Path, Dict], bound: int = DEFAULT_GROUP_BOUND) -> PermGroup:
    """Built-in name, path to a group file, or an already parsed dict"""
    if isinstance(source, dict):
        return group_from_dict(source, bound)
    if str(source) in BUILTIN_GROUPS:
        return builtin_group(str(source), bound)
    path = Path(source)
    if not path.exists():
        raise InputError(f"'{source}' is neither a built-in group nor a readable file")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: {e}") from e
    return group_from_dict(data, bound)
