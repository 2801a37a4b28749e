# orbit_exit_tool/exit_paths.py
"""
Exit-path categories of stratified complexes

Exit(X) is presented by the vertices of X, one generator per directed edge, an
inverse generator "-e" for every edge whose endpoints share a stratum, and the
relations coming from faces and inverses. Hom-sets are computed by bounded
completion of that presentation; a finite result is materialized as a
FiniteCategory whose morphisms carry normal-form words.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

from .complexes import CellMap, GComplex, signed, unsigned
from .errors import (
    CompletionBudgetExceeded,
    InvalidEndLift,
    InvalidWord,
    InvariantBreach,
    NoLift,
    NotMonotone,
)
from .fincat import FiniteCategory, Morphism, opposite, validate_category
from .rewriting import DEFAULT_COMPLETION_BUDGET, Generator, RewritingSystem, Rule, Word
from .stratify import quotient_complex, require_valid
from .verdict import Verdict

logger = logging.getLogger(__name__)

FINITE = "finite"
PRESENTED = "presented"
UNDECIDED = "undecided"


def invert_step(step: str) -> str:
    edge_id, backwards = unsigned(step)
    return signed(edge_id, not backwards)


# --- words ----------------------------------------------------------------------

@dataclass(frozen=True)
class ExitWord:
    """A composable chain of signed edges starting at a vertex"""

    complex: GComplex = field(compare=False, repr=False)
    start: str
    steps: Tuple[str, ...] = ()

    def __post_init__(self):
        X = self.complex
        if self.start not in X.vertices:
            raise InvalidWord(f"{self.start} is not a vertex of {X.name}")
        current = self.start
        for step in self.steps:
            edge_id, _ = unsigned(step)
            if edge_id not in X.edge_map:
                raise InvalidWord(f"{edge_id} is not an edge of {X.name}")
            source, target = X.step_endpoints(step)
            if source != current:
                raise InvalidWord(f"{step} does not start at {current}")
            current = target

    @classmethod
    def parse(cls, X: GComplex, tokens: Sequence[str]) -> "ExitWord":
        """Start vertex followed by signed edge ids"""
        if not tokens:
            raise InvalidWord("a word needs at least its start vertex")
        return cls(X, tokens[0], tuple(tokens[1:]))

    @property
    def vertices(self) -> Tuple[str, ...]:
        walk = [self.start]
        for step in self.steps:
            walk.append(self.complex.step_endpoints(step)[1])
        return tuple(walk)

    @property
    def end(self) -> str:
        return self.vertices[-1]

    @property
    def profile(self) -> Tuple[str, ...]:
        return tuple(self.complex.label(v) for v in self.vertices)

    def check_exit(self) -> None:
        poset = self.complex.strat_poset
        profile = self.profile
        for i, (a, b) in enumerate(zip(profile, profile[1:])):
            if not poset.leq(a, b):
                raise NotMonotone(f"stratum drops from {a} to {b} at step {i} ({self.steps[i]})")

    def is_exit(self) -> bool:
        try:
            self.check_exit()
        except NotMonotone:
            return False
        return True

    def then(self, other: "ExitWord") -> "ExitWord":
        if other.start != self.end:
            raise InvalidWord(f"cannot append a word starting at {other.start} to one ending at {self.end}")
        return ExitWord(self.complex, self.start, self.steps + other.steps)

    def prefix(self, n: int) -> "ExitWord":
        return ExitWord(self.complex, self.start, self.steps[:n])

    def __str__(self) -> str:
        return " ".join((self.start,) + self.steps)


@dataclass(frozen=True)
class Segmentation:
    """
    Vertex-index boundaries a_0 = 0 <= a_1 < ... < a_n = len(word) and one stratum per segment
    The first segment covers vertices [0, a_1], later ones (a_{k-1}, a_k].
    """

    boundaries: Tuple[int, ...]
    strata: Tuple[str, ...]

    def __len__(self) -> int:
        return len(self.strata)

    def pieces(self, w: ExitWord) -> List[Tuple[str, ...]]:
        """Step sub-words, one per segment; their concatenation is w"""
        b = self.boundaries
        return [w.steps[b[k]:b[k + 1]] for k in range(len(self.strata))]


def segmentation(w: ExitWord) -> Segmentation:
    w.check_exit()
    profile = w.profile
    boundaries = [0]
    strata = [profile[0]]
    for i in range(1, len(profile)):
        if profile[i] != strata[-1]:
            boundaries.append(i - 1)
            strata.append(profile[i])
    boundaries.append(len(profile) - 1)
    return Segmentation(tuple(boundaries), tuple(strata))


def path_length(w: ExitWord) -> int:
    """Number of strata the word traverses"""
    return len(segmentation(w))


def is_immediately_exiting(w: ExitWord) -> bool:
    """
    Leaves its first stratum p at the first step and stays in one stratum q > p
    Words in a single stratum count as immediately exiting.
    """
    seg = segmentation(w)
    if len(seg) == 1:
        return True
    return len(seg) == 2 and seg.boundaries[1] == 0


# --- presentation ---------------------------------------------------------------

def exit_generators(X: GComplex) -> List[Generator]:
    """Every edge, then the inverses of edges inside a stratum"""
    generators = [Generator(e.id, e.src, e.dst) for e in X.edges]
    generators += [Generator(signed(e.id, True), e.dst, e.src) for e in X.edges if X.in_stratum(e.id)]
    return generators


def inverse_relations(X: GComplex) -> List[Rule]:
    relations = []
    for e in X.edges:
        if X.in_stratum(e.id):
            inverse = signed(e.id, True)
            relations += [((e.id, inverse), ()), ((inverse, e.id), ())]
    return relations


def face_relations(X: GComplex) -> List[Rule]:
    """
    Two boundary arcs of a face with common endpoints are related when both are
    admissible words and the arcs end in the face's own stratum
    """
    names = {g.name for g in exit_generators(X)}
    relations: List[Rule] = []
    seen: Set[FrozenSet[Word]] = set()
    for face in X.faces:
        steps = face.boundary
        k = len(steps)
        walk = X.face_walk(face)
        top = X.label(face.id)
        for i in range(k):
            for j in range(k):
                if X.label(walk[j]) != top:
                    continue
                if i == j:
                    forward, backward = steps[i:] + steps[:i], ()
                else:
                    forward = tuple(steps[(i + t) % k] for t in range((j - i) % k))
                    backward = tuple(invert_step(steps[(i - 1 - t) % k]) for t in range((i - j) % k))
                if not all(s in names for s in forward + backward):
                    continue
                key = frozenset((forward, backward))
                if forward != backward and key not in seen:
                    seen.add(key)
                    relations.append((forward, backward))
    return relations


def presentation(X: GComplex, budget: int = DEFAULT_COMPLETION_BUDGET) -> RewritingSystem:
    return RewritingSystem(X.vertices, exit_generators(X), inverse_relations(X) + face_relations(X), budget)


@dataclass(eq=False)
class PresentedCategory:
    """
    Exit(X) as a presentation with its completion status
    status is "finite" (category materialized), "presented" (complete but some
    hom-set infinite; word equality still decided by normal forms) or
    "undecided" (completion budget exhausted).
    """

    complex: GComplex
    system: RewritingSystem
    status: str
    category: Optional[FiniteCategory] = None
    infinite_homs: FrozenSet[Tuple[str, str]] = frozenset()

    @property
    def budget_used(self) -> int:
        return self.system.consumed

    @property
    def name(self) -> str:
        return f"Exit({self.complex.name})"

    @property
    def is_decided(self) -> bool:
        return self.status != UNDECIDED

    def _require_decided(self) -> None:
        if not self.is_decided:
            raise CompletionBudgetExceeded(f"{self.name}: completion did not finish", self.budget_used)

    def normal_form(self, word: Sequence[str]) -> Word:
        self._require_decided()
        return self.system.normal_form(tuple(word))

    def equal(self, u: Sequence[str], v: Sequence[str]) -> bool:
        return self.normal_form(u) == self.normal_form(v)

    def morphism(self, start: str, word: Sequence[str]) -> Morphism:
        """Morphism class of a word"""
        w = ExitWord(self.complex, start, tuple(word))
        return Morphism(start, w.end, self.normal_form(w.steps))

    def hom_is_infinite(self, a: str, b: str) -> bool:
        return (a, b) in self.infinite_homs

    def words_from(self, a: str, max_length: int) -> Iterator[Tuple[str, Word]]:
        """Normal forms out of a, shortest first"""
        self._require_decided()
        return self.system.irreducible_words(a, max_length)

    @property
    def enter(self) -> Optional[FiniteCategory]:
        return None if self.category is None else opposite(self.category)


def exit_category(
        X: GComplex,
        budget: int = DEFAULT_COMPLETION_BUDGET,
        materialize: bool = True,
        validate: bool = True,
) -> PresentedCategory:
    """Complete the presentation of Exit(X); materialize it when every hom-set is finite"""
    if validate:
        require_valid(X)
    system = presentation(X, budget)
    try:
        system.complete()
    except CompletionBudgetExceeded as e:
        logger.warning(f"⚠️ Exit({X.name}): completion undecided after {e.consumed} units")
        return PresentedCategory(X, system, UNDECIDED)
    infinite = frozenset(system.infinite_homs())
    if infinite:
        logger.info(f"Exit({X.name}) is presented only: {len(infinite)} infinite hom-sets")
        return PresentedCategory(X, system, PRESENTED, infinite_homs=infinite)
    result = PresentedCategory(X, system, FINITE)
    if materialize:
        result.category = materialize_exit_category(X, system)
    return result


def materialize_exit_category(X: GComplex, system: RewritingSystem) -> FiniteCategory:
    arrows = [
        Morphism(a, target, word)
        for a in X.vertices
        for target, word in system.irreducible_words(a)
    ]
    category = FiniteCategory.generate(
        X.vertices,
        arrows,
        lambda g, f: system.reduce(f + g),
        lambda a: (),
        name=f"Exit({X.name})",
    )
    verdict = validate_category(category)
    if not verdict:
        raise InvariantBreach(f"{category.name} fails the category axioms: {verdict.witness}")
    logger.debug(f"{category.name}: {len(category.objects)} objects, {len(category.morphisms)} morphisms")
    return category


def enumerate_exit_words(X: GComplex, max_length: int, backtracking: bool = False) -> Iterator[ExitWord]:
    """Every generator word up to max_length steps, from every vertex"""
    outgoing: Dict[str, List[Generator]] = {v: [] for v in X.vertices}
    for g in exit_generators(X):
        outgoing[g.source].append(g)
    for v in X.vertices:
        frontier = [((), v)]
        yield ExitWord(X, v, ())
        for _ in range(max_length):
            extended = []
            for steps, end in frontier:
                for g in outgoing[end]:
                    if not backtracking and steps and steps[-1] == invert_step(g.name):
                        continue
                    word = steps + (g.name,)
                    extended.append((word, g.target))
                    yield ExitWord(X, v, word)
            frontier = extended


def invertibility_check(ec: PresentedCategory) -> Verdict:
    """A morphism is invertible exactly when its words stay in one stratum"""
    X = ec.complex
    claim = f"{ec.name}: invertible morphisms are the single-stratum ones"
    if ec.category is None:
        return Verdict.undecided(claim, ec.budget_used, [f"exit category is {ec.status}"])
    for m in ec.category.morphisms:
        invertible = ec.category.inverse_of(m) is not None
        if invertible != (X.label(m.source) == X.label(m.target)):
            return Verdict.refuted(claim, m)
    return Verdict.verified(claim)


@dataclass(frozen=True, eq=False)
class PresentedFunctor:
    """Functor between presented categories given on objects and generators"""

    source: PresentedCategory
    target: PresentedCategory
    object_map: Dict[str, str]
    generator_map: Dict[str, Word]

    def map_word(self, word: Sequence[str]) -> Word:
        return tuple(s for g in word for s in self.generator_map[g])

    def is_functorial(self) -> Verdict:
        """Generator images are composable and every relation maps to equal words"""
        claim = f"{self.source.name} -> {self.target.name} respects the presentation"
        for name, generator in self.source.system.generators.items():
            image = self.generator_map[name]
            try:
                w = ExitWord(self.target.complex, self.object_map[generator.source], image)
            except InvalidWord:
                return Verdict.refuted(claim, ("generator image", name))
            if w.end != self.object_map[generator.target]:
                return Verdict.refuted(claim, ("generator endpoints", name))
        for lhs, rhs in self.source.system.relations:
            if not self.target.equal(self.map_word(lhs), self.map_word(rhs)):
                return Verdict.refuted(claim, ("relation", lhs, rhs))
        return Verdict.verified(claim)


# --- lifting --------------------------------------------------------------------

def _lift_step(X: GComplex, step: str, current: str) -> str:
    """The unique edge over step's orbit arriving at current (leaving it, for inverse steps)"""
    edge_id, backwards = unsigned(step)
    orbit = [X.edge_map[e] for e in X.orbit(edge_id)]
    matches = [e for e in orbit if (e.src if backwards else e.dst) == current]
    if len(matches) != 1:
        raise NoLift(f"{len(matches)} lifts of {step} at {current} in {X.name}")
    return signed(matches[0].id, backwards)


def lift_path(
        X: GComplex,
        w: ExitWord,
        end_lift: str,
        validate: bool = True,
        quotient: Optional[CellMap] = None,
) -> ExitWord:
    """
    The unique word in X over the quotient word w ending at end_lift
    Segments are lifted from the last one backwards; each lifted segment fixes the
    endpoint from which the previous one is lifted.
    """
    if quotient is None:
        _, quotient = quotient_complex(X, validate=validate)
    if end_lift not in X.vertices or quotient(end_lift) != w.end:
        raise InvalidEndLift(f"{end_lift} does not lie over {w.end}")
    current = end_lift
    lifted: List[str] = []
    pieces = segmentation(w).pieces(w) if validate else [w.steps]
    for piece in reversed(pieces):
        for step in reversed(piece):
            step_lift = _lift_step(X, step, current)
            lifted.append(step_lift)
            current = X.step_endpoints(step_lift)[0]
    result = ExitWord(X, current, tuple(reversed(lifted)))
    if quotient.map_word(result.steps) != w.steps or quotient(result.start) != w.start:
        raise InvariantBreach(f"lift of {w} does not project back onto it")
    return result


def all_lifts(X: GComplex, w: ExitWord, quotient: Optional[CellMap] = None) -> List[ExitWord]:
    if quotient is None:
        _, quotient = quotient_complex(X)
    return [lift_path(X, w, y, quotient=quotient) for y in quotient.fiber(w.end)]


def lift_relations_check(
        X: GComplex,
        budget: int = DEFAULT_COMPLETION_BUDGET,
        validate: bool = True,
        upstairs: Optional[PresentedCategory] = None,
) -> Verdict:
    """
    Related quotient words have equal lifts: for each relation u = v of the quotient
    presentation and each lift of the common endpoint, the lifts of u and v agree in Exit(X)
    """
    claim = f"{X.name}: lifts of related quotient words are equal"
    Q, quotient = quotient_complex(X, validate=validate)
    upstairs = upstairs or exit_category(X, budget, materialize=False, validate=validate)
    if not upstairs.is_decided:
        return Verdict.undecided(claim, upstairs.budget_used, ["completion of Exit(X) did not finish"])
    downstairs = presentation(Q, budget)
    checked = 0
    for lhs, rhs in downstairs.relations:
        source, target = downstairs.endpoints(lhs or rhs)
        u, v = ExitWord(Q, source, lhs), ExitWord(Q, source, rhs)
        for y in quotient.fiber(target):
            lift_u = lift_path(X, u, y, validate=validate, quotient=quotient)
            lift_v = lift_path(X, v, y, validate=validate, quotient=quotient)
            checked += 1
            if lift_u.start != lift_v.start or not upstairs.equal(lift_u.steps, lift_v.steps):
                return Verdict.refuted(claim, ((lhs, rhs), y, str(lift_u), str(lift_v)))
    return Verdict.verified(claim, notes=[f"{checked} relation lifts compared"])


def section_property_check(X: GComplex, words: Sequence[ExitWord], quotient: Optional[CellMap] = None) -> Verdict:
    """Lifting the projection of an upstairs word at its own endpoint gives the word back"""
    claim = f"{X.name}: lifting is a section of projection"
    Q, quotient = quotient_complex(X) if quotient is None else (quotient.target, quotient)
    for w in words:
        projected = ExitWord(Q, quotient(w.start), quotient.map_word(w.steps))
        if lift_path(X, projected, w.end, quotient=quotient) != w:
            return Verdict.refuted(claim, str(w))
    return Verdict.verified(claim, notes=[f"{len(words)} words"])
