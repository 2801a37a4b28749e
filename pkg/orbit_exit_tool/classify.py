# orbit_exit_tool/classify.py
"""
Classification of exit-path categories of G-spaces

Pi: Exit(M) -> Exit(M/G) is checked to be a right fibration, its fibers give the
presheaf Omega of G-sets on Exit(M/G), Omega is identified with a functor into the
orbit category, and Enter(M) is compared with the pullback of the forgetful
functor from the pointed orbit category along it.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple, Union

from .complexes import CellMap, GComplex
from .errors import (
    ActionNotFree,
    BudgetExceeded,
    EquivarianceFailure,
    ExitCategoryUnavailable,
    NoLift,
    NotAFibration,
    OrbitExitError,
)
from .exit_paths import (
    ExitWord,
    PresentedCategory,
    PresentedFunctor,
    enumerate_exit_words,
    exit_category,
    invertibility_check,
    lift_path,
    lift_relations_check,
    section_property_check,
)
from .fincat import (
    DEFAULT_ISO_BOUND,
    FiniteCategory,
    Functor,
    Morphism,
    Presheaf,
    compose_functors,
    find_isomorphism,
    find_presheaf_isomorphism,
    fibration_to_presheaf,
    is_right_fibration,
    op,
    opposite,
    opposite_functor,
    pullback_categories,
    validate_functor,
)
from .orbit_category import (
    PointedOrbitObject,
    bg_subcategory,
    build_orbit_category,
    build_pointed_orbit_category,
    coset_square,
    find_object,
    forgetful_functor,
)
from .report import VerificationReport
from .rewriting import DEFAULT_COMPLETION_BUDGET
from .stratify import exit_functor_of_map, quotient_complex, require_valid
from .validators import validate_gcomplex
from .verdict import Status, Verdict, combine

logger = logging.getLogger(__name__)

QuotientFunctor = Union[Functor, PresentedFunctor]

SECTION_WORD_BOUND = 3


def quotient_exit_functor(
        X: GComplex,
        exit_M: Optional[PresentedCategory] = None,
        exit_MG: Optional[PresentedCategory] = None,
        quotient: Optional[CellMap] = None,
        budget: int = DEFAULT_COMPLETION_BUDGET,
) -> QuotientFunctor:
    """
    Pi on vertices and word classes
    A Functor when both exit categories are finite, otherwise a PresentedFunctor on generators.
    """
    if quotient is None:
        _, quotient = quotient_complex(X)
    exit_M = exit_M or exit_category(X, budget)
    exit_MG = exit_MG or exit_category(quotient.target, budget)
    for ec in (exit_M, exit_MG):
        if not ec.is_decided:
            raise ExitCategoryUnavailable(f"{ec.name} is undecided after {ec.budget_used} units")
    if exit_M.category is not None and exit_MG.category is not None:
        return exit_functor_of_map(quotient, exit_M, exit_MG)
    functor = PresentedFunctor(
        exit_M,
        exit_MG,
        {v: quotient(v) for v in X.vertices},
        {name: (quotient.map_step(name),) for name in exit_M.system.generators},
    )
    verdict = functor.is_functorial()
    if not verdict:
        raise ExitCategoryUnavailable(f"projection does not respect relations: {verdict.witness}")
    return functor


def _fiber_sizes_match(X: GComplex, functor: QuotientFunctor) -> Optional[Tuple[str, int]]:
    object_map = functor.object_map
    for v in X.vertices:
        fiber = [w for w in X.vertices if object_map[w] == object_map[v]]
        if len(fiber) != len(X.orbit(v)):
            return v, len(fiber)
    return None


def _lift_totality(X: GComplex, quotient: CellMap, exit_MG: PresentedCategory) -> Verdict:
    """Every quotient generator lifts uniquely at every lift of its endpoint"""
    claim = f"{X.name}: quotient generators lift uniquely"
    Q = quotient.target
    lifted = 0
    for name, generator in exit_MG.system.generators.items():
        word = ExitWord(Q, generator.source, (name,))
        for y in quotient.fiber(generator.target):
            try:
                lift_path(X, word, y, quotient=quotient)
            except NoLift as e:
                return Verdict.refuted(claim, (name, y, str(e)))
            lifted += 1
    return Verdict.verified(claim, notes=[f"{lifted} generator lifts"])


def verify_right_fibration(
        X: GComplex,
        functor: Optional[QuotientFunctor] = None,
        quotient: Optional[CellMap] = None,
        budget: int = DEFAULT_COMPLETION_BUDGET,
        word_bound: int = SECTION_WORD_BOUND,
) -> Verdict:
    """
    Unique lifts of exit classes along Pi
    Finite exit categories are checked table by table; presented ones are certified by
    generator-lift totality, equal lifts of related words and the section property on
    exit words of length at most word_bound.
    """
    claim = f"Pi: Exit({X.name}) -> Exit({X.name}/G) is a right fibration"
    if quotient is None:
        _, quotient = quotient_complex(X)
    if functor is None:
        try:
            functor = quotient_exit_functor(X, quotient=quotient, budget=budget)
        except ExitCategoryUnavailable as e:
            return Verdict.undecided(claim, budget, [str(e)])
    mismatch = _fiber_sizes_match(X, functor)
    if mismatch is not None:
        return Verdict.refuted(claim, ("fiber size differs from orbit size",) + mismatch)
    if isinstance(functor, Functor):
        return is_right_fibration(functor).with_claim(claim)
    upstairs = functor.source
    words = list(enumerate_exit_words(X, word_bound))
    return combine([
        _lift_totality(X, quotient, functor.target),
        lift_relations_check(X, budget, upstairs=upstairs),
        section_property_check(X, words, quotient=quotient),
    ], claim).with_notes(
        "certified through path lifting",
        f"section property at word length <= {word_bound}",
    )


# --- Omega ------------------------------------------------------------------------

def _check_stabilizers_grow(X: GComplex) -> None:
    """Along every edge the stabilizer of the target lies in that of the source"""
    for edge in X.edges:
        if not X.stabilizer(edge.dst).issubset(X.stabilizer(edge.src)):
            raise EquivarianceFailure(f"stabilizer of {edge.dst} is not inside that of {edge.src}", edge.id)


def omega_presheaf(
        X: GComplex,
        exit_MG: Optional[PresentedCategory] = None,
        quotient: Optional[CellMap] = None,
        budget: int = DEFAULT_COMPLETION_BUDGET,
) -> Presheaf:
    """
    Vertex fibers with their G-action; an exit class f: [y] -> [x] sends a lift of [x]
    to the start of the unique lift of f ending there
    Over a presented Exit(M/G) the action is given on generators.
    """
    if quotient is None:
        _, quotient = quotient_complex(X)
    Q = quotient.target
    exit_MG = exit_MG or exit_category(Q, budget)
    G = X.group
    values = {b: quotient.fiber(b) for b in Q.vertices}
    for b, fiber in values.items():
        if set(fiber) != set(X.orbit(fiber[0])):
            raise EquivarianceFailure(f"fiber over {b} is not a single orbit", b)
    _check_stabilizers_grow(X)

    if exit_MG.category is not None:
        arrows = {m: (m.source, m.payload) for m in exit_MG.category.morphisms}
        base = exit_MG.category
    else:
        arrows = {name: (g.source, (name,)) for name, g in exit_MG.system.generators.items()}
        base = exit_MG
    action: Dict = {}
    for key, (source, word) in arrows.items():
        w = ExitWord(Q, source, word)
        mapping = {}
        for x in values[w.end]:
            try:
                mapping[x] = lift_path(X, w, x, quotient=quotient).start
            except NoLift as e:
                raise NotAFibration(f"{w} has no lift at {x}") from e
        for g in range(G.order):
            for x in values[w.end]:
                if mapping[X.act(g, x)] != X.act(g, mapping[x]):
                    raise EquivarianceFailure(f"Omega({w}) is not equivariant", (str(w), G.elements[g], x))
        action[key] = mapping
    return Presheaf(base, values, action, name=f"Omega({X.name})")


@dataclass(frozen=True)
class FiberIdentification:
    """g.x0 -> gH for H the stabilizer of the minimal fiber vertex x0"""

    X: GComplex
    basepoint: str

    @property
    def subgroup(self):
        return self.X.stabilizer(self.basepoint)

    def coset(self, x: str) -> int:
        g = self.X.mover(self.basepoint, x)
        return self.X.group.cosets(self.subgroup).of(g)

    def point(self, i: int) -> str:
        return self.X.act(self.X.group.cosets(self.subgroup).representative(i), self.basepoint)


def fiber_identifications(X: GComplex, omega: Presheaf) -> Dict[str, FiberIdentification]:
    return {b: FiberIdentification(X, min(fiber)) for b, fiber in omega.values.items()}


def omega_orbit_functor(X: GComplex, omega: Presheaf, orbit: Optional[FiniteCategory] = None) -> Functor:
    """Omega as a functor Enter(M/G) -> O_G through the fiber identifications"""
    if not isinstance(omega.base, FiniteCategory):
        raise ExitCategoryUnavailable("Omega into O_G needs a finite exit category")
    orbit = orbit or build_orbit_category(X.group)
    ids = fiber_identifications(X, omega)
    object_map = {b: find_object(orbit, ids[b].subgroup) for b in omega.values}
    morphism_map = {}
    for f in omega.base.morphisms:
        source, target = ids[f.target], ids[f.source]
        images = tuple(
            target.coset(omega.apply(f, source.point(i)))
            for i in range(len(omega.values[f.target]))
        )
        m = Morphism(object_map[f.target], object_map[f.source], images)
        if m not in orbit.hom(m.source, m.target):
            raise EquivarianceFailure(f"Omega of {f} is not an orbit-category morphism", m)
        morphism_map[op(f)] = m
    functor = Functor(opposite(omega.base), orbit, object_map, morphism_map, name=f"Omega_G({X.name})")
    verdict = validate_functor(functor)
    if not verdict:
        raise EquivarianceFailure("Omega into O_G is not functorial", verdict.witness)
    return functor


def omega_star_functor(
        X: GComplex,
        Pi: Functor,
        omega_G: Functor,
        omega: Presheaf,
        pointed: Optional[FiniteCategory] = None,
) -> Functor:
    """Enter(M) -> O_G,*: x -> (orbit of x, x); an enter class goes to the pointed map it determines"""
    pointed = pointed or build_pointed_orbit_category(X.group, omega_G.target)
    ids = fiber_identifications(X, omega)

    def pointed_object(x: str) -> PointedOrbitObject:
        obj = omega_G.obj(Pi.obj(x))
        return PointedOrbitObject(obj.subgroup, ids[Pi.obj(x)].coset(x), obj.label)

    enter = opposite(Pi.source)
    object_map = {x: pointed_object(x) for x in enter.objects}
    morphism_map = {}
    for m in enter.morphisms:
        underlying = omega_G.mor(op(Pi.mor(op(m))))
        image = Morphism(object_map[m.source], object_map[m.target], underlying.payload)
        if image not in pointed.hom(image.source, image.target):
            raise EquivarianceFailure(f"{m} does not give a pointed equivariant map", image)
        morphism_map[m] = image
    return Functor(enter, pointed, object_map, morphism_map, name=f"Omega_*({X.name})")


def check_omega_square(X: GComplex, Pi_op: Functor, omega_G: Functor, omega_star: Functor,
                       forget: Functor) -> Verdict:
    """forget o Omega_* = Omega_G o Pi^op on objects and morphisms"""
    claim = f"{X.name}: forget o Omega_* = Omega o Pi^op"
    left = compose_functors(forget, omega_star)
    right = compose_functors(omega_G, Pi_op)
    for x in omega_star.source.objects:
        if left.obj(x) != right.obj(x):
            return Verdict.refuted(claim, ("object", x))
    for m in omega_star.source.morphisms:
        if left.mor(m) != right.mor(m):
            return Verdict.refuted(claim, ("morphism", m))
    return Verdict.verified(claim)


def check_fibers_agree(Pi: Functor, omega: Presheaf) -> Verdict:
    """The presheaf of fibers of Pi is naturally isomorphic to Omega"""
    return find_presheaf_isomorphism(fibration_to_presheaf(Pi), omega)


def _mutually_inverse(iso) -> bool:
    there_and_back = compose_functors(iso.backward, iso.forward)
    back_and_there = compose_functors(iso.forward, iso.backward)
    return (all(there_and_back.obj(a) == a for a in iso.forward.source.objects)
            and all(there_and_back.mor(m) == m for m in iso.forward.source.morphisms)
            and all(back_and_there.obj(b) == b for b in iso.backward.source.objects)
            and all(back_and_there.mor(m) == m for m in iso.backward.source.morphisms))


def verify_classification_pullback(
        X: GComplex,
        Pi: Optional[QuotientFunctor],
        omega_G: Optional[Functor],
        omega_star: Optional[Functor],
        forget: Optional[Functor],
        bound: int = DEFAULT_ISO_BOUND,
) -> Verdict:
    """Enter(M) is isomorphic to the pullback of forget: O_G,* -> O_G along Omega, over both legs"""
    claim = f"Enter({X.name}) is the pullback of the pointed orbit category along Omega"
    if not isinstance(Pi, Functor) or omega_G is None or omega_star is None:
        return Verdict.undecided(claim, notes=["exit category not finite"])
    pb = pullback_categories(omega_G, forget, name=f"pullback for {X.name}")
    Pi_op = opposite_functor(Pi, omega_star.source, omega_G.source)
    verdict = find_isomorphism(omega_star.source, pb.category, bound,
                               over=[(Pi_op, pb.left), (omega_star, pb.right)])
    verdict = verdict.with_claim(claim).with_notes(f"pullback has {len(pb.category.objects)} objects")
    if verdict and not _mutually_inverse(verdict.witness):
        return Verdict.refuted(claim, "witness functors are not mutually inverse")
    return verdict


def verify_pullback_pasting(
        X: GComplex,
        Pi: Optional[QuotientFunctor],
        omega_G: Optional[Functor],
        omega_star: Optional[Functor],
        bound: int = DEFAULT_ISO_BOUND,
) -> Verdict:
    """The outer rectangle through finite sets is a pullback as well"""
    claim = f"Enter({X.name}) is the pullback of pointed finite sets along U o Omega"
    if not isinstance(Pi, Functor) or omega_G is None or omega_star is None:
        return Verdict.undecided(claim, notes=["exit category not finite"])
    square = coset_square(X.group)
    bottom = compose_functors(square.underlying, omega_G, name="U o Omega")
    top = compose_functors(square.pointed_underlying, omega_star, name="U* o Omega_*")
    pb = pullback_categories(bottom, square.forget_basepoint, name=f"outer pullback for {X.name}")
    Pi_op = opposite_functor(Pi, omega_star.source, omega_G.source)
    return find_isomorphism(omega_star.source, pb.category, bound,
                            over=[(Pi_op, pb.left), (top, pb.right)]).with_claim(claim)


def free_action_report(
        X: GComplex,
        exit_M: PresentedCategory,
        omega: Presheaf,
        omega_G: Optional[Functor] = None,
        omega_star: Optional[Functor] = None,
) -> Verdict:
    """Groupoid exit category, constant fibers of size |G|, Omega through BG and Omega_* through EG"""
    if not X.is_free():
        raise ActionNotFree(f"{X.name}: some vertex has a nontrivial stabilizer")
    G = X.group
    claim = f"{X.name}: free action degenerates to a covering"
    if exit_M.category is not None:
        groupoid = Verdict.verified("groupoid") if exit_M.category.is_groupoid() else Verdict.refuted("groupoid")
    else:
        crossing = [e.id for e in X.edges if not X.in_stratum(e.id)]
        groupoid = Verdict.refuted("groupoid", crossing[0]) if crossing else Verdict.verified("groupoid")
    sizes = {b: len(fiber) for b, fiber in omega.values.items()}
    constant = Verdict.verified("constant fibers", sizes) if set(sizes.values()) == {G.order} \
        else Verdict.refuted("constant fibers", sizes)
    checks = [groupoid, constant]
    if omega_G is not None:
        bg = bg_subcategory(G, omega_G.target, omega_star.target if omega_star is not None else None)
        outside = [b for b in omega_G.source.objects if omega_G.obj(b) not in bg.category]
        checks.append(Verdict.refuted("lands in BG", outside) if outside else Verdict.verified("lands in BG"))
        if omega_star is not None:
            outside = [x for x in omega_star.source.objects if omega_star.obj(x) not in bg.pointed]
            checks.append(Verdict.refuted("lands in EG", outside) if outside else Verdict.verified("lands in EG"))
    else:
        trivial = all(fid.subgroup.is_trivial() for fid in fiber_identifications(X, omega).values())
        checks.append(Verdict.verified("lands in BG") if trivial else Verdict.refuted("lands in BG"))
    return combine(checks, claim).with_notes(f"fibers of size {G.order}")


# --- pipeline ---------------------------------------------------------------------

@dataclass
class ClassificationInstance:
    model: GComplex
    quotient: Optional[CellMap] = None
    exit_M: Optional[PresentedCategory] = None
    exit_MG: Optional[PresentedCategory] = None
    Pi: Optional[QuotientFunctor] = None
    omega: Optional[Presheaf] = None
    orbit: Optional[FiniteCategory] = None
    pointed: Optional[FiniteCategory] = None
    omega_G: Optional[Functor] = None
    omega_star: Optional[Functor] = None
    report: Optional[VerificationReport] = None


class Classifier:
    """Runs the classification pipeline on one model and records a verdict per step"""

    def __init__(self, model: GComplex, budget: int = DEFAULT_COMPLETION_BUDGET,
                 iso_bound: int = DEFAULT_ISO_BOUND, report: Optional[VerificationReport] = None):
        self.instance = ClassificationInstance(model)
        self.budget = budget
        self.iso_bound = iso_bound
        self.report = report or VerificationReport(
            f"classification of {model.name}",
            provenance={"model": model.name, "group": model.group.label, "description": model.description},
        )
        self.instance.report = self.report
        self.classification_steps: List[Tuple[str, Callable]] = []

    def set_classification_steps(self, steps: List[Tuple[str, Callable]]) -> None:
        self.classification_steps = steps

    def get_default_classification_steps(self) -> List[Tuple[str, Callable]]:
        return [
            ("Validate Model", self._validate_model),
            ("Quotient", self._quotient),
            ("Exit Categories", self._exit_categories),
            ("Quotient Functor", self._quotient_functor),
            ("Right Fibration", self._right_fibration),
            ("Omega", self._omega),
            ("Omega Into Orbit Categories", self._omega_functors),
            ("Classification Pullback", self._pullback),
            ("Pullback Pasting", self._pasting),
            ("Free Action", self._free_action),
        ]

    def classify(self) -> ClassificationInstance:
        X = self.instance.model
        logger.info(f"🚀 Classifying {X.name} ({X.group.label})...")
        if not self.classification_steps:
            self.classification_steps = self.get_default_classification_steps()
        for step_name, step_func in self.classification_steps:
            if self._should_skip_step(step_name):
                continue
            logger.info(f"\n📋 {step_name}")
            logger.info("-" * 60)
            if not self._execute_step_safely(step_name, step_func):
                logger.warning(f"⚠️ Stopping after {step_name}")
                break
        self._show_classification_summary()
        return self.instance

    def _should_skip_step(self, step_name: str) -> bool:
        if step_name == "Free Action" and not self.instance.model.is_free():
            return True
        return False

    def _execute_step_safely(self, step_name: str, step_func) -> bool:
        """Budget exhaustion becomes Undecided and refutations Refuted; later steps need this one"""
        try:
            return step_func() is not False
        except BudgetExceeded as e:
            self.report.add(step_name, "budget exhausted", Verdict.undecided(str(e), e.consumed))
        except (ExitCategoryUnavailable, NotAFibration, EquivarianceFailure) as e:
            self.report.add(step_name, "precondition", Verdict.refuted(str(e), getattr(e, "witness", None)))
        except OrbitExitError as e:
            logger.error(f"❌ {step_name} failed: {e}")
            raise
        return False

    def _validate_model(self) -> bool:
        verdict = validate_gcomplex(self.instance.model)
        self.report.add("model is an admissible G-complex",
                        "regular cells, monotone strata, unique lifts of edges", verdict)
        return bool(verdict)

    def _quotient(self) -> None:
        Q, quotient = quotient_complex(self.instance.model)
        self.instance.quotient = quotient
        logger.info(f"✅ {Q.name}: {len(Q.vertices)} vertices, {len(Q.edges)} edges, {len(Q.faces)} faces")

    def _exit_categories(self) -> bool:
        instance = self.instance
        instance.exit_M = exit_category(instance.model, self.budget)
        instance.exit_MG = exit_category(instance.quotient.target, self.budget)
        for ec in (instance.exit_M, instance.exit_MG):
            size = f", {len(ec.category.morphisms)} morphisms" if ec.category is not None else ""
            logger.info(f"{ec.name}: {ec.status}{size} ({ec.budget_used} completion units)")
            if not ec.is_decided:
                self.report.add(f"{ec.name} is computed", "bounded completion of the presentation",
                                Verdict.undecided(ec.name, ec.budget_used))
                return False
        if instance.exit_M.category is not None:
            self.report.add("invertible exit classes stay in one stratum",
                            "the reverse path is admitted only inside a stratum",
                            invertibility_check(instance.exit_M))
        return True

    def _quotient_functor(self) -> None:
        instance = self.instance
        instance.Pi = quotient_exit_functor(instance.model, instance.exit_M, instance.exit_MG, instance.quotient)

    def _right_fibration(self) -> bool:
        instance = self.instance
        verdict = verify_right_fibration(instance.model, instance.Pi, instance.quotient, self.budget)
        self.report.add("Pi is a right fibration", "unique lift of every exit class with a chosen endpoint",
                        verdict)
        return bool(verdict)

    def _omega(self) -> None:
        instance = self.instance
        instance.omega = omega_presheaf(instance.model, instance.exit_MG, instance.quotient)
        self.report.add("Omega is a presheaf of transitive G-sets",
                        "lifts of a point form one orbit; lifting is equivariant",
                        Verdict.verified(instance.omega.name))
        if isinstance(instance.Pi, Functor):
            self.report.add("fibers of Pi agree with Omega", "right fibrations are presheaves",
                            check_fibers_agree(instance.Pi, instance.omega))

    def _omega_functors(self) -> None:
        instance = self.instance
        if not isinstance(instance.Pi, Functor):
            logger.info("⚠️ Exit categories are not finite; Omega stays a presheaf on generators")
            return
        X = instance.model
        instance.orbit = build_orbit_category(X.group)
        instance.pointed = build_pointed_orbit_category(X.group, instance.orbit)
        instance.omega_G = omega_orbit_functor(X, instance.omega, instance.orbit)
        instance.omega_star = omega_star_functor(X, instance.Pi, instance.omega_G, instance.omega, instance.pointed)
        Pi_op = opposite_functor(instance.Pi, instance.omega_star.source, instance.omega_G.source)
        self.report.add("Omega_* lifts Omega through the pointed orbit category",
                        "x goes to its orbit pointed at x",
                        check_omega_square(X, Pi_op, instance.omega_G, instance.omega_star,
                                           forgetful_functor(X.group, instance.orbit, instance.pointed)))

    def _pullback(self) -> None:
        instance = self.instance
        forget = None
        if instance.pointed is not None:
            forget = forgetful_functor(instance.model.group, instance.orbit, instance.pointed)
        verdict = verify_classification_pullback(instance.model, instance.Pi, instance.omega_G,
                                                 instance.omega_star, forget, self.iso_bound)
        self.report.add("Enter(M) is the pullback of the pointed orbit category",
                        "recovered as a pullback of the forgetful functor", verdict)

    def _pasting(self) -> None:
        instance = self.instance
        verdict = verify_pullback_pasting(instance.model, instance.Pi, instance.omega_G,
                                          instance.omega_star, self.iso_bound)
        self.report.add("outer rectangle through finite sets is a pullback",
                        "pasting of pullback squares", verdict)

    def _free_action(self) -> None:
        instance = self.instance
        verdict = free_action_report(instance.model, instance.exit_M, instance.omega,
                                     instance.omega_G, instance.omega_star)
        self.report.add("free action gives a covering", "the stratification is trivial for a free action",
                        verdict)

    def _show_classification_summary(self) -> None:
        logger.info("\n" + "=" * 60)
        if self.report.status is Status.VERIFIED:
            logger.info("🎉 CLASSIFICATION VERIFIED")
        else:
            logger.info(f"⚠️ CLASSIFICATION {self.report.status.value.upper()}")
        logger.info("=" * 60)
        for line in self.report.summary_lines():
            logger.info(f"  {line}")


def classify(model: GComplex, budget: int = DEFAULT_COMPLETION_BUDGET,
             iso_bound: int = DEFAULT_ISO_BOUND) -> ClassificationInstance:
    require_valid(model)
    return Classifier(model, budget, iso_bound).classify()
