# orbit_exit_tool/cli.py
"""
orbit-exit command line entry point
Each subcommand fills a VerificationReport; the exit status is derived from it.
"""
import json
import logging
import sys
from typing import Callable, Dict, List, Optional

from .args import OrbitExitArgumentParser
from .classify import Classifier
from .config import RunConfig
from .errors import InputError, InvariantBreach, NoLift, OrbitExitError
from .exit_paths import ExitWord, all_lifts, exit_category, invertibility_check, lift_path
from .fincat import is_EI, validate_category
from .groups import conjugacy_class_poset, enumerate_subgroups, identify_group, load_group
from .models import load_model, save_model
from .orbit_category import build_orbit_category, build_pointed_orbit_category, weyl_label_audit, weyl_labels
from .render import export_dot
from .report import EXIT_INPUT_ERROR, EXIT_INTERNAL_ERROR, VerificationReport, plain
from .stratify import (
    barycentric_subdivide,
    check_basic_neighborhood,
    check_stratification_descends,
    cone_complex,
    depth_map,
    quotient_complex,
    stabilizer_stratification,
    stratum_covering_check,
)
from .validators import RunConfigValidator, validate_gcomplex
from .verdict import Verdict
from .verify.suite import run_suite

logger = logging.getLogger(__name__)


def _emit(data) -> None:
    """Results go to stdout as JSON; progress goes to the log"""
    print(json.dumps(plain(data), indent=2, sort_keys=True, ensure_ascii=False))


class CommandRunner:
    """Dispatches a RunConfig to the subcommand that handles it"""

    def __init__(self, config: RunConfig):
        self.config = config
        self.report = VerificationReport(
            f"{config.subcommand} {config.action or ''}".strip(),
            provenance=config.to_provenance(),
        )

    def get_commands(self) -> Dict[str, Callable[[], None]]:
        return {
            "group": self._run_group,
            "orbit-cat": self._run_orbit_cat,
            "space": self._run_space,
            "exit-cat": self._run_exit_cat,
            "lift": self._run_lift,
            "classify": self._run_classify,
            "suite": self._run_suite,
        }

    def run(self) -> int:
        command = self.get_commands().get(self.config.subcommand)
        if command is None:
            raise InputError(f"unknown subcommand '{self.config.subcommand}'")
        command()
        if self.config.report_path is not None:
            self.report.write(self.config.report_path)
        return self.report.exit_code

    # --- group ---------------------------------------------------------------

    def _run_group(self) -> None:
        G = load_group(self.config.group, self.config.group_bound)
        action = self.config.action
        if action == "info":
            _emit({
                "name": G.label,
                "order": G.order,
                "degree": G.degree,
                "generators": [list(g) for g in G.generators],
                "abelian": G.is_abelian(),
                "type": identify_group(G),
            })
        elif action == "subgroups":
            poset = conjugacy_class_poset(G)
            _emit([
                {"label": poset.subgroup_label(H), "order": H.order,
                 "elements": [list(G.elements[m]) for m in H.members]}
                for H in enumerate_subgroups(G)
            ])
        else:
            poset = conjugacy_class_poset(G)
            _emit({
                label: {
                    "order": members[0].order,
                    "size": len(members),
                    "contained in": [poset.labels[j] for j in range(len(poset.classes))
                                     if j != i and poset.leq(i, j)],
                }
                for i, (label, members) in enumerate(zip(poset.labels, poset.classes))
            })

    # --- orbit-cat -----------------------------------------------------------

    def _run_orbit_cat(self) -> None:
        config = self.config
        G = load_group(config.group, config.group_bound)
        orbit = build_orbit_category(G)
        category = build_pointed_orbit_category(G, orbit) if config.pointed else orbit
        self.report.add(f"{category.name} is a category", "composition of equivariant maps",
                        validate_category(category))
        if config.pointed:
            thin = Verdict.verified(category.name) if category.is_thin() else Verdict.refuted(category.name)
            self.report.add(f"{category.name} is thin", "a pointed map is fixed by its basepoint", thin)
            loop_labels = {}
        else:
            audit = weyl_label_audit(G, orbit)
            self.report.add(f"{orbit.name} is EI", "endomorphisms of G/H are automorphisms",
                            is_EI(orbit).with_notes(*audit))
            for note in audit:
                logger.info(f"⚠️ {note}")
            loop_labels = weyl_labels(orbit)
        _emit({
            "name": category.name,
            "objects": len(category.objects),
            "morphisms": len(category.morphisms),
            "homs": {
                f"{a} -> {b}": len(category.hom(a, b))
                for a in category.objects for b in category.objects if category.hom(a, b)
            },
        })
        if config.action == "export" and config.dot_path is None:
            raise InputError("orbit-cat export needs --dot PATH")
        if config.dot_path is not None:
            export_dot(category, config.dot_path, config.include_identities, loop_labels)

    # --- space ---------------------------------------------------------------

    def _run_space(self) -> None:
        config = self.config
        X = load_model(config.model, config.group_bound)
        action = config.action
        if action == "validate":
            verdict = validate_gcomplex(X, config.face_bound)
            self.report.add(f"{X.name} is admissible", "regular cells, monotone strata, unique lifts", verdict)
            _emit({"model": X.name, "verdict": verdict.status.value, "witness": verdict.witness})
        elif action == "quotient":
            Q, _ = quotient_complex(X)
            self.report.add("stratification descends to the quotient", "strata are unions of orbits",
                            check_stratification_descends(X))
            self._write_or_emit(Q)
        elif action == "strat":
            strat = stabilizer_stratification(X)
            depths = depth_map(strat.target)
            monotone = Verdict.verified("monotone") if strat.is_monotone() else \
                Verdict.refuted("monotone", strat.violations())
            self.report.add("stabilizer stratification is monotone", "stabilizers shrink toward cofaces",
                            monotone)
            _emit({
                "labels": strat.labeling,
                "order": sorted(strat.target.relation),
                "depth": depths.mapping,
            })
        elif action == "subdivide":
            sd = barycentric_subdivide(X)
            self.report.add(f"{sd.name} is admissible", "subdivision of a G-complex", validate_gcomplex(sd))
            self._write_or_emit(sd)
        elif action == "cone":
            cone = cone_complex(X)
            self.report.add(f"{cone.name} is admissible", "cone with a fixed apex", validate_gcomplex(cone))
            self._write_or_emit(cone)
        elif action == "neighborhood":
            if not config.vertex or not config.cells:
                raise InputError("space neighborhood needs --vertex and --cells")
            verdict = check_basic_neighborhood(X, config.vertex, config.cells)
            self.report.add(f"basic neighborhood of {config.vertex}",
                            "inclusion, discontinuity, symmetry and coproduct", verdict)
        else:
            if not config.stratum:
                raise InputError("space covering needs --stratum LABEL")
            self.report.add(f"stratum {config.stratum} covers its image", "strata of the quotient map",
                            stratum_covering_check(X, config.stratum))

    def _write_or_emit(self, complex_) -> None:
        if self.config.output_path is not None:
            save_model(complex_, self.config.output_path)
        else:
            _emit(complex_.to_dict())

    # --- exit-cat ------------------------------------------------------------

    def _run_exit_cat(self) -> None:
        config = self.config
        X = load_model(config.model, config.group_bound)
        if config.quotient:
            X, _ = quotient_complex(X)
        materialize = config.action == "materialize" or config.dot_path is not None
        ec = exit_category(X, config.completion_budget, materialize=materialize)
        summary = {
            "name": ec.name,
            "status": ec.status,
            "rules": len(ec.system.rules),
            "budget used": ec.budget_used,
            "infinite homs": sorted(f"{a} -> {b}" for a, b in ec.infinite_homs),
        }
        if not ec.is_decided:
            self.report.add(f"{ec.name} is computed", "bounded completion of the presentation",
                            Verdict.undecided(ec.name, ec.budget_used, ["completion budget exhausted"]))
        elif ec.category is not None:
            summary["morphisms"] = len(ec.category.morphisms)
            self.report.add("invertible exit classes stay in one stratum",
                            "reverse paths exist only inside a stratum", invertibility_check(ec))
        elif config.action == "materialize":
            self.report.add(f"{ec.name} is finite", "materialization needs finite hom-sets",
                            Verdict.undecided(ec.name, ec.budget_used, ["exit category not finite"]))
        _emit(summary)
        if config.dot_path is not None and ec.category is not None:
            export_dot(ec.category, config.dot_path, config.include_identities)
        elif config.dot_path is not None:
            logger.warning(f"⚠️ {ec.name} is {ec.status}; no diagram written")

    # --- lift ----------------------------------------------------------------

    def _run_lift(self) -> None:
        config = self.config
        X = load_model(config.model, config.group_bound)
        Q, quotient = quotient_complex(X)
        w = ExitWord.parse(Q, config.word)
        w.check_exit()
        claim = f"{w} lifts to {X.name}"
        try:
            if config.end_lift and config.action != "all":
                lifts = [lift_path(X, w, config.end_lift, quotient=quotient)]
            else:
                lifts = all_lifts(X, w, quotient)
        except NoLift as e:
            self.report.add(claim, "unique lifting along the quotient", Verdict.refuted(claim, str(e)))
            return
        self.report.add(claim, "unique lifting along the quotient",
                        Verdict.verified(claim, {lift.end: str(lift) for lift in lifts}))
        _emit({lift.end: str(lift) for lift in lifts})

    # --- classify / suite ----------------------------------------------------

    def _run_classify(self) -> None:
        config = self.config
        X = load_model(config.model, config.group_bound)
        classifier = Classifier(X, config.completion_budget, config.iso_search_bound, self.report)
        classifier.report.provenance.update(config.to_provenance())
        classifier.classify()

    def _run_suite(self) -> None:
        suite_report = run_suite(self.config)
        self.report.extend(suite_report)


def _setup_logging(verbose: bool) -> None:
    logging.basicConfig(level=logging.DEBUG if verbose else logging.INFO, format="%(message)s")


def main(argv: Optional[List[str]] = None) -> int:
    args = OrbitExitArgumentParser().parse_args(argv)
    _setup_logging(args.verbose)
    try:
        config = RunConfig.from_args(args)
        if not RunConfigValidator(config).validate():
            return EXIT_INPUT_ERROR
        return CommandRunner(config).run()
    except InvariantBreach as e:
        logger.error(f"❌ Internal invariant violated: {e}")
        return EXIT_INTERNAL_ERROR
    except (InputError, ValueError) as e:
        logger.error(f"❌ {e}")
        if "admissible" in str(e):
            logger.info("💡 Check the model with: orbit-exit space validate --model ...")
        return EXIT_INPUT_ERROR
    except OrbitExitError as e:
        logger.error(f"❌ {type(e).__name__}: {e}")
        return EXIT_INPUT_ERROR
    except Exception as e:
        logger.exception(f"❌ Unexpected failure: {e}")
        return EXIT_INTERNAL_ERROR


if __name__ == "__main__":
    sys.exit(main())
