# orbit_exit_tool/__init__.py
"""
Orbit categories, stabilizer stratifications and exit-path categories of finite G-complexes
Every check returns a Verdict: Verified, Refuted with a witness, or Undecided within a budget.
"""

__version__ = "1.0.0"

from .verdict import Status, Verdict, combine
from .groups import PermGroup, Subgroup, builtin_group, enumerate_subgroups, conjugacy_class_poset
from .fincat import FiniteCategory, Functor, Presheaf, is_right_fibration
from .orbit_category import build_orbit_category, build_pointed_orbit_category
from .complexes import GComplex, StratPoset
from .stratify import quotient_complex, stabilizer_stratification
from .exit_paths import ExitWord, exit_category, lift_path
from .classify import Classifier, classify
from .models import load_model
from .config import RunConfig
from .args import OrbitExitArgumentParser, parse_arguments
from .report import VerificationReport
from .validators import GComplexValidator, RunConfigValidator, validate_gcomplex

__all__ = [
    # Verdicts and reports
    'Status',
    'Verdict',
    'combine',
    'VerificationReport',

    # Groups and categories
    'PermGroup',
    'Subgroup',
    'builtin_group',
    'enumerate_subgroups',
    'conjugacy_class_poset',
    'FiniteCategory',
    'Functor',
    'Presheaf',
    'is_right_fibration',
    'build_orbit_category',
    'build_pointed_orbit_category',

    # Complexes and exit paths
    'GComplex',
    'StratPoset',
    'quotient_complex',
    'stabilizer_stratification',
    'ExitWord',
    'exit_category',
    'lift_path',
    'Classifier',
    'classify',
    'load_model',

    # Command line
    'RunConfig',
    'OrbitExitArgumentParser',
    'parse_arguments',
    'GComplexValidator',
    'RunConfigValidator',
    'validate_gcomplex',
]
