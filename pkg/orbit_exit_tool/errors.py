# orbit_exit_tool/errors.py
"""
Error hierarchy for orbit-exit-tool
Refutations are Verdict values; these exceptions cover bad input, broken
preconditions and exhausted budgets.
"""
from typing import Optional


class OrbitExitError(Exception):
    """Base class for all tool errors"""


class InputError(OrbitExitError, ValueError):
    """Malformed group/complex/word input or unknown built-in name"""


class InvariantBreach(OrbitExitError):
    """An internal invariant was violated (a bug, not a refutation)"""


class GroupTooLarge(OrbitExitError):
    """Group order exceeds the configured enumeration bound"""

    def __init__(self, order: int, bound: int):
        super().__init__(f"group order {order} exceeds bound {bound}")
        self.order = order
        self.bound = bound


class NotASubgroup(OrbitExitError, ValueError):
    """Member set is not a subgroup of the given group"""


class NotAFibration(OrbitExitError):
    """A functor expected to be a right fibration is not one"""


class NotValidated(OrbitExitError):
    """Operation requires a complex that passes validate_gcomplex"""


class NotANeighborhood(OrbitExitError, ValueError):
    """Cell subset is not a neighborhood of the chosen vertex"""


class EmptyStratum(OrbitExitError, ValueError):
    """No vertex carries the requested stratum label"""


class ExitCategoryUnavailable(OrbitExitError):
    """An exit category could not be materialized as a finite category"""


class EquivarianceFailure(OrbitExitError):
    """A map that should be G-equivariant is not"""

    def __init__(self, message: str, witness: Optional[object] = None):
        super().__init__(message)
        self.witness = witness


class ActionNotFree(OrbitExitError):
    """A free action was required but some vertex has a nontrivial stabilizer"""


class NoLift(OrbitExitError):
    """No lift exists for a quotient generator at the requested endpoint"""


class InvalidEndLift(OrbitExitError, ValueError):
    """The chosen end lift does not lie over the word's final vertex"""


class NotMonotone(OrbitExitError, ValueError):
    """Strata profile of a word decreases somewhere"""


class InvalidWord(OrbitExitError, ValueError):
    """Word is not a composable chain of signed edges"""


class ModelError(OrbitExitError, ValueError):
    """Complex data is structurally unusable (unknown cells, broken action)"""


class BudgetExceeded(OrbitExitError):
    """A bounded search ran out of budget; callers turn this into Undecided"""

    def __init__(self, message: str, consumed: int):
        super().__init__(message)
        self.consumed = consumed


class CompletionBudgetExceeded(BudgetExceeded):
    """Knuth-Bendix completion used more rewrite applications than allowed"""


class SearchBoundExceeded(BudgetExceeded):
    """Isomorphism search visited more nodes than allowed"""
