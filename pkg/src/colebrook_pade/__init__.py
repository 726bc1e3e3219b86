"""One-log-call iterative solution of the Colebrook flow-friction equation.

The first Newton iteration evaluates ``log10(y0)``; every later iteration
rebuilds ``log10(y_i)`` from it with a Padé approximant of ``ln(y0 / y_i)``.
"""

from .colebrook import (
    FIXED_START,
    FlowConditions,
    derivative_Fprime,
    initial_guess_fixed,
    initial_guess_polynomial,
    initial_guess_rough_limit,
    lambda_from_x,
    residual_F,
    y_of_x,
)
from .estimator import ColebrookSolver
from .exceptions import BracketError, ConfigError, CostModelError, DomainError, DomainWarning
from .instrumentation import CostModel, LogCounter, OpTally, cost_estimate, tally_solve
from .pade_log import LN10, LN10_EXACT, PadeOrder, error_table, pade_ln, pade_log10
from .solvers import (
    IterationRecord,
    SolveResult,
    SolverConfig,
    solve_one_log,
    solve_oracle_high_precision,
    solve_reference_newton,
)

__version__ = "0.1.0"
