"""scikit-learn compatible wrapper around the Colebrook solvers.

``X`` has two columns, Reynolds number and relative roughness.  There is
nothing to learn, so :meth:`fit` only validates input and parameters; it is
there so the solver composes with pipelines, ``clone`` and grid search.
"""

from __future__ import annotations

import warnings

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted, validate_data

from .colebrook import FlowConditions
from .exceptions import DomainWarning
from .pade_log import PadeOrder
from .solvers import SolverConfig, solve_one_log, solve_reference_newton

__all__ = ["ColebrookSolver"]


class ColebrookSolver(RegressorMixin, TransformerMixin, BaseEstimator):
    """Darcy friction factor for rows of ``(Re, eps)``.

    Parameters mirror :class:`~colebrook_pade.solvers.SolverConfig`, plus

    method : {"one_log", "reference"}
        Padé-corrected single-log Newton, or a true log every iteration.
    output : {"lambda", "x"}
        What :meth:`predict` returns: the friction factor or ``1/sqrt(lambda)``.

    Attributes
    ----------
    config_ : SolverConfig
    n_features_in_ : int
    """

    def __init__(self, method="one_log", initial_guess="fixed", z_sequence="anchored",
                 derivative_mode="recompute", fprime_form="analytic", pade_order="2,3",
                 abs_tolerance_x=1e-7, max_iterations=50, strict_band=False,
                 full_precision_ln10=False, output="lambda"):
        self.method = method
        self.initial_guess = initial_guess
        self.z_sequence = z_sequence
        self.derivative_mode = derivative_mode
        self.fprime_form = fprime_form
        self.pade_order = pade_order
        self.abs_tolerance_x = abs_tolerance_x
        self.max_iterations = max_iterations
        self.strict_band = strict_band
        self.full_precision_ln10 = full_precision_ln10
        self.output = output

    def fit(self, X, y=None):
        if self.method not in ("one_log", "reference"):
            raise ValueError(f"method must be 'one_log' or 'reference', got {self.method!r}")
        if self.output not in ("lambda", "x"):
            raise ValueError(f"output must be 'lambda' or 'x', got {self.output!r}")
        X = validate_data(self, X, reset=True, ensure_min_features=2)
        self._check_two_columns(X)
        self.config_ = SolverConfig(
            initial_guess=self.initial_guess,
            z_sequence=self.z_sequence,
            derivative_mode=self.derivative_mode,
            fprime_form=self.fprime_form,
            pade_order=PadeOrder.parse(self.pade_order),
            abs_tolerance_x=self.abs_tolerance_x,
            max_iterations=self.max_iterations,
            strict_band=self.strict_band,
            full_precision_ln10=self.full_precision_ln10,
        )
        return self

    @staticmethod
    def _check_two_columns(X):
        if X.shape[1] != 2:
            raise ValueError(f"expected 2 columns (Re, eps), got {X.shape[1]}")

    def _solve_rows(self, X):
        check_is_fitted(self, "config_")
        X = validate_data(self, X, reset=False)
        solve = solve_one_log if self.method == "one_log" else solve_reference_newton
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", DomainWarning)
            return [solve(FlowConditions(re, eps), self.config_) for re, eps in X]

    def transform(self, X):
        """Columns ``x_final, lambda, iterations, log_calls, converged``."""
        results = self._solve_rows(X)
        return np.array([[r.x_final, r.friction_factor, r.iterations, r.log_call_count,
                          float(r.converged)] for r in results]).reshape(-1, 5)

    def predict(self, X):
        results = self._solve_rows(X)
        if self.output == "x":
            return np.array([r.x_final for r in results])
        return np.array([r.friction_factor for r in results])

    def get_feature_names_out(self, input_features=None):
        return np.array(["x_final", "lambda", "iterations", "log_calls", "converged"],
                        dtype=object)
