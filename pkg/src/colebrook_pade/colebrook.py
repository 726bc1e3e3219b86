"""Colebrook equation in the ``x = 1/sqrt(lambda)`` form.

    x = -2 log10(2.51 x / Re + eps / 3.71)

The residual is ``F(x) = x + 2 log10(y)`` with ``y = 2.51 x / Re + eps / 3.71``.
Helpers here take the base-10 log of ``y`` as an argument so the caller
decides whether it comes from a true logarithm or from a Padé correction.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .exceptions import DomainError, DomainWarning
from .pade_log import LN10

__all__ = [
    "FlowConditions",
    "RE_RANGE",
    "EPS_MAX",
    "X_RANGE",
    "LAMBDA_RANGE",
    "FIXED_START",
    "y_of_x",
    "residual_F",
    "derivative_Fprime",
    "initial_guess_polynomial",
    "initial_guess_fixed",
    "initial_guess_rough_limit",
    "lambda_from_x",
]

RE_RANGE = (4000.0, 1e8)
EPS_MAX = 0.05
X_RANGE = (3.68, 12.47)
LAMBDA_RANGE = (0.0064, 0.077)

#: Start value that needs the fewest iterations over most of the domain.
FIXED_START = 7.273124147


@dataclass(frozen=True)
class FlowConditions:
    """Reynolds number and relative roughness of one pipe.

    Values outside ``4000 < Re < 1e8``, ``0 <= eps < 0.05`` still build (the
    equation is evaluable there) but emit a :class:`DomainWarning`.
    Nonpositive ``Re`` or negative ``eps`` raise :class:`DomainError`.
    """

    reynolds: float
    rel_roughness: float = 0.0

    def __post_init__(self):
        re, eps = float(self.reynolds), float(self.rel_roughness)
        if not (math.isfinite(re) and re > 0):
            raise DomainError(f"Reynolds number must be positive and finite, got {re!r}")
        if not (math.isfinite(eps) and eps >= 0):
            raise DomainError(f"relative roughness must be >= 0 and finite, got {eps!r}")
        object.__setattr__(self, "reynolds", re)
        object.__setattr__(self, "rel_roughness", eps)
        if not self.in_domain:
            warnings.warn(
                f"Re={re:g}, eps={eps:g} is outside 4000 < Re < 1e8, 0 <= eps < 0.05",
                DomainWarning, stacklevel=3)

    @property
    def in_domain(self) -> bool:
        return (RE_RANGE[0] < self.reynolds < RE_RANGE[1]
                and 0.0 <= self.rel_roughness < EPS_MAX)


def _require_positive_x(x):
    if not x > 0:
        raise DomainError(f"x = 1/sqrt(lambda) must be positive, got {x!r}")


def y_of_x(x: float, c: FlowConditions) -> float:
    """Argument of the logarithm, ``2.51 x / Re + eps / 3.71``."""
    _require_positive_x(x)
    return 2.51 * x / c.reynolds + c.rel_roughness / 3.71


def residual_F(x: float, log10_y: float) -> float:
    """``x + 2 log10(y)``; zero at a Colebrook solution."""
    return x + 2.0 * log10_y


def derivative_Fprime(x: float, c: FlowConditions, form: str = "analytic",
                      ln10: float = LN10) -> float:
    """Slope of the residual with respect to x.

    ``form="analytic"`` is the true derivative,
    ``1 + 2*2.51 / (ln10 * Re * (eps/3.71 + 2.51 x / Re))``.

    ``form="scaled"`` replaces the ``2.51 x / Re`` term by ``251 x / Re``.
    It is not the derivative of F: Newton steps with it converge only
    linearly (the slope stays within ~0.2% of 1).  It is kept because the
    reference worked traces for this method were produced with it, and
    matching them digit for digit needs the same slope.
    """
    _require_positive_x(x)
    re, eps = c.reynolds, c.rel_roughness
    if form == "analytic":
        inner = eps / 3.71 + 2.51 * x / re
    elif form == "scaled":
        inner = eps / 3.71 + 251.0 * x / re
    else:
        raise ValueError(f"unknown derivative form {form!r}")
    return 1.0 + 2.0 * 2.51 / (ln10 * re * inner)


def initial_guess_polynomial(c: FlowConditions) -> float:
    """Log-free rational fit of the Colebrook root (up to ~40% off)."""
    re, eps = c.reynolds, c.rel_roughness
    re2 = re * re
    return 5.05 - 30.73 * eps + (3.4 * re + re2 / 469647.7) / (
        46137.9 + re + re2 / 3250657.6 + eps * re2 / 515.25)


def initial_guess_fixed() -> float:
    return FIXED_START


def initial_guess_rough_limit(c: FlowConditions, counter=None) -> float:
    """Fully rough (Re -> inf) solution ``-2 log10(eps / 3.71)``.

    Spends one true logarithm; pass a :class:`~colebrook_pade.instrumentation.LogCounter`
    to have it counted.
    """
    eps = c.rel_roughness
    if eps <= 0:
        raise DomainError("rough-flow start needs eps > 0 (log of zero otherwise)")
    arg = eps / 3.71
    return -2.0 * (counter.log10(arg) if counter is not None else math.log10(arg))


def lambda_from_x(x: float) -> float:
    """Darcy friction factor ``1 / x**2``."""
    _require_positive_x(x)
    return 1.0 / (x * x)
