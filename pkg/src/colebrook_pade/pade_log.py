"""Padé rational approximants of ln(z) around z = 1.

All six approximants are written in nested (Horner) form and use only
``+ - * /``.  They are exact at ``z = 1`` and lose accuracy as ``z`` moves
away from it; within ``[0.9, 1.1]`` even the (1,1) form is good to about
``3e-5`` relative, and the (2,3) form to about ``5e-10``.

Note that the (2,3) and (3,2) forms are the same rational function,
``(11 z^3 + 27 z^2 - 27 z - 11) / (3 z^3 + 27 z^2 + 27 z + 3)``, nested two
different ways.
"""

from __future__ import annotations

import math
from enum import Enum
from typing import Callable, Iterable, NamedTuple

import numpy as np

from .exceptions import DomainError

__all__ = [
    "LN10",
    "LN10_EXACT",
    "PadeOrder",
    "ErrorRow",
    "pade_ln",
    "pade_log10",
    "error_table",
    "relative_error_percent",
]

#: ln(10) to ten significant digits; the default base-conversion constant.
LN10 = 2.302585093
#: ln(10) to machine precision, used when full precision is requested.
LN10_EXACT = math.log(10.0)


def _ln_11(z):
    return (z * (z + 4.0) - 5.0) / (4.0 * z + 2.0)


def _ln_12(z):
    return 3.0 * (z - 1.0) * (z + 1.0) / (z * (z + 4.0) + 1.0)


def _ln_21(z):
    return (-z * (z * (z - 9.0) - 9.0) - 17.0) / (18.0 * z + 6.0)


def _ln_22(z):
    return (z * (z * (z + 18.0) - 9.0) - 10.0) / (z * (9.0 * z + 18.0) + 3.0)


def _ln_23(z):
    # denominator is 3*(z^3 + 9z^2 + 9z + 1), not 3z^3 + 9z^2 + 9z + 1
    return (z - 1.0) * (z * (11.0 * z + 38.0) + 11.0) / (
        3.0 * (z * (z * (z + 9.0) + 9.0) + 1.0)
    )


def _ln_32(z):
    return (z * (z * (11.0 * z + 27.0) - 27.0) - 11.0) / (
        z * (z * (3.0 * z + 27.0) + 27.0) + 3.0
    )


class PadeOrder(Enum):
    """(numerator, denominator) order of a Padé approximant of ln(z)."""

    O11 = (1, 1)
    O12 = (1, 2)
    O21 = (2, 1)
    O22 = (2, 2)
    O23 = (2, 3)
    O32 = (3, 2)

    @property
    def kernel(self) -> Callable:
        """Unvalidated Horner-form evaluator, for use in hot loops."""
        return _KERNELS[self]

    @classmethod
    def parse(cls, text: "str | PadeOrder") -> "PadeOrder":
        """Accept ``"2,3"``, ``"(2,3)"``, ``"23"`` or ``"O23"``."""
        if isinstance(text, cls):
            return text
        digits = "".join(ch for ch in str(text) if ch.isdigit())
        for member in cls:
            if digits == "%d%d" % member.value:
                return member
        raise ValueError(f"unknown Padé order {text!r}; expected one of "
                         + ", ".join("%d,%d" % m.value for m in cls))

    def __str__(self) -> str:
        return "%d,%d" % self.value


_KERNELS = {
    PadeOrder.O11: _ln_11,
    PadeOrder.O12: _ln_12,
    PadeOrder.O21: _ln_21,
    PadeOrder.O22: _ln_22,
    PadeOrder.O23: _ln_23,
    PadeOrder.O32: _ln_32,
}


def _check_positive(z):
    if np.any(np.asarray(z) <= 0) or np.any(np.isnan(np.asarray(z, dtype=float))):
        raise DomainError(f"Padé logarithm needs z > 0, got {z!r}")


def pade_ln(z, order: PadeOrder = PadeOrder.O23):
    """Rational approximation of ``ln(z)``; accurate only near ``z = 1``.

    Works on scalars and numpy arrays.  Raises :class:`DomainError` for
    nonpositive ``z``.
    """
    _check_positive(z)
    return _KERNELS[PadeOrder.parse(order)](z)


def pade_log10(z, order: PadeOrder = PadeOrder.O23, ln10: float = LN10):
    """``pade_ln(z, order) / ln10``."""
    return pade_ln(z, order) / ln10


class ErrorRow(NamedTuple):
    z: float
    exact_log10: float
    approx_log10: float
    relative_error_percent: float


def relative_error_percent(z: float, order: PadeOrder = PadeOrder.O23) -> float:
    """Relative error of the approximant against ``math.log``, in percent.

    The comparison is made on natural logs, so the value does not depend on
    which ln(10) constant is used for base conversion.  Defined as 0 at z = 1.
    """
    _check_positive(z)
    exact = math.log(z)
    if exact == 0.0:
        return 0.0
    approx = _KERNELS[PadeOrder.parse(order)](z)
    return abs(approx - exact) / abs(exact) * 100.0


def error_table(order: PadeOrder, z_values: Iterable[float],
                ln10: float = LN10) -> list[ErrorRow]:
    """Tabulate exact vs approximate log10 and the percent relative error."""
    order = PadeOrder.parse(order)
    zs = [float(z) for z in z_values]
    _check_positive(zs)
    return [
        ErrorRow(z, math.log10(z), _KERNELS[order](z) / ln10,
                 relative_error_percent(z, order))
        for z in zs
    ]
