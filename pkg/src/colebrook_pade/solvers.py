"""Newton iterations for the Colebrook equation.

:func:`solve_one_log` spends a single true logarithm, on ``y0``.  Every later
``log10(y_i)`` is rebuilt from an anchor whose log is known::

    log10(y_i) = log10(y_anchor) - pade_ln(y_anchor / y_i) / ln10

The anchor is ``y0`` throughout ("anchored") or the previous iterate
("chained", with the running corrected log as its value).
:func:`solve_reference_newton` is the same scheme with a true log every
iteration, and :func:`solve_oracle_high_precision` is a plain bisection
used to check both.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from numbers import Real

from .colebrook import (
    FIXED_START,
    FlowConditions,
    initial_guess_polynomial,
    initial_guess_rough_limit,
)
from .exceptions import BracketError, ConfigError
from .instrumentation import LogCounter
from .pade_log import LN10, LN10_EXACT, PadeOrder

__all__ = [
    "Z_BAND",
    "SolverConfig",
    "IterationRecord",
    "SolveResult",
    "solve_one_log",
    "solve_reference_newton",
    "solve_oracle_high_precision",
]

#: Range of z over which the (2,3) approximant error has been tabulated.
Z_BAND = (0.6, 1.6)

_STARTS = ("fixed", "poly", "rough")
_ZMODES = ("anchored", "chained")
_DMODES = ("recompute", "freeze", "unit")
_FORMS = ("analytic", "scaled")


@dataclass(frozen=True)
class SolverConfig:
    """Knobs shared by both Newton solvers.

    ``initial_guess`` is ``"fixed"`` (7.273124147), ``"poly"`` (log-free
    rational fit), ``"rough"`` (fully rough limit; costs one extra log) or
    a number used verbatim as ``x0``.
    """

    initial_guess: str | float = "fixed"
    z_sequence: str = "anchored"
    derivative_mode: str = "recompute"
    fprime_form: str = "analytic"
    pade_order: PadeOrder = PadeOrder.O23
    abs_tolerance_x: float = 1e-7
    max_iterations: int = 50
    strict_band: bool = False
    full_precision_ln10: bool = False

    def __post_init__(self):
        g = self.initial_guess
        if isinstance(g, Real) and not isinstance(g, bool):
            if not (math.isfinite(g) and g > 0):
                raise ConfigError(f"explicit x0 must be positive and finite, got {g!r}")
            object.__setattr__(self, "initial_guess", float(g))
        elif g not in _STARTS:
            raise ConfigError(f"initial_guess must be a number or one of {_STARTS}, got {g!r}")
        if self.z_sequence not in _ZMODES:
            raise ConfigError(f"z_sequence must be one of {_ZMODES}, got {self.z_sequence!r}")
        if self.derivative_mode not in _DMODES:
            raise ConfigError(f"derivative_mode must be one of {_DMODES}, got {self.derivative_mode!r}")
        if self.fprime_form not in _FORMS:
            raise ConfigError(f"fprime_form must be one of {_FORMS}, got {self.fprime_form!r}")
        try:
            object.__setattr__(self, "pade_order", PadeOrder.parse(self.pade_order))
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if not self.abs_tolerance_x > 0:
            raise ConfigError("abs_tolerance_x must be > 0")
        if isinstance(self.max_iterations, bool) or int(self.max_iterations) != self.max_iterations \
                or self.max_iterations < 1:
            raise ConfigError("max_iterations must be a positive integer")

    @property
    def start_kind(self) -> str:
        return "explicit" if isinstance(self.initial_guess, float) else self.initial_guess

    @property
    def ln10(self) -> float:
        return LN10_EXACT if self.full_precision_ln10 else LN10

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pade_order"] = str(self.pade_order)
        return d


@dataclass
class IterationRecord:
    """Quantities computed in one iteration.

    ``x`` is the point the residual was evaluated at and ``x_next`` the
    Newton update.  ``z`` and ``pade_term`` (the log10 correction
    ``pade_ln(z)/ln10``) are ``None`` when a true log was used.
    """

    index: int
    x: float
    y: float
    z: float | None
    pade_term: float | None
    log10_y: float
    F: float
    Fprime: float
    x_next: float
    cumulative_log_calls: int
    true_log: bool
    out_of_band: bool = False


@dataclass
class SolveResult:
    x_final: float
    iterations: int
    converged: bool
    log_call_count: int
    method: str
    conditions: FlowConditions
    config: SolverConfig
    x0: float
    trace: list[IterationRecord] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def friction_factor(self) -> float:
        """Darcy friction factor ``1 / x_final**2``."""
        return 1.0 / (self.x_final * self.x_final)

    lam = friction_factor

    @property
    def max_abs_z_minus_1(self) -> float:
        zs = [abs(r.z - 1.0) for r in self.trace if r.z is not None]
        return max(zs) if zs else 0.0

    def to_dict(self) -> dict:
        return {
            "reynolds": self.conditions.reynolds,
            "rel_roughness": self.conditions.rel_roughness,
            "method": self.method,
            "x0": self.x0,
            "x_final": self.x_final,
            "lambda": self.friction_factor,
            "iterations": self.iterations,
            "converged": self.converged,
            "log_call_count": self.log_call_count,
            "config": self.config.to_dict(),
            "warnings": list(self.warnings),
            "trace": [asdict(r) for r in self.trace],
        }


def _start(c: FlowConditions, cfg: SolverConfig, counter: LogCounter) -> float:
    kind = cfg.start_kind
    if kind == "explicit":
        return cfg.initial_guess
    if kind == "fixed":
        return FIXED_START
    if kind == "poly":
        return initial_guess_polynomial(c)
    return initial_guess_rough_limit(c, counter)


def _iterate(c: FlowConditions, cfg: SolverConfig, one_log: bool) -> SolveResult:
    # op-for-op mirror lives in instrumentation.tally_solve
    counter = LogCounter()
    x0 = x = _start(c, cfg, counter)
    ln10 = cfg.ln10
    pade = cfg.pade_order.kernel
    chained = cfg.z_sequence == "chained"
    dmode = cfg.derivative_mode
    tol = cfg.abs_tolerance_x

    a = 2.51 / c.reynolds
    b = c.rel_roughness / 3.71
    if dmode != "unit":
        slope_num = 5.02 / (ln10 * c.reynolds)
        scaled = cfg.fprime_form == "scaled"
        if scaled:
            a100 = 100.0 * a

    trace: list[IterationRecord] = []
    notes: list[str] = []
    y_anchor = log_anchor = None
    fp = 1.0
    converged = False
    for i in range(1, cfg.max_iterations + 1):
        y = a * x + b
        z = term = None
        out_of_band = False
        true_log = i == 1 or not one_log
        if not true_log:
            z = y_anchor / y
            if not Z_BAND[0] <= z <= Z_BAND[1]:
                out_of_band = True
                if cfg.strict_band:
                    true_log = True
                    notes.append(f"iteration {i}: z={z:.9g} outside {Z_BAND}; used a true log")
                else:
                    notes.append(f"iteration {i}: z={z:.9g} outside {Z_BAND}; Padé value kept")
        if true_log:
            lg = counter.log10(y)
            y_anchor, log_anchor = y, lg
        else:
            term = pade(z) / ln10
            lg = log_anchor - term
            if chained:
                y_anchor, log_anchor = y, lg

        F = x + 2.0 * lg
        if dmode == "recompute" or (dmode == "freeze" and i == 1):
            fp = 1.0 + slope_num / ((b + a100 * x) if scaled else y)
        if dmode == "unit":
            x_next = x - F
        else:
            x_next = x - F / fp
        trace.append(IterationRecord(i, x, y, z, term, lg, F, fp, x_next,
                                     counter.calls, true_log, out_of_band))
        done = abs(x_next - x) <= tol
        x = x_next
        if done:
            converged = True
            break

    return SolveResult(
        x_final=x,
        iterations=len(trace),
        converged=converged,
        log_call_count=counter.calls,
        method="one_log" if one_log else "reference",
        conditions=c,
        config=cfg,
        x0=x0,
        trace=trace,
        warnings=notes,
    )


def _as_conditions(c) -> FlowConditions:
    if isinstance(c, FlowConditions):
        return c
    return FlowConditions(*c)


def solve_one_log(c: FlowConditions, cfg: SolverConfig | None = None) -> SolveResult:
    """Newton iteration with exactly one true log10 (plus one for a rough start).

    Iteration 1 evaluates ``log10(y0)``; each later iteration replaces the log
    by a Padé correction relative to the anchor.  Non-convergence within
    ``max_iterations`` is reported via ``converged=False``.

    >>> r = solve_one_log(FlowConditions(2.5e6, 4e-4), SolverConfig(initial_guess="poly"))
    >>> round(r.x_final, 6), r.log_call_count
    (7.873173, 1)
    """
    return _iterate(_as_conditions(c), cfg or SolverConfig(), one_log=True)


def solve_reference_newton(c: FlowConditions, cfg: SolverConfig | None = None) -> SolveResult:
    """Same Newton scheme with a true log10 of ``y`` in every iteration."""
    return _iterate(_as_conditions(c), cfg or SolverConfig(), one_log=False)


def solve_oracle_high_precision(c: FlowConditions, lo: float = 1.0, hi: float = 15.0,
                                xtol: float = 1e-13) -> float:
    """Root of ``x + 2 log10(2.51 x/Re + eps/3.71)`` by bisection.

    The residual is strictly increasing in x, so a sign change on
    ``[lo, hi]`` brackets the unique root.  Raises :class:`BracketError`
    otherwise.
    """
    c = _as_conditions(c)
    re, eps = c.reynolds, c.rel_roughness

    def f(x):
        return x + 2.0 * math.log10(2.51 * x / re + eps / 3.71)

    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if (f_lo > 0) == (f_hi > 0):
        raise BracketError(f"no sign change on [{lo}, {hi}] for Re={re:g}, eps={eps:g}")
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0) == (f_hi > 0):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
