"""Logarithm-call counting and static floating-point cost estimates.

Costs are computed from formula-derived operation counts, not measured
time, so they are deterministic across machines.  The default weights are
relative efforts per operation, normalised to one float addition::

    add 1, sub 1.18, div 1.35, mul 1.55, square 2.18, sqrt 2.29,
    cube 2.38, natural_log 2.69, cube_root 2.71, frac_exp 3.32, log10 3.37

A coarser table (float add/mul ~1 flop, division 2-6, sqrt 5-20,
log/exp 10-40) is also in common use; it is not modelled here.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

from .exceptions import CostModelError
from .pade_log import PadeOrder

__all__ = [
    "OP_CLASSES",
    "WINNING_COOLE_WEIGHTS",
    "LogCounter",
    "CostModel",
    "OpTally",
    "count_ops",
    "pade_kernel_ops",
    "pade_correction_ops",
    "tally_solve",
    "cost_estimate",
]

OP_CLASSES = ("add", "sub", "mul", "div", "square", "sqrt", "cube",
              "natural_log", "cube_root", "frac_exp", "log10")

WINNING_COOLE_WEIGHTS = MappingProxyType({
    "add": 1.0,
    "sub": 1.18,
    "div": 1.35,
    "mul": 1.55,
    "square": 2.18,
    "sqrt": 2.29,
    "cube": 2.38,
    "natural_log": 2.69,
    "cube_root": 2.71,
    "frac_exp": 3.32,
    "log10": 3.37,
})


class LogCounter:
    """Counts true logarithm evaluations made through it.

    One instance per solve; never share across threads.
    """

    def __init__(self):
        self.calls = 0

    def log10(self, v: float) -> float:
        self.calls += 1
        return math.log10(v)

    def ln(self, v: float) -> float:
        self.calls += 1
        return math.log(v)


@dataclass(frozen=True)
class CostModel:
    weights: Mapping[str, float] = field(default_factory=lambda: dict(WINNING_COOLE_WEIGHTS))

    def __post_init__(self):
        bad = {k: w for k, w in self.weights.items() if not w > 0}
        if bad:
            raise ValueError(f"cost weights must be positive: {bad}")


@dataclass
class OpTally:
    counts: Counter = field(default_factory=Counter)

    def __post_init__(self):
        self.counts = Counter(self.counts)
        if any(v < 0 for v in self.counts.values()):
            raise ValueError("operation counts must be nonnegative")

    @property
    def log_calls(self) -> int:
        return self.counts["natural_log"] + self.counts["log10"]

    def __add__(self, other: "OpTally") -> "OpTally":
        return OpTally(self.counts + other.counts)

    def as_dict(self) -> dict[str, int]:
        return {k: self.counts[k] for k in OP_CLASSES if self.counts[k]}


# -- dynamic op counting -----------------------------------------------------

class _Tracked(float):
    """float that records every arithmetic operation into a shared Counter."""

    __slots__ = ("_ops",)

    def __new__(cls, value, ops):
        obj = super().__new__(cls, value)
        obj._ops = ops
        return obj

    def _wrap(self, value, kind):
        self._ops[kind] += 1
        return _Tracked(value, self._ops)

    def __add__(self, o): return self._wrap(float(self) + float(o), "add")
    def __radd__(self, o): return self._wrap(float(o) + float(self), "add")
    def __sub__(self, o): return self._wrap(float(self) - float(o), "sub")
    def __rsub__(self, o): return self._wrap(float(o) - float(self), "sub")
    def __mul__(self, o): return self._wrap(float(self) * float(o), "mul")
    def __rmul__(self, o): return self._wrap(float(o) * float(self), "mul")
    def __truediv__(self, o): return self._wrap(float(self) / float(o), "div")
    def __rtruediv__(self, o): return self._wrap(float(o) / float(self), "div")
    # sign flip is costed like a subtraction from zero
    def __neg__(self): return self._wrap(-float(self), "sub")

    def __pow__(self, p):
        kind = {2: "square", 3: "cube", 0.5: "sqrt"}.get(p, "frac_exp")
        return self._wrap(float(self) ** p, kind)


def count_ops(func, *args) -> Counter:
    """Run ``func`` on tracked copies of float ``args``; return the op counts."""
    ops: Counter = Counter()
    func(*(_Tracked(a, ops) for a in args))
    return ops


_KERNEL_OPS: dict[PadeOrder, Counter] = {}


def pade_kernel_ops(order: PadeOrder) -> Counter:
    """Operation counts of one Horner-form approximant evaluation."""
    order = PadeOrder.parse(order)
    if order not in _KERNEL_OPS:
        _KERNEL_OPS[order] = count_ops(order.kernel, 1.05)
    return Counter(_KERNEL_OPS[order])


def pade_correction_ops(order: PadeOrder = PadeOrder.O23) -> Counter:
    """Everything a Padé-corrected log10 costs beyond the true-log path.

    ``z = y_anchor / y``, the approximant, then ``anchor_log - p / ln10``.
    """
    return pade_kernel_ops(order) + Counter(div=2, sub=1)


# -- static per-solve tallies ---------------------------------------------------
# These mirror solvers._iterate line by line; keep them in sync.

_SETUP = Counter(div=2)                   # a = 2.51/Re, b = eps/3.71
_SLOPE_SETUP = Counter(mul=1, div=1)      # 5.02 / (ln10 * Re)
_SCALED_SETUP = Counter(mul=1)            # 100 * a
_Y = Counter(mul=1, add=1)                # a*x + b
_RESIDUAL = Counter(mul=1, add=1)         # x + 2*lg
_NEWTON = Counter(div=1, sub=2)           # x - F/fp, |x_next - x|
_FIXED_POINT = Counter(sub=2)             # x - F, |x_next - x|
_SLOPE = {"analytic": Counter(div=1, add=1),          # 1 + s/y
          "scaled": Counter(mul=1, add=2, div=1)}     # 1 + s/(b + 100a*x)
_LOG = Counter(log10=1)
_Z_RATIO = Counter(div=1)

_START = {
    "fixed": Counter(),
    "explicit": Counter(),
    "poly": Counter(mul=4, div=4, add=5, sub=1),
    "rough": Counter(div=1, log10=1, mul=1),
}


def tally_solve(result, method: str | None = None) -> OpTally:
    """Static operation tally of a finished solve.

    ``method`` ("one_log" or "reference") defaults to ``result.method``;
    passing a different one is an error.
    """
    if method is None:
        method = result.method
    if method != result.method:
        raise ValueError(f"result was produced by {result.method!r}, not {method!r}")
    cfg = result.config
    ops = Counter(_SETUP)
    ops += _START[cfg.start_kind]
    dmode = cfg.derivative_mode
    if dmode != "unit":
        ops += _SLOPE_SETUP
        if cfg.fprime_form == "scaled":
            ops += _SCALED_SETUP
    pade_ops = pade_kernel_ops(cfg.pade_order) + Counter(div=1, sub=1)
    for rec in result.trace:
        ops += _Y + _RESIDUAL
        ops += _FIXED_POINT if dmode == "unit" else _NEWTON
        if rec.z is not None:
            ops += _Z_RATIO
        ops += _LOG if rec.true_log else pade_ops
        if dmode == "recompute" or (dmode == "freeze" and rec.index == 1):
            ops += _SLOPE[cfg.fprime_form]
    return OpTally(ops)


def cost_estimate(tally: OpTally, model: CostModel | None = None) -> float:
    """Weighted operation count."""
    weights = (model or CostModel()).weights
    total = 0.0
    for kind, n in tally.counts.items():
        if not n:
            continue
        if kind not in weights:
            raise CostModelError(f"cost model has no weight for {kind!r}")
        total += n * weights[kind]
    return total
