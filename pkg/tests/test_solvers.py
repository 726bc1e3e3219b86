import json
import math

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from colebrook_pade.colebrook import FlowConditions
from colebrook_pade.exceptions import BracketError, ConfigError
from colebrook_pade.pade_log import PadeOrder
from colebrook_pade.solvers import (
    Z_BAND,
    SolverConfig,
    solve_one_log,
    solve_oracle_high_precision,
    solve_reference_newton,
)

from conftest import make_conditions

EX1 = FlowConditions(8.31e3, 0.024)
EX2 = FlowConditions(2.5e6, 4e-4)

reynolds = st.floats(math.log10(4001.0), math.log10(9.99e7)).map(lambda t: 10.0 ** t)
roughness = st.one_of(st.just(0.0), st.floats(0.0, 0.0499))
log_free_start = st.one_of(st.sampled_from(["fixed", "poly"]), st.floats(3.7, 12.4))


def mp_root(c):
    """Independent 40-digit root of the Colebrook equation."""
    with mpmath.workdps(40):
        re, eps = mpmath.mpf(c.reynolds), mpmath.mpf(c.rel_roughness)
        f = lambda x: x + 2 * mpmath.log10(2.51 * x / re + eps / 3.71)
        return float(mpmath.findroot(f, (mpmath.mpf(1), mpmath.mpf(15)), solver="anderson"))


class TestOracle:
    def test_worked_example_finals(self):
        assert solve_oracle_high_precision(EX1) == pytest.approx(4.22204103, abs=1e-8)
        assert solve_oracle_high_precision(EX2) == pytest.approx(7.873172814, abs=1e-8)

    @given(reynolds, roughness)
    @settings(max_examples=40, deadline=None)
    def test_agrees_with_multiprecision_root(self, re, eps):
        c = make_conditions(re, eps)
        assert solve_oracle_high_precision(c) == pytest.approx(mp_root(c), abs=1e-12)

    @given(reynolds, roughness, st.floats(1.0, 14.9))
    def test_residual_increasing_on_bracket(self, re, eps, x):
        c = make_conditions(re, eps)
        f = lambda t: t + 2 * math.log10(2.51 * t / c.reynolds + c.rel_roughness / 3.71)
        assert f(x + 0.1) > f(x)

    def test_bracket_failure(self):
        with pytest.raises(BracketError):
            solve_oracle_high_precision(EX1, lo=5.0, hi=15.0)


class TestWorkedExamples:
    """Digit-level replay; the reference traces used the 'scaled' slope."""

    def test_example_1(self):
        cfg = SolverConfig(initial_guess=6.279860788, fprime_form="scaled")
        r = solve_one_log(EX1, cfg)
        t = r.trace
        assert [t[0].x_next, t[1].x_next, t[2].x_next] == pytest.approx(
            [4.157822498, 4.224087653, 4.221975832], abs=1e-8)
        assert t[1].z == pytest.approx(1.082972765, abs=1e-8)
        assert t[1].pade_term == pytest.approx(0.034617535, abs=1e-8)
        assert t[2].z == pytest.approx(1.080174034, abs=1e-8)
        assert t[2].pade_term == pytest.approx(0.033493733, abs=1e-8)
        assert r.x_final == pytest.approx(4.22204103, abs=1e-6)
        assert r.log_call_count == 1 and r.converged

    def test_example_2(self):
        cfg = SolverConfig(initial_guess=7.401979091, fprime_form="scaled")
        r = solve_one_log(EX2, cfg)
        t = r.trace
        assert t[0].x_next == pytest.approx(7.876244936, abs=1e-8)
        assert t[1].z == pytest.approx(0.995885374, abs=1e-8)
        assert t[1].pade_term == pytest.approx(-0.001790646, abs=1e-8)
        assert t[1].x_next == pytest.approx(7.873152664, abs=1e-8)
        assert t[2].x_next == pytest.approx(7.873172946, abs=1e-8)
        assert r.x_final == pytest.approx(7.873172814, abs=1e-6)

    @pytest.mark.parametrize("c, x0", [(EX1, 6.279860788), (EX2, 7.401979091)])
    def test_analytic_slope_reaches_same_root_faster(self, c, x0):
        scaled = solve_one_log(c, SolverConfig(initial_guess=x0, fprime_form="scaled"))
        exact = solve_one_log(c, SolverConfig(initial_guess=x0))
        assert exact.x_final == pytest.approx(scaled.x_final, abs=1e-6)
        assert exact.iterations < scaled.iterations


class TestReference:
    def test_example_1_same_count_and_root_as_one_log(self):
        cfg = SolverConfig(initial_guess=6.279860788)
        ref, one = solve_reference_newton(EX1, cfg), solve_one_log(EX1, cfg)
        assert ref.iterations == one.iterations
        assert ref.x_final == pytest.approx(one.x_final, abs=1e-6)

    def test_example_2_matches_oracle(self):
        r = solve_reference_newton(EX2, SolverConfig(initial_guess=7.401979091))
        assert r.x_final == pytest.approx(solve_oracle_high_precision(EX2), abs=1e-9)
        assert f"{r.x_final:.6f}".startswith("7.873173")

    @given(reynolds, roughness, log_free_start)
    @settings(max_examples=60)
    def test_one_log_per_iteration(self, re, eps, start):
        r = solve_reference_newton(make_conditions(re, eps), SolverConfig(initial_guess=start))
        assert r.log_call_count == r.iterations
        assert all(rec.true_log and rec.z is None for rec in r.trace)


@pytest.mark.parametrize("solver", [solve_one_log, solve_reference_newton])
@pytest.mark.parametrize("c", [EX1, EX2, FlowConditions(1e7, 0.0), FlowConditions(5e3, 0.04)])
def test_starting_at_root_converges_in_one_iteration(solver, c):
    root = solve_oracle_high_precision(c)
    r = solver(c, SolverConfig(initial_guess=root))
    assert r.iterations == 1 and r.converged
    assert r.trace[0].x_next == pytest.approx(root, abs=1e-7)


class TestOneLogInvariants:
    @given(reynolds, roughness, log_free_start,
           st.sampled_from(["anchored", "chained"]),
           st.sampled_from(["recompute", "freeze", "unit"]),
           st.sampled_from(list(PadeOrder)))
    @settings(max_examples=150)
    def test_single_log_call(self, re, eps, start, zmode, dmode, order):
        cfg = SolverConfig(initial_guess=start, z_sequence=zmode, derivative_mode=dmode,
                           pade_order=order)
        r = solve_one_log(make_conditions(re, eps), cfg)
        assert r.log_call_count == 1
        assert sum(rec.true_log for rec in r.trace) == 1

    def test_rough_start_costs_a_second_log(self):
        r = solve_one_log(EX1, SolverConfig(initial_guess="rough"))
        assert r.log_call_count == 2
        assert r.x_final == pytest.approx(solve_oracle_high_precision(EX1), abs=1e-6)

    @given(reynolds, roughness, log_free_start)
    @settings(max_examples=80)
    def test_trace_structure(self, re, eps, start):
        cfg = SolverConfig(initial_guess=start)
        r = solve_one_log(make_conditions(re, eps), cfg)
        calls = [rec.cumulative_log_calls for rec in r.trace]
        assert calls == sorted(calls)
        assert r.trace[0].z is None
        assert all(rec.z is not None for rec in r.trace[1:])
        assert r.converged
        assert abs(r.trace[-1].x_next - r.trace[-1].x) <= cfg.abs_tolerance_x
        assert r.x_final == r.trace[-1].x_next
        assert r.friction_factor == 1.0 / r.x_final**2

    @given(reynolds, roughness)
    @settings(max_examples=100)
    def test_matches_oracle_and_true_residual_from_poly_start(self, re, eps):
        c = make_conditions(re, eps)
        r = solve_one_log(c, SolverConfig(initial_guess="poly"))
        assert abs(r.x_final - solve_oracle_high_precision(c)) <= 1e-6
        y = 2.51 * r.x_final / c.reynolds + c.rel_roughness / 3.71
        assert abs(r.x_final + 2 * math.log10(y)) <= 10 * 1e-7

    def test_modes_agree_over_grid(self, grid):
        for c in grid:
            for start in ("fixed", "poly"):
                base = solve_one_log(c, SolverConfig(initial_guess=start)).x_final
                for kw in ({"z_sequence": "chained"}, {"derivative_mode": "freeze"},
                           {"derivative_mode": "unit"}):
                    r = solve_one_log(c, SolverConfig(initial_guess=start, **kw))
                    assert r.converged
                    assert abs(r.x_final - base) <= 1e-6, (c, start, kw)

    def test_fixed_point_needs_more_iterations(self):
        cfg = dict(initial_guess=6.279860788)
        newton = solve_one_log(EX1, SolverConfig(**cfg))
        fixed_point = solve_one_log(EX1, SolverConfig(derivative_mode="unit", **cfg))
        assert fixed_point.iterations > newton.iterations
        assert all(rec.Fprime == 1.0 for rec in fixed_point.trace)

    def test_freeze_reuses_first_slope(self):
        r = solve_one_log(EX2, SolverConfig(initial_guess="poly", derivative_mode="freeze"))
        assert len({rec.Fprime for rec in r.trace}) == 1

    def test_chained_anchor_telescopes(self):
        r = solve_one_log(EX1, SolverConfig(initial_guess=6.279860788, z_sequence="chained"))
        t = r.trace
        for prev, cur in zip(t[1:], t[2:]):
            assert cur.z == pytest.approx(prev.y / cur.y, rel=1e-15)
            assert cur.log10_y == pytest.approx(prev.log10_y - cur.pade_term, rel=1e-15)

    def test_anchored_always_refers_to_first_argument(self):
        r = solve_one_log(EX1, SolverConfig(initial_guess=6.279860788))
        y0, a = r.trace[0].y, r.trace[0].log10_y
        for rec in r.trace[1:]:
            assert rec.z == y0 / rec.y
            assert rec.log10_y == a - rec.pade_term

    def test_full_precision_ln10_changes_little(self):
        a = solve_one_log(EX2, SolverConfig(initial_guess="poly"))
        b = solve_one_log(EX2, SolverConfig(initial_guess="poly", full_precision_ln10=True))
        assert a.x_final == pytest.approx(b.x_final, abs=1e-9)


class TestBand:
    # start far below the smooth high-Re root (~12.97) so z01 ~ 0.3
    C = make_conditions(9.9e7, 0.0)

    def test_out_of_band_kept_with_warning(self):
        r = solve_one_log(self.C, SolverConfig(initial_guess=3.7))
        assert r.log_call_count == 1
        assert r.warnings and any(rec.out_of_band for rec in r.trace)
        assert not Z_BAND[0] <= r.trace[1].z <= Z_BAND[1]

    def test_strict_band_spends_a_true_log(self):
        r = solve_one_log(self.C, SolverConfig(initial_guess=3.7, strict_band=True))
        assert r.log_call_count >= 2
        assert r.trace[1].true_log
        assert r.x_final == pytest.approx(solve_oracle_high_precision(self.C), abs=1e-9)

    def test_in_band_solves_have_no_warnings(self):
        r = solve_one_log(EX2, SolverConfig(initial_guess="poly", strict_band=True))
        assert r.warnings == [] and r.log_call_count == 1


class TestConfigAndResult:
    @pytest.mark.parametrize("kw", [
        {"initial_guess": "lucky"}, {"initial_guess": -3.0}, {"initial_guess": float("nan")},
        {"z_sequence": "zigzag"}, {"derivative_mode": "secant"}, {"fprime_form": "numeric"},
        {"pade_order": "4,4"}, {"abs_tolerance_x": 0.0}, {"max_iterations": 0},
        {"max_iterations": 2.5}, {"initial_guess": True},
    ])
    def test_invalid(self, kw):
        with pytest.raises(ConfigError):
            SolverConfig(**kw)

    def test_defaults(self):
        cfg = SolverConfig()
        assert (cfg.initial_guess, cfg.z_sequence, cfg.derivative_mode, cfg.pade_order,
                cfg.abs_tolerance_x, cfg.max_iterations, cfg.strict_band) == (
            "fixed", "anchored", "recompute", PadeOrder.O23, 1e-7, 50, False)

    def test_non_convergence_is_reported(self):
        r = solve_one_log(EX1, SolverConfig(max_iterations=1))
        assert not r.converged and r.iterations == 1

    def test_accepts_tuple_conditions(self):
        assert solve_one_log((2.5e6, 4e-4)).x_final == pytest.approx(7.873172814, abs=1e-6)

    def test_to_dict_is_json_serialisable(self):
        d = json.loads(json.dumps(solve_one_log(EX1).to_dict()))
        assert d["log_call_count"] == 1
        assert d["lambda"] == pytest.approx(1 / d["x_final"] ** 2)
        assert d["trace"][0]["z"] is None
        assert d["config"]["pade_order"] == "2,3"
