import math

import numpy as np
import pytest

from conftest import half_square, scalar_cubic
from data_io import gen_logistic_instance, gen_logsumexp_instance
from errors import DegenerateStepError, LineSearchStalledError
from oracles import ProblemMetadata, logsumexp_constants, make_cubic_norm_worstcase, make_logistic, make_logsumexp
from solvers.newton import (
    adan_h0_init,
    adan_plus_mk,
    adan_step,
    newton_step_budget,
    reg_newton_step,
    run_adan,
    run_adan_plus,
    run_reg_newton,
    superlinear_monitor,
)
from solvers.newton.estimates import MIN_H
from solvers.types import NewtonState, RunStatus, SolverConfig, TraceRecord

ACCOUNTING = {"newton_step_count", "newton_step_budget", "estimate_ceiling"}


def grad_trace(values):
    return [TraceRecord(k, 0.0, g, 0.0, 0.0, 1.0, 1, k + 1, 0.0) for k, g in enumerate(values)]


# --- single steps -----------------------------------------------------------


def test_reg_newton_step_on_half_square(quad):
    step = reg_newton_step(quad, np.array([1.0]), 1.0)
    assert step.lam == pytest.approx(1.0, abs=1e-12)
    assert step.x_next[0] == pytest.approx(0.5, abs=1e-12)
    assert step.step_norm == pytest.approx(0.5, abs=1e-12)


def test_reg_newton_step_on_scalar_cubic(cubic):
    step = reg_newton_step(cubic, np.array([1.0]), 1.0)
    assert step.lam == pytest.approx(1.0, abs=1e-12)
    assert step.x_next[0] == pytest.approx(2.0 / 3.0, abs=1e-12)


def test_reg_newton_step_keeps_stationary_point(quad):
    step = reg_newton_step(quad, np.array([0.0]), 1.0)
    assert step.x_next[0] == 0.0
    assert step.lam == 0.0


def test_adan_first_trial_accepts(quad):
    state = NewtonState(x=np.array([1.0]), k=0, h_k=4.0)
    new_state, record = adan_step(quad, state, SolverConfig())
    lam = math.sqrt(2.0)
    assert record.h_k == pytest.approx(2.0)
    assert record.lam == pytest.approx(lam, abs=1e-12)
    assert record.inner_count == 1
    assert new_state.x[0] == pytest.approx(1.0 - 1.0 / (1.0 + lam), abs=1e-9)
    assert new_state.x[0] == pytest.approx(0.585786, abs=1e-6)
    assert new_state.newton_steps == 1
    np.testing.assert_array_equal(new_state.prev_x, [1.0])


@pytest.mark.parametrize("h_prev", np.logspace(-3, 3, 13))
def test_adan_accepts_quadratics_on_first_trial(h_prev):
    oracle = half_square()
    _, record = adan_step(oracle, NewtonState(x=np.array([3.0]), h_k=float(h_prev)), SolverConfig())
    assert record.inner_count == 1


def test_adan_stalls_when_inner_cap_is_hit(cubic):
    cfg = SolverConfig(h0=1e-12, max_inner=1)
    with pytest.raises(LineSearchStalledError):
        adan_step(cubic, NewtonState(x=np.array([1.0]), h_k=1e-12), cfg)


# --- H estimates ------------------------------------------------------------


def test_h0_init_is_floored_on_quadratics(quad):
    assert adan_h0_init(quad, np.array([1.0])) == MIN_H


def test_h0_init_on_scalar_cubic(cubic):
    assert adan_h0_init(cubic, np.array([1.0]), perturbation_scale=0.5) == pytest.approx(1.0, abs=1e-9)


def test_h0_init_rejects_bad_scale(cubic):
    with pytest.raises(ValueError):
        adan_h0_init(cubic, np.array([1.0]), perturbation_scale=0.0)


@pytest.mark.parametrize("dim", [2, 5, 10])
def test_h0_init_never_exceeds_known_constant(dim, rng):
    oracle = make_cubic_norm_worstcase(dim)
    for _ in range(5):
        x0 = rng.standard_normal(dim)
        assert adan_h0_init(oracle, x0) <= oracle.metadata.hessian_lipschitz


def test_mk_examples(quad, cubic):
    assert adan_plus_mk(quad, np.array([1.0]), np.array([-0.3])) == pytest.approx(0.0, abs=1e-15)
    assert adan_plus_mk(cubic, np.array([1.0]), np.array([0.5])) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(DegenerateStepError):
        adan_plus_mk(cubic, np.array([1.0]), np.array([1.0]))


def test_mk_underestimates_known_constant(rng):
    oracle = make_cubic_norm_worstcase(4)
    for _ in range(20):
        x, y = rng.standard_normal(4), rng.standard_normal(4)
        assert adan_plus_mk(oracle, x, y) <= oracle.metadata.hessian_lipschitz


# --- fixed-H driver ---------------------------------------------------------


def test_run_reg_newton_on_half_square(quad):
    result = run_reg_newton(quad, np.array([1.0]), SolverConfig(h_const=1.0, check_invariants=True))
    assert result.status is RunStatus.CONVERGED
    xs = [r.f for r in result.trace]
    assert all(b < a for a, b in zip(xs, xs[1:]))
    assert result.trace[0].step_norm == pytest.approx(0.5)
    assert result.invariant_violations == []
    assert result.final_record.grad_norm <= 1e-8


def test_run_reg_newton_at_minimizer(quad):
    result = run_reg_newton(quad, np.array([0.0]), SolverConfig())
    assert result.status is RunStatus.CONVERGED
    assert result.iterations == 0
    assert len(result.trace) == 1
    assert result.final_record.lam == 0.0


@pytest.mark.parametrize("h", [1.0, None], ids=["h_one", "h_metadata"])
def test_run_reg_newton_worstcase_has_no_violations(h):
    oracle = make_cubic_norm_worstcase(2)
    h = oracle.metadata.hessian_lipschitz if h is None else h
    cfg = SolverConfig(h_const=h, check_invariants=True, max_iters=200)
    result = run_reg_newton(oracle, np.zeros(2), cfg)
    assert result.invariant_violations == []
    assert result.iterations > 0


def test_run_reg_newton_stops_at_max_iters(cubic):
    result = run_reg_newton(cubic, np.array([1.0]), SolverConfig(h_const=1.0, max_iters=3))
    assert result.status is RunStatus.MAX_ITERS
    assert result.iterations == 3
    assert [r.newton_steps_cum for r in result.trace] == [1, 2, 3, 3]


def test_trace_records_include_final_point(cubic):
    result = run_reg_newton(cubic, np.array([1.0]), SolverConfig(h_const=1.0))
    final = result.final_record
    assert (final.lam, final.step_norm, final.inner_count) == (0.0, 0.0, 0)
    assert [r.k for r in result.trace] == list(range(len(result.trace)))


# --- AdaN -------------------------------------------------------------------


def test_run_adan_on_half_square(quad):
    result = run_adan(quad, np.array([1.0]), SolverConfig(h0=1.0))
    assert result.status is RunStatus.CONVERGED
    h_max = max(r.h_k for r in result.trace)
    total = 0
    for record in result.trace:
        total += record.inner_count
        assert record.newton_steps_cum == total
        assert record.newton_steps_cum <= newton_step_budget(record.k, h_max, 1.0)


def test_run_adan_at_minimizer(quad):
    result = run_adan(quad, np.array([0.0]), SolverConfig())
    assert result.status is RunStatus.CONVERGED
    assert result.final_record.newton_steps_cum == 0


def _accounting_problems():
    features, labels = gen_logistic_instance(60, 6, seed=5)
    vectors, offsets = gen_logsumexp_instance(40, 5, seed=6)
    _, h_lse = logsumexp_constants(vectors, 0.5)
    return [
        pytest.param(scalar_cubic(), np.array([3.0]), 1e-8, id="scalar_cubic"),
        pytest.param(make_cubic_norm_worstcase(5), np.zeros(5), 1e-8, id="worstcase"),
        pytest.param(make_logistic(features, labels, 1e-3), np.ones(6), 1e-6, id="logistic"),
        pytest.param(
            make_logsumexp(vectors, offsets, 0.5, metadata=ProblemMetadata(hessian_lipschitz=h_lse)),
            np.zeros(5),
            1e-6,
            id="logsumexp",
        ),
    ]


@pytest.mark.parametrize("oracle, x0, tol", _accounting_problems())
@pytest.mark.parametrize("h0", [1e-6, 1.0, 1e3])
def test_adan_newton_step_accounting(oracle, x0, tol, h0):
    cfg = SolverConfig(h0=h0, grad_tol=tol, max_iters=300, check_invariants=True)
    result = run_adan(oracle, x0, cfg)
    assert [v for v in result.invariant_violations if v.name in ACCOUNTING] == []
    h_true = oracle.metadata.hessian_lipschitz
    for record in result.trace:
        assert record.newton_steps_cum <= newton_step_budget(record.k, h_true, h0)


def test_adan_worstcase_from_tiny_h0_is_violation_free():
    oracle = make_cubic_norm_worstcase(5)
    cfg = SolverConfig(h0=1e-6, max_iters=200, check_invariants=True)
    result = run_adan(oracle, np.zeros(5), cfg, h_true=1.0)
    assert result.invariant_violations == []
    for record in result.trace:
        assert record.newton_steps_cum <= newton_step_budget(record.k, 1.0, 1e-6)


def test_newton_step_budget_values():
    assert newton_step_budget(0, 0.0, 1.0) == 2.0
    assert newton_step_budget(3, 4.0, 1.0) == pytest.approx(8.0 + 3.0)
    assert newton_step_budget(3, 0.25, 1.0) == 8.0


# --- AdaN+ ------------------------------------------------------------------


def test_adan_plus_halves_estimate_on_quadratics(quad):
    result = run_adan_plus(quad, np.array([1.0]), SolverConfig(h0=1.0, check_invariants=True))
    assert result.status is RunStatus.CONVERGED
    steps = [r for r in result.trace if r.inner_count]
    assert steps[0].h_k == 1.0
    assert steps[1].h_k == MIN_H / 2.0
    for previous, current in zip(steps[1:], steps[2:]):
        assert current.h_k == previous.h_k / 2.0
    assert all(r.inner_count == 1 for r in steps)


def test_adan_plus_at_minimizer(quad):
    result = run_adan_plus(quad, np.array([0.0]), SolverConfig())
    assert result.status is RunStatus.CONVERGED
    assert result.iterations == 0


def test_adan_plus_estimate_settles_on_scalar_cubic(cubic):
    result = run_adan_plus(cubic, np.array([1.0]), SolverConfig(h0=1.0, check_invariants=True))
    assert result.status is RunStatus.CONVERGED
    for record in result.trace[1:]:
        assert 0.5 - 1e-9 <= record.h_k <= 1.0 + 1e-9
    names = {v.name for v in result.invariant_violations}
    assert not names & {"estimate_halving_floor", "estimate_local_floor", "shift_identity", "step_bound"}


def test_adan_plus_sequence_law_on_worstcase():
    oracle = make_cubic_norm_worstcase(5)
    result = run_adan_plus(oracle, np.zeros(5), SolverConfig(h0=1.0, max_iters=100, check_invariants=True))
    steps = [r for r in result.trace if r.inner_count]
    for previous, current in zip(steps[1:], steps[2:]):
        assert current.h_k >= previous.h_k / 2.0
    assert [v for v in result.invariant_violations if v.name.startswith("estimate_")] == []


# --- superlinear monitor ----------------------------------------------------


def test_superlinear_monitor_edge_cases():
    assert superlinear_monitor([], 1.0, 1.0) == []
    assert superlinear_monitor(grad_trace([10.0, 9.0, 8.0]), 1.0, 1.0) == []
    with pytest.raises(ValueError):
        superlinear_monitor([], 0.0, 1.0)


def test_superlinear_monitor_flags():
    # threshold mu^2 / 4h = 0.25, factor 2 sqrt(h) / mu = 2
    flags = superlinear_monitor(grad_trace([0.2, 0.1, 0.2]), 1.0, 1.0)
    assert flags == [True, False]


def test_superlinear_regime_on_strongly_convex_logistic():
    features, labels = gen_logistic_instance(100, 5, seed=7)
    mu = 0.1
    oracle = make_logistic(features, labels, mu)
    h = oracle.metadata.hessian_lipschitz
    cfg = SolverConfig(h_const=h, grad_tol=1e-12, max_iters=500)
    result = run_reg_newton(oracle, np.ones(5), cfg)
    assert result.status is RunStatus.CONVERGED

    flags = superlinear_monitor(result.trace, mu, h, atol=1e-15)
    assert flags and all(flags)
    threshold = mu * mu / (4.0 * h)
    trigger = next(r.k for r in result.trace if r.grad_norm <= threshold)
    assert result.final_record.k - trigger <= 5
