from __future__ import annotations

import numpy as np
import pytest
from scipy.optimize import brentq

from kwgraph import (
    BoundedRegimeError,
    ProbeVerdict,
    RegimeTag,
    SolveStatus,
    SolverOptions,
    UnboundedRegimeError,
    classify_regime,
    complete_graph,
    compute_spectrum,
    default_eq_tol,
    eval_J,
    laplacian,
    minimize,
    mu_inner,
    path_graph,
    probe_divergence,
    random_connected_graph,
    verify_candidate,
)


# ---------------------------------------------------------------- regimes


def test_classify_below_gap(p3, p3_spec):
    # lambda_1 = 1 on the unit path
    r = classify_regime(p3_spec, 0.5, 7.0, 0)
    assert r.tag is RegimeTag.MINIMIZER_IN_EK_PERP
    assert r.subspace_index == 0
    assert not r.trivial_subspace


def test_classify_at_gap_three_ways(p3, p3_spec):
    r0 = classify_regime(p3_spec, 1.0, 0.0, 0)
    assert r0.tag is RegimeTag.EIGENFUNCTION_SOLUTION
    assert r0.subspace_index == 0
    rneg = classify_regime(p3_spec, 1.0, -2.0, 0)
    assert rneg.tag is RegimeTag.MINIMIZER_IN_NEXT_PERP
    assert rneg.subspace_index == 1
    assert not rneg.trivial_subspace
    rpos = classify_regime(p3_spec, 1.0, 0.5, 0)
    assert rpos.tag is RegimeTag.UNBOUNDED_BELOW


def test_classify_above_gap(p3, p3_spec):
    for beta in (-1.0, 0.0, 1.0):
        r = classify_regime(p3_spec, 1.0 + 1e-6, beta, 0)
        assert r.tag is RegimeTag.UNBOUNDED_BELOW


def test_classify_trivial_next_perp(k2, k2_spec):
    # K2 has distinct eigenvalues {0, 2}; at alpha = 2, beta < 0 the
    # minimization moves to E_1^perp = {0}
    r = classify_regime(k2_spec, 2.0, -1.0, 0)
    assert r.tag is RegimeTag.MINIMIZER_IN_NEXT_PERP
    assert r.subspace_index == 1
    assert r.trivial_subspace


def test_classify_eq_tol_boundary(p3, p3_spec):
    tol = default_eq_tol(1.0)
    assert tol == 1e-9 * 2.0
    inside = classify_regime(p3_spec, 1.0 + 0.5 * tol, 0.0, 0)
    assert inside.tag is RegimeTag.EIGENFUNCTION_SOLUTION
    outside = classify_regime(p3_spec, 1.0 + 2.0 * tol, 0.0, 0)
    assert outside.tag is RegimeTag.UNBOUNDED_BELOW


def test_classify_rejects_bad_k(p3, p3_spec):
    with pytest.raises(ValueError, match="out of range"):
        classify_regime(p3_spec, 0.0, 0.0, 2)
    with pytest.raises(ValueError, match="out of range"):
        classify_regime(p3_spec, 0.0, 0.0, -1)


def test_solver_options_validation():
    with pytest.raises(ValueError):
        SolverOptions(grad_tol=0.0)
    with pytest.raises(ValueError):
        SolverOptions(max_iters=0)
    with pytest.raises(ValueError):
        SolverOptions(armijo_c=1.5)
    with pytest.raises(ValueError):
        SolverOptions(backtrack=1.0)


# ---------------------------------------------------------------- K2 line


def k2_scalar_objective(beta):
    """J restricted to u = (t, -t) on the unit two-clique with h = 1."""

    def J(t):
        return 2.0 * t * t - beta * np.log(np.exp(t) + np.exp(-t))

    return J


def test_k2_supercritical_beta(k2, k2_spec):
    report = minimize(k2, k2_spec, 0.0, 8.0)
    assert report.status is SolveStatus.CONVERGED
    # stationarity on the line: 4t = 8 tanh(t), nonzero root
    t_star = brentq(lambda t: 4.0 * t - 8.0 * np.tanh(t), 0.1, 10.0, xtol=1e-14)
    assert np.isclose(abs(report.minimizer[0]), t_star, rtol=1e-9)
    assert np.allclose(report.minimizer, [report.minimizer[0], -report.minimizer[0]])
    J = k2_scalar_objective(8.0)
    assert np.isclose(report.objective, J(t_star), rtol=1e-12)
    assert report.objective < J(0.0) - 1.0
    assert report.grad_sup <= 1e-10
    assert report.residual_sup <= 1e-9


def test_k2_negative_beta_flat_minimum(k2, k2_spec):
    report = minimize(k2, k2_spec, 0.0, -3.0)
    assert report.status is SolveStatus.CONVERGED
    assert float(np.max(np.abs(report.minimizer))) <= 1e-8
    assert np.isclose(report.objective, 3.0 * np.log(2.0), rtol=1e-12)


def test_k2_shallow_saddle_just_past_critical(k2, k2_spec):
    # beta_crit = 4 on this graph: u = 0 turns from minimum to saddle
    report = minimize(k2, k2_spec, 0.0, 4.0001)
    assert report.status is SolveStatus.CONVERGED
    t_star = brentq(lambda t: 4.0 * t - 4.0001 * np.tanh(t), 1e-4, 10.0,
                    xtol=1e-15)
    # curvature at the minimum is ~2e-4, so grad_tol 1e-10 pins t only
    # to about 1e-6 in absolute terms
    assert np.isclose(abs(report.minimizer[0]), t_star, atol=2e-6)
    J = k2_scalar_objective(4.0001)
    assert report.objective <= J(0.0)
    assert np.isclose(report.objective, J(t_star), rtol=1e-10)


def test_k2_nonconstant_h(k2_spec):
    g = complete_graph(2, h=np.array([1.0, 2.0]))
    spec = compute_spectrum(g)
    report = minimize(g, spec, 0.0, 1.0)
    assert report.status is SolveStatus.CONVERGED
    # on the line u = (t, -t): d/dt J = 4t - (e^t - 2 e^-t)/(e^t + 2 e^-t)
    t_star = brentq(
        lambda t: 4.0 * t - (np.exp(t) - 2.0 * np.exp(-t)) / (np.exp(t) + 2.0 * np.exp(-t)),
        -5.0, 5.0, xtol=1e-14)
    assert t_star < 0.0
    assert np.isclose(report.minimizer[0], t_star, rtol=1e-8)
    assert report.residual_sup <= 1e-9


def test_k2_beta_zero_quadratic(k2, k2_spec):
    report = minimize(k2, k2_spec, 1.0, 0.0)
    assert report.status is SolveStatus.CONVERGED
    assert float(np.max(np.abs(report.minimizer))) <= 1e-10
    assert abs(report.objective) <= 1e-12


# ---------------------------------------------------------------- P3 cases


def test_p3_next_perp_regime(p3, p3_spec):
    report = minimize(p3, p3_spec, 1.0, -1.0)
    assert report.regime.tag is RegimeTag.MINIMIZER_IN_NEXT_PERP
    assert report.regime.subspace_index == 1
    assert report.status is SolveStatus.CONVERGED
    assert float(np.max(np.abs(report.minimizer))) <= 1e-8
    assert np.isclose(report.objective, np.log(3.0), atol=1e-10)
    assert np.isclose(report.xi, -1.0 / 3.0, atol=1e-10)
    ((s, i, value),) = report.t_multipliers
    assert (s, i) == (1, 1)
    assert abs(value) <= 1e-10


def test_p3_eigenfunction_solution(p3, p3_spec):
    report = minimize(p3, p3_spec, 1.0, 0.0)
    assert report.regime.tag is RegimeTag.EIGENFUNCTION_SOLUTION
    assert report.status is SolveStatus.CONVERGED
    u = report.minimizer
    # -Delta u = lambda_1 u with lambda_1 = 1
    assert float(np.max(np.abs(-laplacian(p3, u) - 1.0 * u))) <= 1e-9
    assert np.isclose(mu_inner(p3, u, u), 1.0, atol=1e-12)
    assert report.objective == 0.0
    assert report.iterations == 0


def test_trivial_next_perp_returns_zero(k2, k2_spec):
    report = minimize(k2, k2_spec, 2.0, -1.0)
    assert report.regime.trivial_subspace
    assert report.status is SolveStatus.CONVERGED
    assert np.array_equal(report.minimizer, np.zeros(2))
    assert np.isclose(report.objective, np.log(2.0), rtol=1e-14)
    assert report.iterations == 0


def test_minimize_raises_on_unbounded(k2, k2_spec):
    with pytest.raises(UnboundedRegimeError):
        minimize(k2, k2_spec, 3.0, 1.0)
    with pytest.raises(UnboundedRegimeError):
        minimize(k2, k2_spec, 2.0, 1.0)


def test_max_iters_status(k2, k2_spec):
    opts = SolverOptions(max_iters=1)
    report = minimize(k2, k2_spec, 0.0, 8.0, opts=opts)
    assert report.status is SolveStatus.MAX_ITERS
    assert report.iterations == 1


# ---------------------------------------------------------------- reports


def test_report_trace_monotone(k2, k2_spec):
    report = minimize(k2, k2_spec, 0.0, 8.0)
    trace = np.asarray(report.trace)
    assert trace.shape[0] == report.iterations + 1
    assert np.all(np.diff(trace) <= 1e-12)
    assert np.isclose(trace[-1], report.objective, rtol=1e-14)


def test_solve_deterministic(p3, p3_spec):
    a = minimize(p3, p3_spec, 0.3, 5.0)
    b = minimize(p3, p3_spec, 0.3, 5.0)
    assert np.array_equal(a.minimizer, b.minimizer)
    assert a.objective == b.objective
    assert a.iterations == b.iterations
    assert a.trace == b.trace


def test_report_records_inputs(k2, k2_spec):
    report = minimize(k2, k2_spec, 0.25, -2.0, k=0)
    assert report.alpha == 0.25
    assert report.beta == -2.0
    assert report.regime.subspace_index == 0


def test_minimizer_matches_objective(p3, p3_spec):
    report = minimize(p3, p3_spec, 0.5, 3.0)
    assert np.isclose(eval_J(p3, report.minimizer, 0.5, 3.0), report.objective,
                      rtol=1e-13)


def test_random_solves_verify():
    rng = np.random.default_rng(44)
    for _ in range(15):
        g = random_connected_graph(rng, int(rng.integers(3, 11)))
        spec = compute_spectrum(g)
        k = int(rng.integers(0, min(2, spec.num_distinct - 1)))
        gap = spec.distinct_eigenvalues[k + 1]
        alpha = float(rng.uniform(-1.0, 0.9 * gap))
        beta = float(rng.uniform(-4.0, 4.0))
        report = minimize(g, spec, alpha, beta, k=k)
        assert report.status is SolveStatus.CONVERGED
        checks = verify_candidate(g, spec, report.minimizer, alpha, beta, k,
                                  tol=1e-8)
        assert all(c.passed for c in checks), [str(c) for c in checks]


def test_objective_general_alpha_beta_consistency(p3, p3_spec):
    # the reported minimum can never exceed the value at any probe point
    rng = np.random.default_rng(45)
    report = minimize(p3, p3_spec, 0.7, 2.5)
    from kwgraph import project_Ek_perp
    for _ in range(40):
        v = project_Ek_perp(p3_spec, p3, rng.standard_normal(3), 0)
        assert report.objective <= eval_J(p3, v, 0.7, 2.5) + 1e-10


# ---------------------------------------------------------------- probes


def test_probe_requires_unbounded_regime(k2, k2_spec):
    with pytest.raises(BoundedRegimeError, match="bounded below"):
        probe_divergence(k2, k2_spec, 0.0, 1.0)


def test_probe_pure_quadratic_divergence(k2, k2_spec):
    # alpha = 3 > lambda_1 = 2, beta = 0: J(t e) = -t^2/2 on the ray
    report = probe_divergence(k2, k2_spec, 3.0, 0.0)
    assert report.verdict is ProbeVerdict.UNBOUNDED
    t, value = report.samples[11]
    assert t == 2048.0
    assert np.isclose(value, -0.5 * t * t, rtol=1e-12)
    assert report.samples[-1][1] < -1e5


def test_probe_borderline_log_divergence(k2, k2_spec):
    # alpha = lambda_1, beta > 0: quadratic term vanishes on the ray and
    # the log term wins linearly
    report = probe_divergence(k2, k2_spec, 2.0, 1.0)
    assert report.verdict is ProbeVerdict.UNBOUNDED
    t, value = report.samples[-1]
    assert t == 2.0 ** 20
    assert np.isclose(value, -741455.2001894653, rtol=1e-12)


def test_probe_inconclusive_when_shallow(k2, k2_spec):
    report = probe_divergence(k2, k2_spec, 2.0, 1.0, t_max_exponent=4)
    assert report.verdict is ProbeVerdict.INCONCLUSIVE
    assert report.samples[-1][1] > -100.0


def test_probe_samples_along_eigen_ray(p3, p3_spec):
    report = probe_divergence(p3, p3_spec, 2.0, 0.0)
    assert np.allclose(report.direction, p3_spec.bases[1][0])
    ts = [t for t, _ in report.samples]
    assert ts == [2.0 ** e for e in range(len(ts))]
    # direction is the first eigenvector above the gap, normalized in mu
    u1 = p3_spec.bases[1][0]
    assert np.isclose(eval_J(p3, 4.0 * u1, 2.0, 0.0), report.samples[2][1],
                      rtol=1e-12)


def test_probe_deterministic(k2, k2_spec):
    a = probe_divergence(k2, k2_spec, 2.5, 1.0)
    b = probe_divergence(k2, k2_spec, 2.5, 1.0)
    assert a.samples == b.samples
    assert a.verdict is b.verdict
