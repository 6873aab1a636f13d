"""Regime classification and constrained minimization.

For a spectrum with distinct eigenvalues lambda_0 = 0 < lambda_1 < ...
< lambda_{m-1} and a subspace index k (0 <= k <= m-2), the position of
alpha relative to lambda_{k+1} decides everything:

- alpha < lambda_{k+1}: J_{alpha,beta} attains its minimum on E_k^perp
  for every beta.
- alpha = lambda_{k+1} (within eq_tol): beta = 0 yields an exact
  eigenfunction solution; beta < 0 pushes the minimizer into
  E_{k+1}^perp; beta > 0 makes the functional unbounded below.
- alpha > lambda_{k+1}: unbounded below along the lambda_{k+1} ray.

Minimization runs in coordinates over a mu-orthonormal basis of the
subspace: steepest descent with Armijo backtracking, switching to
Levenberg-damped Newton near a critical point. Because the start u = 0
is itself a critical point whenever h is constant, a converged gradient
triggers a projected-Hessian check, and a direction of negative
curvature is followed downhill before convergence is declared.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .functional import el_gradient, eval_J, heu_weights
from .calculus import laplacian
from .graphs import Graph, as_vertex_function
from .spectral import Spectrum
from .verify import kw_residual, multipliers

__all__ = [
    "BoundedRegimeError",
    "ProbeReport",
    "ProbeVerdict",
    "Regime",
    "RegimeTag",
    "SolveReport",
    "SolveStatus",
    "SolverOptions",
    "UnboundedRegimeError",
    "classify_regime",
    "minimize",
    "probe_divergence",
]

# iterations of plain steepest descent before the damped Newton
# direction is allowed even above newton_switch_tol; keeps badly
# conditioned spectra convergent within default max_iters
_GD_ITER_CAP = 100

# a probe certifies divergence when the ray reaches below this depth
# with a strictly decreasing tail
DIVERGENCE_DEPTH = -1.0e5


class RegimeTag(enum.Enum):
    MINIMIZER_IN_EK_PERP = "MINIMIZER_IN_EK_PERP"
    EIGENFUNCTION_SOLUTION = "EIGENFUNCTION_SOLUTION"
    MINIMIZER_IN_NEXT_PERP = "MINIMIZER_IN_NEXT_PERP"
    UNBOUNDED_BELOW = "UNBOUNDED_BELOW"


class SolveStatus(enum.Enum):
    CONVERGED = "Converged"
    MAX_ITERS = "MaxIters"
    UNBOUNDED = "Unbounded"


class ProbeVerdict(enum.Enum):
    UNBOUNDED = "unbounded"
    INCONCLUSIVE = "inconclusive"


class UnboundedRegimeError(RuntimeError):
    """minimize was called where the functional has no minimum."""


class BoundedRegimeError(ValueError):
    """probe_divergence was called where the functional is bounded below."""


@dataclass(frozen=True)
class Regime:
    """Classification outcome: which problem to solve and where.

    ``subspace_index`` is the j of the subspace E_j^perp the minimizer
    lives in (or the probed k for UNBOUNDED_BELOW);
    ``trivial_subspace`` flags E_j^perp = {0}, where u = 0 is the
    unique, exact solution.
    """

    tag: RegimeTag
    subspace_index: int
    trivial_subspace: bool = False


@dataclass(frozen=True)
class SolverOptions:
    """Tolerances and limits for :func:`minimize`.

    ``seed`` feeds any randomized auxiliary routine (none in the
    deterministic solve path itself); it exists so callers and the CLI
    have a single seeding point.
    """

    grad_tol: float = 1e-10
    max_iters: int = 10_000
    armijo_c: float = 1e-4
    backtrack: float = 0.5
    newton_switch_tol: float = 1e-3
    seed: int = 0

    def __post_init__(self) -> None:
        if not self.grad_tol > 0:
            raise ValueError(f"grad_tol must be positive, got {self.grad_tol!r}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be >= 1, got {self.max_iters!r}")
        if not 0.0 < self.armijo_c < 1.0:
            raise ValueError(f"armijo_c must lie in (0, 1), got {self.armijo_c!r}")
        if not 0.0 < self.backtrack < 1.0:
            raise ValueError(f"backtrack must lie in (0, 1), got {self.backtrack!r}")
        if not self.newton_switch_tol > 0:
            raise ValueError(
                f"newton_switch_tol must be positive, got {self.newton_switch_tol!r}")


@dataclass(frozen=True, eq=False)
class SolveReport:
    """Everything needed to certify a solve independently."""

    regime: Regime
    minimizer: np.ndarray
    objective: float
    grad_sup: float
    xi: float
    t_multipliers: tuple[tuple[int, int, float], ...]
    residual_sup: float
    iterations: int
    status: SolveStatus
    alpha: float
    beta: float
    trace: tuple[float, ...]


@dataclass(frozen=True, eq=False)
class ProbeReport:
    """Divergence-ray evidence: J sampled along t * u_{k+1,1}."""

    direction: np.ndarray
    samples: tuple[tuple[float, float], ...]
    verdict: ProbeVerdict


def default_eq_tol(lam: float) -> float:
    """Equality tolerance for alpha vs an eigenvalue: 1e-9 * (1 + |lambda|)."""
    return 1e-9 * (1.0 + abs(lam))


def classify_regime(spectrum: Spectrum, alpha: float, beta: float, k: int = 0,
                    eq_tol: float | None = None) -> Regime:
    """Place (alpha, beta, k) in the trichotomy around lambda_{k+1}."""
    m = spectrum.num_distinct
    if not 0 <= k <= m - 2:
        raise ValueError(
            f"k={k} out of range 0..{m - 2}: lambda_{{k+1}} must exist")
    lam = spectrum.eigenvalue(k + 1)
    if eq_tol is None:
        eq_tol = default_eq_tol(lam)
    if alpha < lam - eq_tol:
        return Regime(RegimeTag.MINIMIZER_IN_EK_PERP, k)
    if abs(alpha - lam) <= eq_tol:
        if beta == 0:
            return Regime(RegimeTag.EIGENFUNCTION_SOLUTION, k)
        if beta < 0:
            return Regime(RegimeTag.MINIMIZER_IN_NEXT_PERP, k + 1,
                          trivial_subspace=(k + 1 >= m - 1))
        return Regime(RegimeTag.UNBOUNDED_BELOW, k)
    return Regime(RegimeTag.UNBOUNDED_BELOW, k)


def _subspace_basis(spectrum: Spectrum, j: int) -> np.ndarray:
    """mu-orthonormal rows spanning E_j^perp."""
    blocks = spectrum.bases[j + 1:]
    if not blocks:
        n = spectrum.bases[0].shape[1]
        return np.empty((0, n))
    return np.vstack(blocks)


def _coord_gradient(g: Graph, basis: np.ndarray, u: np.ndarray,
                    alpha: float, beta: float) -> np.ndarray:
    density = heu_weights(g, u) / g.mu
    grad = -laplacian(g, u) - alpha * u - beta * density
    return basis @ (g.mu * grad)


def _projected_hessian(g: Graph, u: np.ndarray, alpha: float, beta: float,
                       basis: np.ndarray) -> np.ndarray:
    """Dense Hessian in subspace coordinates, assembled by polarization
    of the second-variation quadratic form."""
    from .functional import hessian_quadratic_form

    d = basis.shape[0]
    hess = np.empty((d, d))
    for i in range(d):
        hess[i, i] = hessian_quadratic_form(g, u, alpha, beta, basis[i])
        for j in range(i + 1, d):
            plus = hessian_quadratic_form(g, u, alpha, beta, basis[i] + basis[j])
            minus = hessian_quadratic_form(g, u, alpha, beta, basis[i] - basis[j])
            hess[i, j] = hess[j, i] = 0.25 * (plus - minus)
    return hess


def _levenberg_direction(hess: np.ndarray, gc: np.ndarray) -> np.ndarray | None:
    """Solve (H + delta I) p = -g with delta doubled from 1e-8 until the
    Cholesky factorization succeeds."""
    eye = np.eye(hess.shape[0])
    delta = 0.0
    for _ in range(80):
        try:
            factor = np.linalg.cholesky(hess + delta * eye)
        except np.linalg.LinAlgError:
            delta = 1e-8 if delta == 0.0 else 2.0 * delta
            continue
        y = np.linalg.solve(factor, -gc)
        p = np.linalg.solve(factor.T, y)
        if np.all(np.isfinite(p)):
            return p
        delta = 1e-8 if delta == 0.0 else 2.0 * delta
    return None


def _armijo(g: Graph, basis: np.ndarray, c: np.ndarray, u: np.ndarray, J: float,
            direction: np.ndarray, slope: float, alpha: float, beta: float,
            opts: SolverOptions):
    step = 1.0
    for _ in range(80):
        c_new = c + step * direction
        u_new = c_new @ basis
        J_new = eval_J(g, u_new, alpha, beta)
        if np.isfinite(J_new) and J_new <= J + opts.armijo_c * step * slope:
            return True, c_new, u_new, J_new
        step *= opts.backtrack
    return False, c, u, J


def _gradient_polish(g: Graph, basis: np.ndarray, c: np.ndarray, u: np.ndarray,
                     alpha: float, beta: float, opts: SolverOptions):
    """Newton iteration accepted by gradient-norm decrease.

    Near a strict minimum the objective reaches its floating-point
    floor while the projected gradient can still sit above grad_tol;
    progress is then invisible to any J-based line search, so the
    stationarity condition is solved directly instead.
    """
    gc = _coord_gradient(g, basis, u, alpha, beta)
    gs = float(np.max(np.abs(gc @ basis)))
    for _ in range(40):
        if gs <= opts.grad_tol:
            return True, c, u
        hess = _projected_hessian(g, u, alpha, beta, basis)
        p = _levenberg_direction(hess, gc)
        if p is None:
            return False, c, u
        step = 1.0
        improved = False
        for _ in range(30):
            c_try = c + step * p
            u_try = c_try @ basis
            g_try = _coord_gradient(g, basis, u_try, alpha, beta)
            gs_try = float(np.max(np.abs(g_try @ basis)))
            if gs_try < 0.9 * gs:
                c, u, gc, gs = c_try, u_try, g_try, gs_try
                improved = True
                break
            step *= 0.5
        if not improved:
            return False, c, u
    return gs <= opts.grad_tol, c, u


def _escape_negative_curvature(g: Graph, basis: np.ndarray, c: np.ndarray,
                               u: np.ndarray, J: float, alpha: float, beta: float,
                               evals: np.ndarray, evecs: np.ndarray,
                               opts: SolverOptions):
    """From a first-order critical point, walk down the most negative
    curvature direction; requires an actual decrease of a quarter of the
    model prediction before accepting."""
    direction = evecs[:, 0].copy()
    nonzero = np.flatnonzero(np.abs(direction) > 1e-12 * float(np.max(np.abs(direction))))
    if len(nonzero) and direction[nonzero[0]] < 0:
        direction = -direction
    lam = abs(float(evals[0]))
    for sign in (1.0, -1.0):
        step = 1.0
        for _ in range(60):
            c_new = c + sign * step * direction
            u_new = c_new @ basis
            J_new = eval_J(g, u_new, alpha, beta)
            if np.isfinite(J_new) and J_new <= J - 0.25 * lam * step * step:
                return True, c_new, u_new, J_new
            step *= opts.backtrack
    return False, c, u, J


def _finalize(g: Graph, spectrum: Spectrum, regime: Regime, u: np.ndarray,
              alpha: float, beta: float, objective: float, grad_sup: float,
              iterations: int, status: SolveStatus,
              trace: tuple[float, ...]) -> SolveReport:
    xi, t = multipliers(g, spectrum, u, beta, regime.subspace_index)
    r = kw_residual(g, spectrum, u, alpha, beta, regime.subspace_index)
    u = u.copy()
    u.flags.writeable = False
    return SolveReport(
        regime=regime,
        minimizer=u,
        objective=float(objective),
        grad_sup=float(grad_sup),
        xi=xi,
        t_multipliers=t,
        residual_sup=float(np.max(np.abs(r))),
        iterations=iterations,
        status=status,
        alpha=float(alpha),
        beta=float(beta),
        trace=trace,
    )


def _eigenfunction_report(g: Graph, spectrum: Spectrum, regime: Regime,
                          alpha: float, beta: float) -> SolveReport:
    # the certificate for this regime is -Delta u = lambda_{k+1} u, so
    # the reported gradient and residual use the eigenvalue, not the
    # (up to eq_tol different) requested alpha
    k = regime.subspace_index
    lam = spectrum.eigenvalue(k + 1)
    u = spectrum.bases[k + 1][0]
    grad = el_gradient(g, spectrum, u, lam, 0.0, k)
    r = kw_residual(g, spectrum, u, lam, 0.0, k)
    xi, t = multipliers(g, spectrum, u, 0.0, k)
    return SolveReport(
        regime=regime,
        minimizer=u,
        objective=0.0,
        grad_sup=float(np.max(np.abs(grad))),
        xi=xi,
        t_multipliers=t,
        residual_sup=float(np.max(np.abs(r))),
        iterations=0,
        status=SolveStatus.CONVERGED,
        alpha=float(alpha),
        beta=float(beta),
        trace=(0.0,),
    )


def minimize(g: Graph, spectrum: Spectrum, alpha: float, beta: float, k: int = 0,
             opts: SolverOptions | None = None) -> SolveReport:
    """Minimize J_{alpha,beta} over the subspace the regime dictates.

    Raises :class:`UnboundedRegimeError` when classification says no
    minimum exists (use :func:`probe_divergence` there). Otherwise
    returns a report whose minimizer, multipliers, and residual can be
    re-certified by the verify module. The returned u is *a* minimizer;
    no uniqueness is claimed.
    """
    if opts is None:
        opts = SolverOptions()
    regime = classify_regime(spectrum, alpha, beta, k)
    if regime.tag is RegimeTag.UNBOUNDED_BELOW:
        raise UnboundedRegimeError(
            f"J is unbounded below for alpha={alpha}, beta={beta}, k={k}; "
            "use probe_divergence to certify a divergence ray")
    if regime.tag is RegimeTag.EIGENFUNCTION_SOLUTION:
        return _eigenfunction_report(g, spectrum, regime, alpha, beta)

    basis = _subspace_basis(spectrum, regime.subspace_index)
    n = g.num_vertices
    u = np.zeros(n)
    J = eval_J(g, u, alpha, beta)
    trace = [J]
    if basis.shape[0] == 0:
        # E_j^perp = {0}: u = 0 is the whole subspace and solves exactly
        grad = el_gradient(g, spectrum, u, alpha, beta, regime.subspace_index)
        return _finalize(g, spectrum, regime, u, alpha, beta, J,
                         float(np.max(np.abs(grad))), 0,
                         SolveStatus.CONVERGED, tuple(trace))

    c = np.zeros(basis.shape[0])
    status = SolveStatus.MAX_ITERS
    grad_sup = np.inf
    it = 0
    while True:
        gc = _coord_gradient(g, basis, u, alpha, beta)
        grad_sup = float(np.max(np.abs(gc @ basis)))
        if grad_sup <= opts.grad_tol:
            hess = _projected_hessian(g, u, alpha, beta, basis)
            evals, evecs = np.linalg.eigh(hess)
            curvature_floor = -1e-9 * (1.0 + float(np.max(np.abs(evals))))
            if evals[0] >= curvature_floor:
                status = SolveStatus.CONVERGED
                break
            if it >= opts.max_iters:
                break
            it += 1
            moved, c, u, J = _escape_negative_curvature(
                g, basis, c, u, J, alpha, beta, evals, evecs, opts)
            if not moved:
                # second-order escape cannot improve J at representable
                # step sizes; accept the point
                status = SolveStatus.CONVERGED
                break
            trace.append(J)
            continue
        if it >= opts.max_iters:
            break
        it += 1
        direction = None
        if grad_sup < opts.newton_switch_tol or it > _GD_ITER_CAP:
            hess = _projected_hessian(g, u, alpha, beta, basis)
            direction = _levenberg_direction(hess, gc)
        newton_tried = direction is not None
        if direction is None or float(gc @ direction) >= 0.0:
            direction = -gc
            newton_tried = False
        slope = float(gc @ direction)
        J_before = J
        accepted, c, u, J = _armijo(g, basis, c, u, J, direction, slope,
                                    alpha, beta, opts)
        if not accepted and newton_tried:
            accepted, c, u, J = _armijo(g, basis, c, u, J, -gc,
                                        -float(gc @ gc), alpha, beta, opts)
        if not accepted or J == J_before:
            # J can no longer measurably decrease; polish stationarity
            # through the gradient itself, then break honestly if even
            # that cannot reach tolerance
            polished, c, u = _gradient_polish(g, basis, c, u, alpha, beta, opts)
            J = eval_J(g, u, alpha, beta)
            trace.append(J)
            if polished:
                continue
            break
        trace.append(J)

    return _finalize(g, spectrum, regime, u, alpha, beta, J, grad_sup, it,
                     status, tuple(trace))


def probe_divergence(g: Graph, spectrum: Spectrum, alpha: float, beta: float,
                     k: int = 0, t_max_exponent: int = 20) -> ProbeReport:
    """Sample J_{alpha,beta} along the ray t * u_{k+1,1}, t = 2^0..2^{max}.

    Only callable in regimes classified unbounded below; raises
    :class:`BoundedRegimeError` otherwise. The verdict is ``unbounded``
    when the ray reaches below ``DIVERGENCE_DEPTH`` with the last five
    samples strictly decreasing, else ``inconclusive`` (a deeper
    ``t_max_exponent`` usually resolves it).
    """
    regime = classify_regime(spectrum, alpha, beta, k)
    if regime.tag is not RegimeTag.UNBOUNDED_BELOW:
        raise BoundedRegimeError(
            f"(alpha={alpha}, beta={beta}, k={k}) classifies as "
            f"{regime.tag.value}; the functional is bounded below there")
    if t_max_exponent < 0:
        raise ValueError(f"t_max_exponent must be >= 0, got {t_max_exponent}")
    direction = spectrum.bases[k + 1][0]
    samples = []
    for exponent in range(t_max_exponent + 1):
        t = float(2.0 ** exponent)
        samples.append((t, eval_J(g, t * direction, alpha, beta)))
    tail = [value for _, value in samples[-5:]]
    decreasing = len(tail) == 5 and all(b < a for a, b in zip(tail, tail[1:]))
    if decreasing and samples[-1][1] < DIVERGENCE_DEPTH:
        verdict = ProbeVerdict.UNBOUNDED
    else:
        verdict = ProbeVerdict.INCONCLUSIVE
    return ProbeReport(direction=direction, samples=tuple(samples), verdict=verdict)
