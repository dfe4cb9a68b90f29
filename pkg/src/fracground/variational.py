"""Energy functional, its gradient, and the constrained fiber projection.

The functional splits into a quadratic part, evaluated spectrally through the
|w|^(2 alpha) weight, and a potential part integrated by the rectangle rule.
Rays sigma -> sigma * u carry a one-dimensional restriction of the energy
(the fiber map) whose unique positive maximizer defines the projection onto
the stationarity manifold {u != 0 : <grad E(u), u> = 0}; minimizing the
projected energy over trial fields gives an upper bound for the least
positive critical level.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BracketFailureError, NoPositivePartError
from .grid import SpectralField
from .nonlinearity import NonlinearitySpec, eval_F, eval_df, eval_f
from .operators import h_alpha_norm_sq, multiplier_symbol, apply_multiplier

__all__ = [
    "EnergyBreakdown",
    "GradientResult",
    "FiberScan",
    "NehariResult",
    "LevelEstimate",
    "energy",
    "gradient",
    "fiber_map",
    "nehari_project",
    "estimate_level",
]


def _validate_solver_order(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.5 < alpha <= 1.0:
        raise ValueError(
            f"the variational problem requires alpha in (1/2, 1) "
            f"(alpha = 1 is allowed as the classical validation limit), got {alpha}"
        )
    return alpha


@dataclass(frozen=True)
class EnergyBreakdown:
    quadratic: float
    potential: float
    total: float


def energy(
    u: SpectralField, spec: NonlinearitySpec, alpha: float, *, autonomous: bool = False
) -> EnergyBreakdown:
    """Energy 1/2 ||u||_alpha^2 - integral F(t, u)."""
    alpha = _validate_solver_order(alpha)
    quad = 0.5 * h_alpha_norm_sq(u, alpha)
    pot = float(u.grid.spacing * np.sum(eval_F(spec, u.grid.nodes, u.values, autonomous=autonomous)))
    return EnergyBreakdown(quad, pot, quad - pot)


@dataclass(frozen=True)
class GradientResult:
    raw_residual: SpectralField
    precond_gradient: SpectralField
    residual_norm: float


def gradient(
    u: SpectralField, spec: NonlinearitySpec, alpha: float, *, autonomous: bool = False
) -> GradientResult:
    """L2 residual (|w|^(2a) + 1) u - f(., u) and its H^alpha representative.

    The preconditioned gradient is the raw residual smoothed by the resolvent
    multiplier; its ||.||_alpha norm is the reported residual, a mesh-robust
    stationarity measure.
    """
    alpha = _validate_solver_order(alpha)
    grid = u.grid
    k_symbol = np.abs(grid.frequencies) ** (2.0 * alpha) + 1.0
    linear_part = apply_multiplier(u, k_symbol.astype(np.complex128))
    f_vals = eval_f(spec, grid.nodes, u.values, autonomous=autonomous)
    raw = SpectralField.from_values(grid, linear_part.values - f_vals)
    precond = apply_multiplier(raw, multiplier_symbol(grid, alpha, "resolvent"))
    res_norm = float(np.sqrt(h_alpha_norm_sq(precond, alpha)))
    return GradientResult(raw, precond, res_norm)


@dataclass(frozen=True)
class FiberScan:
    sigmas: np.ndarray
    values: np.ndarray
    derivative_sign_changes: int


def _potential_on_ray(
    u: SpectralField, spec: NonlinearitySpec, sigma: float, autonomous: bool
) -> float:
    return float(
        u.grid.spacing
        * np.sum(eval_F(spec, u.grid.nodes, sigma * u.values, autonomous=autonomous))
    )


def fiber_map(
    u: SpectralField,
    spec: NonlinearitySpec,
    alpha: float,
    sigma_grid,
    *,
    autonomous: bool = False,
) -> FiberScan:
    """Sample psi(sigma) = E(sigma u) along a ray, counting slope sign changes.

    The quadratic coefficient is computed once; only the potential is
    re-integrated per sigma.  The sign-change count of the discrete slope is
    the sampled version of fiber unimodality (one + to - change for fields
    with nonzero positive part).
    """
    alpha = _validate_solver_order(alpha)
    sigmas = np.asarray(list(sigma_grid), dtype=float)
    if sigmas.size == 0 or np.any(sigmas <= 0):
        raise ValueError("sigma grid must be nonempty and positive")
    if not np.any(u.values != 0):
        raise ValueError("fiber map requires a nonzero field")
    norm_sq = h_alpha_norm_sq(u, alpha)
    values = np.array(
        [0.5 * s * s * norm_sq - _potential_on_ray(u, spec, s, autonomous) for s in sigmas]
    )
    slopes = np.diff(values)
    signs = np.sign(slopes[slopes != 0.0])
    changes = int(np.count_nonzero(np.diff(signs) != 0))
    return FiberScan(sigmas, values, changes)


@dataclass(frozen=True)
class NehariResult:
    sigma: float
    projected: SpectralField
    constraint_residual: float
    energy: float


#: bracket endpoints grow geometrically from [1e-6, 1] up to this bound
_BRACKET_LIMIT = 1e12

#: relative bracket width handed from bisection to the Newton polish
_BISECT_REL_WIDTH = 1e-3

#: target |g(sigma)| relative to ||u||_alpha^2
_ROOT_REL_TOL = 1e-12


def nehari_project(
    u: SpectralField, spec: NonlinearitySpec, alpha: float, *, autonomous: bool = False
) -> NehariResult:
    """Scale a field onto the stationarity manifold along its ray.

    Solves g(sigma) = ||u||_alpha^2 - integral f(t, sigma u) u / sigma = 0,
    which is monotone in sigma by fiber monotonicity of the nonlinearity:
    geometric bracketing, bisection to a 1e-3 relative bracket, then a Newton
    polish to |g| <= 1e-12 ||u||_alpha^2.
    """
    alpha = _validate_solver_order(alpha)
    if float(np.max(u.values)) <= 0.0:
        raise NoPositivePartError("field has no positive part; no fiber maximizer exists")
    grid = u.grid
    norm_sq = h_alpha_norm_sq(u, alpha)
    nodes, vals, h = grid.nodes, u.values, grid.spacing

    def g(sigma: float) -> float:
        f_vals = eval_f(spec, nodes, sigma * vals, autonomous=autonomous)
        return norm_sq - h * float(np.sum(f_vals * vals)) / sigma

    def dg(sigma: float) -> float:
        f_vals = eval_f(spec, nodes, sigma * vals, autonomous=autonomous)
        df_vals = eval_df(spec, nodes, sigma * vals, autonomous=autonomous)
        return h * float(np.sum(f_vals * vals)) / sigma ** 2 - h * float(
            np.sum(df_vals * vals * vals)
        ) / sigma

    lo, hi = 1e-6, 1.0
    g_lo, g_hi = g(lo), g(hi)
    while g_lo <= 0.0:
        # root below the default bracket: shrink toward zero
        hi, g_hi = lo, g_lo
        lo /= 4.0
        if lo < 1e-300:
            raise BracketFailureError("bracket collapsed toward sigma = 0")
        g_lo = g(lo)
    while g_hi > 0.0:
        lo, g_lo = hi, g_hi
        hi *= 4.0
        if hi > _BRACKET_LIMIT:
            raise BracketFailureError(f"bracket expansion exceeded {_BRACKET_LIMIT:.0e}")
        g_hi = g(hi)

    while hi - lo > _BISECT_REL_WIDTH * hi:
        mid = 0.5 * (lo + hi)
        g_mid = g(mid)
        if g_mid > 0.0:
            lo, g_lo = mid, g_mid
        else:
            hi, g_hi = mid, g_mid

    sigma = 0.5 * (lo + hi)
    for _ in range(80):
        g_val = g(sigma)
        if abs(g_val) <= _ROOT_REL_TOL * norm_sq:
            break
        slope = dg(sigma)
        if slope == 0.0:
            break
        step = sigma - g_val / slope
        sigma = step if lo / 2 < step < hi * 2 else 0.5 * (lo + hi)

    projected = sigma * u
    breakdown = energy(projected, spec, alpha, autonomous=autonomous)
    # <grad E(sigma u), sigma u> = sigma^2 g(sigma); normalize by ||sigma u||_alpha^2
    residual = g(sigma) / norm_sq
    return NehariResult(sigma, projected, residual, breakdown.total)


@dataclass(frozen=True)
class LevelEstimate:
    level: float
    argmin_index: int
    energies: tuple[float, ...]
    failures: tuple[tuple[int, str], ...]


def estimate_level(
    spec: NonlinearitySpec,
    alpha: float,
    candidates,
    *,
    autonomous: bool = False,
) -> LevelEstimate:
    """Upper bound for the least critical level: min projected energy over candidates.

    Candidates whose projection fails (no positive part, bracket failure) are
    skipped and reported; at least one candidate must survive.
    """
    energies: list[float] = []
    failures: list[tuple[int, str]] = []
    best = np.inf
    best_idx = -1
    for i, cand in enumerate(candidates):
        try:
            result = nehari_project(cand, spec, alpha, autonomous=autonomous)
        except (NoPositivePartError, BracketFailureError) as exc:
            failures.append((i, str(exc)))
            energies.append(np.nan)
            continue
        energies.append(result.energy)
        if result.energy < best:
            best, best_idx = result.energy, i
    if best_idx < 0:
        raise NoPositivePartError("every candidate failed to project")
    return LevelEstimate(best, best_idx, tuple(energies), tuple(failures))
