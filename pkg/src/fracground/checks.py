"""Operator identity checks used by `validate-ops` and the acceptance suite.

Every check produces a relative residual together with the tolerance it must
stay below: transform round trip, Plancherel, symbol branch product,
composition against the |w|^(2a) symbol, the one-sided inverse identities on
zero-mean fields, the seminorm equality between the spectral and time-domain
definitions, and the alpha = 1 classical limit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import Grid1D, SpectralField, lp_norm, spectral_l2_norm, transform
from .operators import (
    composed_operator,
    fractional_derivative,
    fractional_integral,
    h_alpha_norm,
    multiplier_symbol,
)

__all__ = ["CheckRow", "random_band_limited_field", "conformance_checks"]


@dataclass(frozen=True)
class CheckRow:
    name: str
    alpha: float
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.residual < self.tolerance


def random_band_limited_field(
    grid: Grid1D,
    rng: np.random.Generator,
    max_mode: int | None = None,
    *,
    zero_mean: bool = False,
) -> SpectralField:
    """Random real field supported on modes |k| <= max_mode (default N/8)."""
    n = grid.n_points
    if max_mode is None:
        max_mode = n // 8
    max_mode = min(max_mode, n // 2 - 1)
    coeffs = np.zeros(n, dtype=np.complex128)
    lo = 1 if zero_mean else 0
    for k in range(lo, max_mode + 1):
        c = rng.normal() + 1j * rng.normal()
        coeffs[k] = c
        if k > 0:
            coeffs[n - k] = np.conj(c)
    coeffs[0] = coeffs[0].real if not zero_mean else 0.0
    values = np.fft.ifft(coeffs).real
    values /= np.sqrt(grid.spacing * np.sum(values ** 2))
    return SpectralField.from_values(grid, values)


def _rel_l2(a: SpectralField, b: SpectralField) -> float:
    h = a.grid.spacing
    diff = np.sqrt(h * np.sum((a.values - b.values) ** 2))
    ref = np.sqrt(h * np.sum(b.values ** 2))
    return float(diff / max(ref, 1e-300))


def conformance_checks(grid: Grid1D, alpha: float, seed: int = 0) -> list[CheckRow]:
    """Run the identity-check suite on one grid at one fractional order."""
    rng = np.random.default_rng(seed)
    rows: list[CheckRow] = []
    u = random_band_limited_field(grid, rng)
    u_zero_mean = random_band_limited_field(grid, rng, zero_mean=True)

    round_trip = transform(transform(u, "forward"), "inverse")
    rows.append(CheckRow("transform_round_trip", alpha, _rel_l2(round_trip, u), 1e-12))

    l2_time = lp_norm(u, 2)
    rows.append(
        CheckRow(
            "plancherel", alpha, abs(l2_time - spectral_l2_norm(u)) / l2_time, 1e-12
        )
    )

    w = grid.frequencies
    positive = w > 0
    sym_left = multiplier_symbol(grid, alpha, "left_deriv")[positive]
    sym_right = multiplier_symbol(grid, alpha, "right_deriv")[positive]
    target = np.abs(w[positive]) ** (2.0 * alpha)
    product = sym_left * sym_right
    branch_residual = float(
        np.max(np.abs(product - target) / target) + np.max(np.abs(product.imag) / target)
    )
    rows.append(CheckRow("symbol_branch_product", alpha, branch_residual, 1e-13))

    sequential = fractional_derivative(
        fractional_derivative(u, alpha, "left"), alpha, "right"
    )
    rows.append(
        CheckRow(
            "composition_vs_symbol",
            alpha,
            _rel_l2(sequential, composed_operator(u, alpha)),
            1e-12,
        )
    )

    if alpha < 1.0:
        for side in ("left", "right"):
            recovered = fractional_derivative(
                fractional_integral(u_zero_mean, alpha, side), alpha, side
            )
            rows.append(
                CheckRow(
                    f"derivative_of_integral_{side}",
                    alpha,
                    _rel_l2(recovered, u_zero_mean),
                    1e-10,
                )
            )
            recovered = fractional_integral(
                fractional_derivative(u_zero_mean, alpha, side), alpha, side
            )
            rows.append(
                CheckRow(
                    f"integral_of_derivative_{side}",
                    alpha,
                    _rel_l2(recovered, u_zero_mean),
                    1e-10,
                )
            )

    norms = h_alpha_norm(u, alpha)
    rows.append(
        CheckRow(
            "seminorm_equality",
            alpha,
            abs(norms.seminorm - norms.time_domain_seminorm) / (1.0 + norms.seminorm),
            1e-10,
        )
    )

    gauss = SpectralField.from_values(grid, np.exp(-grid.nodes ** 2))
    d_exact = SpectralField.from_values(grid, -2.0 * grid.nodes * np.exp(-grid.nodes ** 2))
    rows.append(
        CheckRow(
            "classical_limit",
            1.0,
            _rel_l2(fractional_derivative(gauss, 1.0, "left"), d_exact),
            1e-8,
        )
    )
    return rows
