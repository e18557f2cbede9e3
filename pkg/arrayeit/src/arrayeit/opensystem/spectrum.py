"""Incoherent power spectra of the output fields via the quantum regression rule.

For an output operator A with steady-state mean ⟨A⟩, the fluctuation
correlation is C(τ) = tr(A†·e^{Lτ}[(A − ⟨A⟩)ρ_ss]) and

    S(ω) = (1/π)·Re ∫₀^τmax C(τ)e^{−iωτ} dτ
         = (1/π)·Re tr(A†·(iω − L)⁻¹·(1 − e^{−iωτmax}e^{Lτmax})·B₀)

evaluated exactly with one sparse solve per frequency, so ∫S dω = C(0) up to
the e^{−γτmax} tail. B₀ = (A − ⟨A⟩)ρ_ss is traceless, which keeps the solve
regular at ω = 0 once the stationary mode is lifted.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.integrate import trapezoid
from scipy.linalg import eigvals
from scipy.sparse.linalg import expm_multiply, splu

from arrayeit.core.config import settings
from arrayeit.core.errors import DimensionTooLarge, SlowConvergence
from arrayeit.opensystem.master import DriveConfig, build_liouvillian, steady_state
from arrayeit.opensystem.observables import output_operators
from arrayeit.opensystem.operators import vec

logger = logging.getLogger(__name__)

# Horizon in units of the slowest decay time
HORIZON_FACTOR = 20.0

# Decay rates below this are treated as non-decaying
MIN_RATE = 1e-12


@dataclass(frozen=True, eq=False)
class InelasticSpectrum:
    """S(ω) for the transmitted and reflected outputs on one frequency grid."""

    omega: np.ndarray
    transmitted: np.ndarray
    reflected: np.ndarray
    tau_max: float
    slowest_rate: float

    @property
    def total(self) -> np.ndarray:
        return self.transmitted + self.reflected

    def integrated(self) -> float:
        """∫S dω over the grid for both outputs (trapezoid rule)."""
        return float(trapezoid(self.total, self.omega))


def liouvillian_eigenvalues(liouvillian: sparse.spmatrix) -> np.ndarray:
    """All eigenvalues of a dense-sized Liouvillian, sorted by decay rate."""
    values = eigvals(liouvillian.toarray())
    return values[np.argsort(-values.real)]


def slowest_decay_rate(liouvillian: sparse.spmatrix) -> float:
    """Smallest |Re λ| after removing the stationary eigenvalue (the one nearest 0)."""
    values = liouvillian_eigenvalues(liouvillian)
    if values.size < 2:
        return 0.0
    rest = np.delete(values, np.argmin(np.abs(values)))
    return float(np.min(np.abs(rest.real)))


def _resolve_horizon(rate: float, tau_max: float | None) -> float:
    if rate < MIN_RATE:
        raise SlowConvergence(rate, tau_max if tau_max is not None else float("inf"))
    if tau_max is None:
        return HORIZON_FACTOR / rate
    if tau_max < 1.0 / rate:
        raise SlowConvergence(rate, tau_max)
    return float(tau_max)


def _channel_spectrum(
    liouvillian: sparse.csc_matrix,
    rho: np.ndarray,
    op: sparse.spmatrix,
    omega: np.ndarray,
    tau_max: float,
) -> np.ndarray:
    dense_op = op.toarray()
    mean = np.sum(rho.T * dense_op)
    b0 = vec((dense_op - mean * np.eye(rho.shape[0])) @ rho)
    if not np.any(np.abs(b0) > 0):
        return np.zeros_like(omega)
    tail = expm_multiply(liouvillian * tau_max, b0)
    weight = vec(dense_op.conj())
    eye = sparse.identity(liouvillian.shape[0], dtype=complex, format="csc")
    # |ρ⟩⟨tr| lifts the stationary eigenvalue; exact on traceless right-hand sides.
    trace_row = vec(np.eye(rho.shape[0], dtype=complex))
    stationary = sparse.csc_matrix(np.outer(vec(rho), trace_row))

    values = np.empty(omega.size)
    for k, w in enumerate(omega):
        rhs = b0 - np.exp(-1j * w * tau_max) * tail
        x = splu((1j * w * eye - liouvillian + stationary).tocsc()).solve(rhs)
        values[k] = (weight @ x).real / np.pi
    return values


def inelastic_spectrum(
    dc: DriveConfig,
    omega_grid: Sequence[float] | np.ndarray,
    *,
    tau_max: float | None = None,
) -> InelasticSpectrum:
    """Incoherent spectra S(ω) of the transmitted and reflected fields.

    Args:
        dc: Drive configuration.
        omega_grid: Frequencies relative to the drive.
        tau_max: Correlation horizon; defaults to 20 slowest decay times.

    Returns:
        InelasticSpectrum for both outputs.

    Raises:
        DimensionTooLarge: N exceeds settings.dense_max_atoms.
        SlowConvergence: The slowest decay rate vanishes or tau_max < 1/rate.
    """
    if dc.n_atoms > settings.dense_max_atoms:
        raise DimensionTooLarge(dc.n_atoms, settings.dense_max_atoms, "inelastic spectra")
    omega = np.asarray(omega_grid, dtype=float)
    liouvillian = build_liouvillian(dc)
    rate = slowest_decay_rate(liouvillian)
    horizon = _resolve_horizon(rate, tau_max)
    logger.debug("inelastic spectrum: slowest rate %.3g, tau_max %.3g", rate, horizon)

    rho = steady_state(liouvillian).matrix
    csc = liouvillian.tocsc()
    a_t, a_r = output_operators(dc.base)
    return InelasticSpectrum(
        omega=omega,
        transmitted=_channel_spectrum(csc, rho, a_t, omega, horizon),
        reflected=_channel_spectrum(csc, rho, a_r, omega, horizon),
        tau_max=horizon,
        slowest_rate=rate,
    )
