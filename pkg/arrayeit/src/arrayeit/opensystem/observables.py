"""Input-output amplitudes and inelastic photon flux of the driven steady state.

The scattered parts of the outgoing fields, per unit drive, are

    A_t = −i·Σᵢ e^{i(φ_N−φᵢ)}√(Γᵢ/2)σᵢ⁻      (transmitted, referenced to atom N)
    A_r = −i·Σᵢ e^{i(φᵢ−φ₁)}√(Γᵢ/2)σᵢ⁻        (reflected, referenced to atom 1)

so t = e^{i(φ_N−φ₁)} + ⟨A_t⟩/α and r = ⟨A_r⟩/α. The inelastic flux is the
photon number carried by fluctuations around the coherent output:
F = Σ (⟨A†A⟩ − |⟨A⟩|²) over both channels.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from functools import partial

import numpy as np
from scipy import sparse

from arrayeit.core.errors import ZeroDrive
from arrayeit.core.parallel import parallel_map
from arrayeit.model.array import ArrayConfig
from arrayeit.opensystem.master import DensityOperator, DriveConfig, build_liouvillian, steady_state
from arrayeit.opensystem.operators import dagger, lowering_operators
from arrayeit.scattering.sweep import validate_grid

logger = logging.getLogger(__name__)

# |α|² below this counts as no drive
ZERO_DRIVE_TOL = 1e-300


@dataclass(frozen=True, eq=False)
class SteadyStateResult:
    """Steady state and output observables at one drive point.

    Attributes:
        rho: Steady-state density operator.
        t: Transmission amplitude, referenced to atom N.
        r: Reflection amplitude, referenced to atom 1.
        transmittance: |t|².
        reflectance: |r|².
        flux: Inelastic photon flux F (photons per unit time).
        delta_k: Drive detuning.
        alpha2: Drive flux |α|².
        transmission_phase: e^{i(φ_N−φ₁)}, the free-propagation factor.
    """

    rho: DensityOperator
    t: complex
    r: complex
    transmittance: float
    reflectance: float
    flux: float
    delta_k: float
    alpha2: float
    transmission_phase: complex = 1.0 + 0j

    @property
    def flux_ratio(self) -> float:
        """F/|α|², equal to 1 − T − R."""
        return self.flux / self.alpha2

    @property
    def t_reduced(self) -> complex:
        """Transmission in the scattering module's phase reference (atom 1)."""
        return self.t * np.conj(self.transmission_phase)


def _relative_phase(cfg: ArrayConfig) -> np.ndarray:
    if cfg.n_atoms == 0:
        return np.empty(0, dtype=complex)
    if cfg.spacing_multiple is not None:
        return cfg.spacing_sign.astype(complex)
    return np.exp(1j * (cfg.phase - cfg.phase[0]))


def transmission_phase(cfg: ArrayConfig) -> complex:
    """e^{i(φ_N−φ₁)}."""
    rel = _relative_phase(cfg)
    return complex(rel[-1]) if rel.size else 1.0 + 0j


def output_operators(cfg: ArrayConfig) -> tuple[sparse.csr_matrix, sparse.csr_matrix]:
    """Scattered-field operators (A_t, A_r) in units of the drive."""
    n = cfg.n_atoms
    dim = 2**n
    rel = _relative_phase(cfg)
    end = transmission_phase(cfg)
    amp = np.sqrt(cfg.gamma / 2)
    a_t = sparse.csr_matrix((dim, dim), dtype=complex)
    a_r = sparse.csr_matrix((dim, dim), dtype=complex)
    for i, sm in enumerate(lowering_operators(n)):
        a_t = a_t - 1j * end * np.conj(rel[i]) * amp[i] * sm
        a_r = a_r - 1j * rel[i] * amp[i] * sm
    return a_t.tocsr(), a_r.tocsr()


def io_amplitudes(rho: DensityOperator, dc: DriveConfig) -> tuple[complex, complex]:
    """Transmission and reflection amplitudes from the steady state.

    Raises:
        ZeroDrive: α = 0, where the ratio to the drive is undefined.
    """
    if dc.alpha2 <= ZERO_DRIVE_TOL:
        raise ZeroDrive("transmission and reflection amplitudes need a non-zero drive")
    a_t, a_r = output_operators(dc.base)
    t = transmission_phase(dc.base) + rho.expect(a_t) / dc.alpha
    r = rho.expect(a_r) / dc.alpha
    return complex(t), complex(r)


def inelastic_flux(rho: DensityOperator, dc: DriveConfig) -> float:
    """Total incoherent photon flux F = Σ_{t,r} (⟨A†A⟩ − |⟨A⟩|²).

    The coherent drive term in the transmitted field is a c-number and drops
    out of the fluctuation.
    """
    total = 0.0
    for op in output_operators(dc.base):
        mean = rho.expect(op)
        total += rho.expect(dagger(op) @ op).real - abs(mean) ** 2
    return float(total)


def drive_point(cfg: ArrayConfig, delta_k: float, alpha2: float, phase: float = 0.0) -> SteadyStateResult:
    """Build, solve and measure the driven array at one detuning."""
    dc = DriveConfig.from_intensity(cfg, delta_k, alpha2, phase)
    rho = steady_state(build_liouvillian(dc))
    t, r = io_amplitudes(rho, dc)
    return SteadyStateResult(
        rho=rho,
        t=t,
        r=r,
        transmittance=abs(t) ** 2,
        reflectance=abs(r) ** 2,
        flux=inelastic_flux(rho, dc),
        delta_k=float(delta_k),
        alpha2=float(alpha2),
        transmission_phase=transmission_phase(cfg),
    )


def lindblad_sweep(
    cfg: ArrayConfig,
    grid: Sequence[float] | np.ndarray,
    alpha2: float,
    *,
    phase: float = 0.0,
    threads: int | None = None,
) -> list[SteadyStateResult]:
    """drive_point over a detuning grid, points evaluated in parallel."""
    values = validate_grid(grid)
    logger.debug("lindblad sweep: %d atoms, %d points, |alpha|^2=%g", cfg.n_atoms, values.size, alpha2)
    return parallel_map(partial(_point, cfg, alpha2, phase), values, threads=threads)


def _point(cfg: ArrayConfig, alpha2: float, phase: float, delta_k: float) -> SteadyStateResult:
    return drive_point(cfg, delta_k, alpha2, phase)
