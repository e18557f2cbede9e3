"""Transfer-matrix propagation of a single photon through the array.

Between coupling points i and i+1 the field is tᵢe^{ikx} + rᵢe^{−ikx}. Each
atom maps (tᵢ₋₁, rᵢ₋₁) to (tᵢ, rᵢ) through T_φᵢ⁻¹·Tᵢ·T_φᵢ, where

    Tᵢ = [[2 − αᵢ, 1 − αᵢ], [αᵢ − 1, αᵢ]],   αᵢ = (x + iΓᵢ/2)/x,   x = Δₖ − δωᵢ
    T_φᵢ = diag(e^{iφᵢ}, e^{−iφᵢ})

Phases are referenced to the first atom. Works for any Γᵢ and φᵢ.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from arrayeit.core.errors import OnAtomResonance
from arrayeit.model.array import ArrayConfig
from arrayeit.scattering.amplitudes import ScatteringResult

# |Δₖ − δωᵢ| below this is treated as exact resonance
RESONANCE_TOL = 1e-12


@dataclass(frozen=True)
class TransferState:
    """Right- and left-moving amplitudes between coupling points i and i+1."""

    t_i: complex
    r_i: complex


def _relative_phases(cfg: ArrayConfig) -> np.ndarray:
    if cfg.n_atoms == 0:
        return np.empty(0)
    if cfg.spacing_multiple is not None:
        # Steps of nπ: the conjugation by T_φ is the identity up to rounding.
        return np.zeros(cfg.n_atoms)
    return cfg.phase - cfg.phase[0]


def single_site_matrices(cfg: ArrayConfig, site: int, delta_k: float) -> tuple[np.ndarray, np.ndarray]:
    """The bare site matrix Tᵢ and phase matrix T_φᵢ for one atom.

    Args:
        cfg: Array configuration.
        site: Zero-based atom index.
        delta_k: Probe detuning Δₖ.

    Returns:
        (Tᵢ, T_φᵢ) with det Tᵢ = 1.

    Raises:
        OnAtomResonance: |Δₖ − δωᵢ| < 1e−12, where αᵢ diverges.
    """
    x = delta_k - cfg.delta_omega[site]
    if abs(x) < RESONANCE_TOL:
        raise OnAtomResonance(site, delta_k)
    alpha = (x + 0.5j * cfg.gamma[site]) / x
    t_site = np.array([[2 - alpha, 1 - alpha], [alpha - 1, alpha]], dtype=complex)
    phi = _relative_phases(cfg)[site]
    t_phi = np.diag([np.exp(1j * phi), np.exp(-1j * phi)])
    return t_site, t_phi


def _site_product(cfg: ArrayConfig, sites: range, delta_k: float) -> np.ndarray:
    """Π T_φᵢ⁻¹·Tᵢ·T_φᵢ over sites, the first site as the rightmost factor."""
    m = np.eye(2, dtype=complex)
    for i in sites:
        t_site, t_phi = single_site_matrices(cfg, i, delta_k)
        m = np.linalg.inv(t_phi) @ t_site @ t_phi @ m
    return m


def _first_resonant_site(cfg: ArrayConfig, delta_k: float) -> int | None:
    hits = np.flatnonzero(np.abs(delta_k - cfg.delta_omega) < RESONANCE_TOL)
    return int(hits[0]) if hits.size else None


def scatter(cfg: ArrayConfig, delta_k: float) -> ScatteringResult:
    """Exact single-photon amplitudes from the transfer-matrix product.

    Solves (t, 0)ᵀ = M·(1, r)ᵀ: r = −M₂₁/M₂₂ and, since det M = 1,
    t = M₁₁ + M₁₂·r = 1/M₂₂, which avoids the cancellation inside strongly
    reflecting stacks. A resonant atom (Δₖ = δωᵢ) is a perfect mirror:
    transmission vanishes and the sites in front of it fix r through the
    condition (1, e^{−2iφ})·B·(1, r)ᵀ = 0.
    """
    k = _first_resonant_site(cfg, delta_k)
    if k is None:
        m = _site_product(cfg, range(cfg.n_atoms), delta_k)
        r = -m[1, 0] / m[1, 1]
        t = 1 / m[1, 1]
        return ScatteringResult.from_amplitudes(delta_k, complex(t), complex(r))

    before = _site_product(cfg, range(k), delta_k)
    phi = _relative_phases(cfg)[k]
    row = np.array([1.0, np.exp(-2j * phi)]) @ before
    r = -row[0] / row[1]
    return ScatteringResult.from_amplitudes(delta_k, 0j, complex(r))


def propagate(cfg: ArrayConfig, delta_k: float) -> list[TransferState]:
    """Piecewise amplitudes (tᵢ, rᵢ) for i = 0..N, with t₀ = 1 and r_N = 0.

    Raises:
        OnAtomResonance: The probe is resonant with an atom.
    """
    k = _first_resonant_site(cfg, delta_k)
    if k is not None:
        raise OnAtomResonance(k, delta_k)
    res = scatter(cfg, delta_k)
    vec = np.array([1.0, res.r], dtype=complex)
    states = [TransferState(complex(vec[0]), complex(vec[1]))]
    for i in range(cfg.n_atoms):
        t_site, t_phi = single_site_matrices(cfg, i, delta_k)
        vec = np.linalg.inv(t_phi) @ t_site @ t_phi @ vec
        states.append(TransferState(complex(vec[0]), complex(vec[1])))
    return states
