"""Single-photon transmission and reflection amplitudes.

Under the EIT condition (phase steps of nπ, equal Γ) the amplitudes depend on
the array only through S(Δₖ) = Σᵢ 1/(Δₖ − δωᵢ):

    t = 1 / (1 + i(Γ/2)S),    r = t − 1

Clearing the poles of S turns both into ratios of polynomials that stay
finite at every bare atomic frequency.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from arrayeit.model.array import ArrayConfig, build_effective_hamiltonian
from arrayeit.model.collective import secular_roots
from arrayeit.model.degenerate import merge_emitters


@dataclass(frozen=True)
class ScatteringResult:
    """Amplitudes at one probe detuning; T + R = 1 for elastic scattering."""

    delta_k: float
    t: complex
    r: complex
    transmittance: float
    reflectance: float

    @classmethod
    def from_amplitudes(cls, delta_k: float, t: complex, r: complex) -> ScatteringResult:
        return cls(
            delta_k=float(delta_k),
            t=complex(t),
            r=complex(r),
            transmittance=abs(t) ** 2,
            reflectance=abs(r) ** 2,
        )


def cleared_amplitudes(x: np.ndarray, freqs: np.ndarray, decays: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Pole-free t and r on an array of detunings.

    With D(x) = Π_g(x − x_g) and Q(x) = Σ_g Γ_g·Π_{h≠g}(x − x_h):

        t = D / (D + (i/2)Q),   r = −(i/2)Q / (D + (i/2)Q)
    """
    x = np.asarray(x, dtype=float)
    diffs = x[..., None] - freqs
    d = np.prod(diffs, axis=-1)
    q = np.zeros_like(x, dtype=complex)
    for g in range(len(freqs)):
        q = q + decays[g] * np.prod(np.delete(diffs, g, axis=-1), axis=-1)
    denom = d + 0.5j * q
    return d / denom, -0.5j * q / denom


def closed_form(cfg: ArrayConfig, delta_k: float) -> ScatteringResult:
    """Amplitudes from the cleared rational form; exact at Δₖ = δωᵢ.

    Raises:
        InvalidConfig: The array is not regularly spaced with equal decay rates.
    """
    freqs, decays = merge_emitters(cfg)
    t, r = cleared_amplitudes(np.array(delta_k), freqs, decays)
    return ScatteringResult.from_amplitudes(delta_k, complex(t), complex(r))


def transparency_points(cfg: ArrayConfig) -> np.ndarray:
    """Detunings where r vanishes: the secular roots of the merged emitters."""
    freqs, decays = merge_emitters(cfg)
    return secular_roots(freqs, decays)


def green_function_amplitudes(cfg: ArrayConfig, delta_k: float) -> ScatteringResult:
    """Amplitudes from the resolvent of the effective Hamiltonian.

    r = −i·uᵀ(Δₖ − H)⁻¹u and t = 1 − i·wᵀ(Δₖ − H)⁻¹u with
    uᵢ = √(Γᵢ/2)·e^{i(φᵢ−φ₁)} and wᵢ = √(Γᵢ/2)·e^{−i(φᵢ−φ₁)}. Valid for any
    spacing and decay rates, singular only on a complex eigenvalue of H.
    """
    if cfg.n_atoms == 0:
        return ScatteringResult.from_amplitudes(delta_k, 1.0, 0.0)
    phi = cfg.phase - cfg.phase[0]
    amp = np.sqrt(cfg.gamma / 2)
    u = amp * np.exp(1j * phi)
    w = amp * np.exp(-1j * phi)
    h = build_effective_hamiltonian(cfg)
    f = np.linalg.solve(delta_k * np.eye(cfg.n_atoms) - h, u)
    return ScatteringResult.from_amplitudes(delta_k, 1 - 1j * (w @ f), -1j * (u @ f))
