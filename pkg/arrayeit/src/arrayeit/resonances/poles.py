"""Pole / residue representation of the reflection amplitude.

Clearing the poles of S(x) = Σ 1/(x − δωᵢ) gives r = Q(x)/P(x) with

    P(x) = Π_g(x − x_g) + (i/2)·Σ_g Γ_g·Π_{h≠g}(x − x_h)      (monic, degree K)
    Q(x) = −(i/2)·Σ_g Γ_g·Π_{h≠g}(x − x_h)                     (degree K − 1)

over the K effective emitters left after merging repeated frequencies. The
roots Zᵢ of P are simple, so r = Σ Aᵢ/(x − Zᵢ) with Aᵢ = Q(Zᵢ)/P′(Zᵢ). Each
term is a Lorentzian resonance centred at Re Zᵢ with half-width −Im Zᵢ.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING

import numpy as np
from scipy.linalg import companion, eigvals

from arrayeit.core.config import settings
from arrayeit.core.errors import IllConditioned, InvalidConfig
from arrayeit.model.array import ArrayConfig
from arrayeit.model.degenerate import merge_emitters

if TYPE_CHECKING:
    from arrayeit.resonances.windows import WindowLabel

# Real parts are rounded to this many decimals when ordering poles
SORT_DECIMALS = 9


@dataclass(frozen=True, eq=False)
class PoleSet:
    """Resonances of the reflection amplitude.

    Attributes:
        poles: Complex Zᵢ, sorted by real part then imaginary part.
        residues: Aᵢ aligned with poles, or None when only poles were requested.
        emitter_frequencies: Frequencies of the merged emitters.
        emitter_decays: Decay rates of the merged emitters.
        window_labels: Classified transparency windows.
        reference_offset: Mean frequency removed from the document frame.
    """

    poles: np.ndarray
    residues: np.ndarray | None
    emitter_frequencies: np.ndarray
    emitter_decays: np.ndarray
    window_labels: list[WindowLabel] = field(default_factory=list)
    reference_offset: float = 0.0

    @property
    def half_widths(self) -> np.ndarray:
        return -self.poles.imag

    def with_windows(self, labels: list[WindowLabel]) -> PoleSet:
        return replace(self, window_labels=list(labels))


# =============================================================================
# Polynomials
# =============================================================================


def _emitters(cfg: ArrayConfig) -> tuple[np.ndarray, np.ndarray]:
    return merge_emitters(cfg, settings.degeneracy_tol)


def _decay_sum(freqs: np.ndarray, decays: np.ndarray) -> np.ndarray:
    """Coefficients of Σ_g Γ_g·Π_{h≠g}(x − x_h), highest degree first."""
    k = len(freqs)
    total = np.zeros(max(k, 1), dtype=complex)
    for g in range(k):
        total = total + decays[g] * np.poly(np.delete(freqs, g))
    return total


def denominator_polynomial(cfg: ArrayConfig) -> np.ndarray:
    """Monic coefficients of P, highest degree first; degree = number of emitters."""
    freqs, decays = _emitters(cfg)
    p = np.atleast_1d(np.poly(freqs)).astype(complex)
    if len(freqs):
        p[1:] += 0.5j * _decay_sum(freqs, decays)
    return p


def numerator_polynomial(cfg: ArrayConfig) -> np.ndarray:
    """Coefficients of the cleared reflection numerator Q, highest degree first."""
    freqs, decays = _emitters(cfg)
    return -0.5j * _decay_sum(freqs, decays)


def polynomial_roots(coefficients: np.ndarray) -> np.ndarray:
    """All roots via companion-matrix eigenvalues."""
    coeffs = np.trim_zeros(np.asarray(coefficients, dtype=complex), "f")
    if len(coeffs) < 2:
        return np.empty(0, dtype=complex)
    return eigvals(companion(coeffs))


def sort_poles(values: np.ndarray) -> np.ndarray:
    order = np.lexsort((values.imag, np.round(values.real, SORT_DECIMALS)))
    return values[order]


def _check_separation(poles: np.ndarray) -> None:
    if len(poles) < 2:
        return
    dist = np.abs(np.subtract.outer(poles, poles))
    dist[np.diag_indices(len(poles))] = np.inf
    i, j = np.unravel_index(np.argmin(dist), dist.shape)
    if dist[i, j] < settings.pole_separation_tol:
        raise IllConditioned(poles, (int(min(i, j)), int(max(i, j))))


# =============================================================================
# Poles and residues
# =============================================================================


def find_poles(cfg: ArrayConfig) -> PoleSet:
    """Complex resonances Zᵢ of the reflection amplitude.

    Raises:
        InvalidConfig: The array is not regularly spaced with equal decay rates.
        IllConditioned: Two roots closer than settings.pole_separation_tol.
    """
    freqs, decays = _emitters(cfg)
    poles = sort_poles(polynomial_roots(denominator_polynomial(cfg)))
    _check_separation(poles)
    return PoleSet(
        poles=poles,
        residues=None,
        emitter_frequencies=freqs,
        emitter_decays=decays,
        reference_offset=cfg.reference_offset,
    )


def partial_fractions(cfg: ArrayConfig) -> PoleSet:
    """Poles with residues Aᵢ = Q(Zᵢ)/P′(Zᵢ), so that r(x) = Σ Aᵢ/(x − Zᵢ)."""
    ps = find_poles(cfg)
    p = denominator_polynomial(cfg)
    q = numerator_polynomial(cfg)
    residues = np.polyval(q, ps.poles) / np.polyval(np.polyder(p), ps.poles)
    return replace(ps, residues=residues)


def reconstruct(ps: PoleSet, x: np.ndarray | float) -> np.ndarray:
    """Evaluate Σ Aᵢ/(x − Zᵢ)."""
    if ps.residues is None:
        raise InvalidConfig("PoleSet has no residues; use partial_fractions")
    x = np.asarray(x, dtype=float)
    return np.sum(ps.residues / (x[..., None] - ps.poles), axis=-1)
