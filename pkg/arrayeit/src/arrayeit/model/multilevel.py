"""Mapping onto a driven (N+1)-level atom.

The superradiant mode plays the waveguide-coupled excited state |N⟩ with decay
Γ_N0 = NΓ; each diagonalized subradiant mode is a metastable level |i⟩ driven
by an effective control field of detuning Δᵢ and Rabi frequency Ωᵢ = gᵢ.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigvals
from scipy.optimize import linear_sum_assignment

from arrayeit.model.array import ArrayConfig, build_effective_hamiltonian
from arrayeit.model.collective import CollectiveDecomposition, decompose


@dataclass(frozen=True, eq=False)
class MultiLevelModel:
    excited_decay: float
    control_detunings: np.ndarray
    rabi_frequencies: np.ndarray

    @property
    def n_levels(self) -> int:
        """Total number of levels, N + 1."""
        return len(self.control_detunings) + 2


def map_to_multilevel(dec: CollectiveDecomposition) -> MultiLevelModel:
    """Identify gᵢ ↔ Ωᵢ, Δᵢ ↔ Δᵢ⁽ᶜ⁾, NΓ ↔ Γ_N0."""
    return MultiLevelModel(
        excited_decay=dec.superradiant_decay,
        control_detunings=dec.effective_detunings.copy(),
        rabi_frequencies=dec.effective_couplings.copy(),
    )


def build_multilevel_hamiltonian(model: MultiLevelModel) -> np.ndarray:
    """Single-excitation non-Hermitian Hamiltonian of the driven (N+1)-level atom.

    Basis: excited level first, then the metastable levels. The excited level
    decays at Γ_N0 and couples to level i with Ωᵢ.
    """
    n = len(model.control_detunings) + 1
    h = np.zeros((n, n), dtype=complex)
    h[0, 0] = -0.5j * model.excited_decay
    h[0, 1:] = model.rabi_frequencies
    h[1:, 0] = np.conj(model.rabi_frequencies)
    h[np.arange(1, n), np.arange(1, n)] = model.control_detunings
    return h


def spectrum_mismatch(a: np.ndarray, b: np.ndarray) -> float:
    """Largest distance between two eigenvalue sets under the best one-to-one pairing."""
    if len(a) != len(b):
        return float("inf")
    if len(a) == 0:
        return 0.0
    cost = np.abs(np.subtract.outer(a, b))
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def mapping_residual(cfg: ArrayConfig, *, strict: bool = True) -> float:
    """Spectral distance between the array Hamiltonian and its multilevel image."""
    model = map_to_multilevel(decompose(cfg, strict=strict))
    return spectrum_mismatch(
        eigvals(build_effective_hamiltonian(cfg)),
        eigvals(build_multilevel_hamiltonian(model)),
    )
