"""Reduction of arrays with repeated atomic frequencies.

m identical atoms act as one emitter: their symmetric (sign-weighted)
combination decays at mΓ and the remaining m−1 combinations are dark and
decoupled. An array with M clusters and m₀ isolated atoms therefore behaves
as m₀ + M emitters with m₀ + M − 1 transparency windows.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from arrayeit.core.config import settings
from arrayeit.model.array import ArrayConfig, build_effective_hamiltonian


@dataclass(frozen=True, eq=False)
class DegenerateReduction:
    """Clusters of identical atoms and the effective emitters they form.

    Attributes:
        groups: (frequency, multiplicity) per cluster, ascending in frequency;
            isolated atoms appear with multiplicity 1.
        effective_emitters: (detuning, effective decay m·Γ) per emitter.
        window_count: Number of transparency windows, emitters − 1.
        members: Atom indices of each group.
        transform: Unitary block transform; rows 0..len(groups)−1 are the
            emitter modes, the rest are decoupled dark modes.
        hamiltonian: Effective Hamiltonian in the transformed basis.
    """

    groups: list[tuple[float, int]]
    effective_emitters: list[tuple[float, float]]
    window_count: int
    members: list[list[int]]
    transform: np.ndarray
    hamiltonian: np.ndarray

    @property
    def cluster_count(self) -> int:
        """M: groups with more than one atom."""
        return sum(1 for _, m in self.groups if m > 1)

    @property
    def isolated_count(self) -> int:
        """m₀: atoms with a unique frequency."""
        return sum(1 for _, m in self.groups if m == 1)

    @property
    def emitter_frequencies(self) -> np.ndarray:
        return np.array([f for f, _ in self.effective_emitters])

    @property
    def emitter_decays(self) -> np.ndarray:
        return np.array([g for _, g in self.effective_emitters])

    @property
    def emitter_hamiltonian(self) -> np.ndarray:
        """Hamiltonian restricted to the emitter modes."""
        k = len(self.groups)
        return self.hamiltonian[:k, :k]


def cluster_frequencies(frequencies: np.ndarray, tol: float) -> list[list[int]]:
    """Group indices whose sorted frequencies are chained by gaps <= tol."""
    order = np.argsort(frequencies, kind="stable")
    groups: list[list[int]] = []
    for idx in order:
        if groups and frequencies[idx] - frequencies[groups[-1][-1]] <= tol:
            groups[-1].append(int(idx))
        else:
            groups.append([int(idx)])
    return groups


def _block_rows(members: list[int], sign: np.ndarray, n_atoms: int) -> np.ndarray:
    """Rows (1/√m)·e^{−i2π(p−1)q/m}·sⱼ over one group's atoms; row 0 is its bright mode."""
    m = len(members)
    rows = np.zeros((m, n_atoms), dtype=complex)
    q = np.arange(m)
    phases = np.exp(-2j * np.pi * np.outer(q, q) / m) / np.sqrt(m)
    rows[:, members] = phases * sign[members][None, :]
    return rows


def reduce_degenerate(cfg: ArrayConfig, tol: float | None = None) -> DegenerateReduction:
    """Cluster identical frequencies and build the reduced emitter model.

    Args:
        cfg: Regularly spaced array with equal decay rates.
        tol: Frequencies within tol of a neighbour share a cluster
            (defaults to settings.degeneracy_tol; 0 merges exact repeats only).

    Returns:
        DegenerateReduction with one emitter of decay m·Γ per cluster.
    """
    gamma = cfg.require_collective()
    tol = settings.degeneracy_tol if tol is None else tol
    members = cluster_frequencies(cfg.delta_omega, tol)

    groups = [(float(np.mean(cfg.delta_omega[g])), len(g)) for g in members]
    emitters = [(f, m * gamma) for f, m in groups]

    sign = cfg.spacing_sign
    blocks = [_block_rows(g, sign, cfg.n_atoms) for g in members]
    bright = [b[:1] for b in blocks]
    dark = [b[1:] for b in blocks]
    transform = np.vstack(bright + dark) if blocks else np.zeros((0, 0), dtype=complex)

    h = build_effective_hamiltonian(cfg)
    return DegenerateReduction(
        groups=groups,
        effective_emitters=emitters,
        window_count=max(len(emitters) - 1, 0),
        members=members,
        transform=transform,
        hamiltonian=transform @ h @ transform.conj().T,
    )


def merge_emitters(cfg: ArrayConfig, tol: float = 0.0) -> tuple[np.ndarray, np.ndarray]:
    """Emitter frequencies and decay rates after merging clustered atoms.

    Cheaper than reduce_degenerate when only the emitter list is needed.
    """
    gamma = cfg.require_collective()
    members = cluster_frequencies(cfg.delta_omega, tol)
    freqs = np.array([np.mean(cfg.delta_omega[g]) for g in members])
    decays = np.array([len(g) * gamma for g in members])
    return freqs, decays
