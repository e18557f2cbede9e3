"""Superradiant / subradiant collective modes of a regularly spaced array.

With phase steps of nπ and equal decay rates the dissipative part of the
effective Hamiltonian has rank one: a single superradiant mode decays at NΓ
while the N−1 orthogonal modes are dark. The frequency spread δω couples the
modes; diagonalizing the dark block gives the effective control detunings Δᵢ
and Rabi couplings gᵢ of an equivalent driven (N+1)-level atom.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh, eigvalsh, null_space

from arrayeit.core.config import settings
from arrayeit.core.errors import NearDegenerate
from arrayeit.model.array import ArrayConfig
from arrayeit.model.degenerate import DegenerateReduction

# Components smaller than this are skipped when fixing eigenvector phases
GAUGE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class CollectiveDecomposition:
    """Effective (N+1)-level parameters of an array.

    Attributes:
        n_atoms: Number of atoms N.
        superradiant_decay: NΓ.
        effective_detunings: Δᵢ, ascending; one per subradiant mode (N−1, or
            emitters − 1 after a degenerate reduction).
        effective_couplings: gᵢ paired with Δᵢ (bright-row elements).
        coupling_matrix: g̃ in the collective basis (N×N, or emitters × emitters
            after a reduction); row 0 couples bright to dark.
        subradiant_transform: Unitary V with V·g̃[1:, 1:]·V† = diag(Δ).
        transform: The collective transform U (rows are modes, columns atoms).
    """

    n_atoms: int
    superradiant_decay: float
    effective_detunings: np.ndarray
    effective_couplings: np.ndarray
    coupling_matrix: np.ndarray
    subradiant_transform: np.ndarray
    transform: np.ndarray

    @property
    def window_count(self) -> int:
        return len(self.effective_detunings)

    @property
    def n_emitters(self) -> int:
        """Modes that couple to the waveguide before the bright one is split off."""
        return self.window_count + 1 if self.n_atoms else 0


def collective_transform(cfg: ArrayConfig) -> np.ndarray:
    """Unitary U[p, q] = e^{−i2π(p−1)q/N}·(−1)^{(q−1)n}/√N (1-based p, q).

    Row 0 is the superradiant mode. U·H₀·U† is diag(−iNΓ/2, 0, …, 0) where H₀ is
    the δω = 0 part of the effective Hamiltonian.
    """
    cfg.require_collective()
    n = cfg.n_atoms
    p = np.arange(n)[:, None]
    q = np.arange(1, n + 1)[None, :]
    return np.exp(-2j * np.pi * p * q / n) * cfg.spacing_sign[None, :] / np.sqrt(n)


def coupling_strengths(cfg: ArrayConfig) -> np.ndarray:
    """Collective-basis coupling matrix g̃ = U·diag(δω)·U†.

    g̃ᵢⱼ = (1/N)·Σₘ δωₘ·e^{i(2π/N)(j−i)m}; Hermitian, zero diagonal for zero-mean δω.
    """
    u = collective_transform(cfg)
    return (u * cfg.delta_omega[None, :]) @ u.conj().T


def secular_roots(frequencies: Sequence[float], weights: Sequence[float] | None = None) -> np.ndarray:
    """Real roots of Σₘ wₘ/(x − δωₘ) = 0, ascending.

    They are the eigenvalues of diag(δω) compressed onto the orthogonal
    complement of √w, so a Hermitian solver applies and all roots are real.
    Repeated frequencies contribute themselves as roots.
    """
    freqs = np.asarray(frequencies, dtype=float)
    w = np.ones_like(freqs) if weights is None else np.asarray(weights, dtype=float)
    if len(freqs) < 2:
        return np.empty(0)
    basis = null_space(np.sqrt(w)[None, :])
    return eigvalsh(basis.T @ np.diag(freqs) @ basis)


def _check_distinct(delta_omega: np.ndarray, tol: float) -> None:
    order = np.argsort(delta_omega, kind="stable")
    gaps = np.diff(delta_omega[order])
    if len(gaps) and gaps.min() < tol:
        k = int(np.argmin(gaps))
        i, j = sorted((int(order[k]), int(order[k + 1])))
        raise NearDegenerate((i, j), float(gaps[k]))


def _fix_gauge(vectors: np.ndarray) -> np.ndarray:
    """Make the first significant component of each column real positive."""
    fixed = vectors.copy()
    for col in range(fixed.shape[1]):
        v = fixed[:, col]
        k = int(np.argmax(np.abs(v) > GAUGE_TOL * np.abs(v).max()))
        fixed[:, col] = v * (abs(v[k]) / v[k])
    return fixed


def decompose(cfg: ArrayConfig, *, tol: float | None = None, strict: bool = True) -> CollectiveDecomposition:
    """Diagonalize the subradiant block of the collective-basis Hamiltonian.

    Args:
        cfg: Regularly spaced array with equal decay rates.
        tol: Minimum frequency separation (defaults to settings.degeneracy_tol).
        strict: When False, skip the degeneracy check (e.g. all δω equal, where
            every gᵢ vanishes and the decomposition is trivially valid).

    Returns:
        CollectiveDecomposition with Δᵢ ascending and gauge-fixed V.

    Raises:
        NearDegenerate: Two δω closer than tol; use reduce_degenerate instead.
    """
    gamma = cfg.require_collective()
    tol = settings.degeneracy_tol if tol is None else tol
    if strict:
        _check_distinct(cfg.delta_omega, tol)

    u = collective_transform(cfg)
    g_tilde = coupling_strengths(cfg)
    block = g_tilde[1:, 1:]
    if block.size:
        detunings, vectors = eigh(block)
        vectors = _fix_gauge(vectors)
    else:
        detunings, vectors = np.empty(0), np.empty((0, 0), dtype=complex)

    return CollectiveDecomposition(
        n_atoms=cfg.n_atoms,
        superradiant_decay=cfg.n_atoms * gamma,
        effective_detunings=detunings,
        effective_couplings=g_tilde[0, 1:] @ vectors,
        coupling_matrix=g_tilde,
        subradiant_transform=vectors.conj().T,
        transform=u,
    )


def decompose_reduced(reduction: DegenerateReduction) -> CollectiveDecomposition:
    """Collective modes of the merged emitter model of a degenerate array.

    Emitter a sits at fₐ with decay mₐΓ, so the bright mode has amplitudes
    √mₐ/√N and the subradiant detunings are the roots of Σₐ mₐ/(x − fₐ) = 0.
    The cluster dark modes stay decoupled and are left out.
    """
    freqs = reduction.emitter_frequencies
    weights = np.array([m for _, m in reduction.groups], dtype=float)
    n_atoms = int(weights.sum())
    k = len(freqs)
    bright = np.sqrt(weights) / np.sqrt(n_atoms)
    basis = np.vstack([bright[None, :], null_space(bright[None, :]).T]) if k else np.zeros((0, 0))

    g_tilde = (basis * freqs[None, :]) @ basis.T
    block = g_tilde[1:, 1:]
    if block.size:
        detunings, vectors = eigh(block)
        vectors = _fix_gauge(vectors)
    else:
        detunings, vectors = np.empty(0), np.empty((0, 0), dtype=complex)

    emitter_rows = basis @ reduction.transform[:k]
    return CollectiveDecomposition(
        n_atoms=n_atoms,
        superradiant_decay=float(reduction.emitter_decays.sum()),
        effective_detunings=detunings,
        effective_couplings=g_tilde[0, 1:] @ vectors,
        coupling_matrix=g_tilde.astype(complex),
        subradiant_transform=vectors.conj().T,
        transform=np.vstack([emitter_rows, reduction.transform[k:]]),
    )
