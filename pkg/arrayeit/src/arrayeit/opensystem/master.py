"""Coherently driven array: master equation and steady state.

In the frame rotating at the drive frequency,

    ρ̇ = −i[H_drive, ρ] + 𝒟[c_R]ρ + 𝒟[c_L]ρ

with c_R = Σᵢ√(Γᵢ/2)e^{−iφᵢ}σᵢ⁻ and c_L = Σᵢ√(Γᵢ/2)e^{iφᵢ}σᵢ⁻ the emission
into the right- and left-moving channels. Expanding the two dissipators gives
the individual decay Γᵢ𝒟[σᵢ⁻] plus the collective cross terms with
Γᵢⱼ = √(ΓᵢΓⱼ)cos|φᵢ − φⱼ|.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.linalg import eigvalsh, lstsq, svdvals
from scipy.sparse.linalg import norm as sparse_norm
from scipy.sparse.linalg import splu

from arrayeit.core.config import settings
from arrayeit.core.errors import DimensionTooLarge, InvalidConfig, NonUniqueSteadyState
from arrayeit.model.array import ArrayConfig
from arrayeit.opensystem.operators import dagger, lindblad_dissipator, lowering_operators, spost, spre, unvec

logger = logging.getLogger(__name__)

# Singular values below this fraction of the largest count toward the kernel
NULL_SPACE_RTOL = 1e-9

# Largest accepted ‖L·x‖ / (‖L‖·‖x‖) for a steady-state solution
RESIDUAL_RTOL = 1e-8

# DensityOperator validation tolerance
STATE_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class DriveConfig:
    """A coherent probe of amplitude α (|α|² photons per unit time) at detuning Δₖ."""

    base: ArrayConfig
    delta_k: float
    alpha: complex

    def __post_init__(self) -> None:
        if not (math.isfinite(self.delta_k) and np.isfinite(self.alpha)):
            raise InvalidConfig("drive detuning and amplitude must be finite")

    @classmethod
    def from_intensity(cls, base: ArrayConfig, delta_k: float, alpha2: float, phase: float = 0.0) -> DriveConfig:
        """Build from the photon flux |α|² and the drive phase."""
        if alpha2 < 0:
            raise InvalidConfig(f"|alpha|^2 must be non-negative, got {alpha2}")
        return cls(base=base, delta_k=float(delta_k), alpha=complex(math.sqrt(alpha2) * np.exp(1j * phase)))

    @property
    def alpha2(self) -> float:
        return abs(self.alpha) ** 2

    @property
    def rabi_frequencies(self) -> np.ndarray:
        """Ωᵢ = √(Γᵢ/2)·α."""
        return np.sqrt(self.base.gamma / 2) * self.alpha

    @property
    def n_atoms(self) -> int:
        return self.base.n_atoms


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """A validated 2^N × 2^N density matrix."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        rho = np.asarray(self.matrix, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise InvalidConfig("density matrix must be square")
        if np.abs(rho - rho.conj().T).max(initial=0.0) > STATE_TOL:
            raise InvalidConfig("density matrix is not Hermitian")
        if abs(np.trace(rho) - 1) > STATE_TOL:
            raise InvalidConfig(f"density matrix trace is {np.trace(rho).real:.3g}, not 1")
        if eigvalsh(rho).min(initial=0.0) < -STATE_TOL:
            raise InvalidConfig("density matrix has negative eigenvalues")
        object.__setattr__(self, "matrix", rho)

    @classmethod
    def from_matrix(cls, rho: np.ndarray) -> DensityOperator:
        """Hermitize and normalize a solver output before validation."""
        rho = 0.5 * (rho + rho.conj().T)
        return cls(rho / np.trace(rho).real)

    @classmethod
    def pure(cls, psi: np.ndarray) -> DensityOperator:
        psi = np.asarray(psi, dtype=complex)
        psi = psi / np.linalg.norm(psi)
        return cls(np.outer(psi, psi.conj()))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_atoms(self) -> int:
        return int(round(math.log2(self.dim)))

    def expect(self, op: sparse.spmatrix | np.ndarray) -> complex:
        """tr(ρ·op)."""
        return complex(np.sum(self.matrix.T * op.toarray() if sparse.issparse(op) else self.matrix.T * op))

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))


# =============================================================================
# Builders
# =============================================================================


def _check_size(n_atoms: int, limit: int, what: str) -> None:
    if n_atoms > limit:
        raise DimensionTooLarge(n_atoms, limit, what)


def exchange_couplings(cfg: ArrayConfig) -> tuple[np.ndarray, np.ndarray]:
    """Coherent exchange 𝒢ᵢⱼ = ½√(ΓᵢΓⱼ)sin|φᵢ−φⱼ| and collective decay Γᵢⱼ = √(ΓᵢΓⱼ)cos|φᵢ−φⱼ|."""
    rates = np.sqrt(np.outer(cfg.gamma, cfg.gamma))
    dphi = np.abs(np.subtract.outer(cfg.phase, cfg.phase))
    exchange = 0.5 * rates * np.sin(dphi)
    if cfg.spacing_multiple is not None:
        # sin(nπ) is zero; drop the rounding residue.
        exchange = np.zeros_like(exchange)
    np.fill_diagonal(exchange, 0.0)
    return exchange, rates * np.cos(dphi)


def channel_operators(cfg: ArrayConfig) -> tuple[sparse.csr_matrix, sparse.csr_matrix]:
    """Collective emission operators (c_R, c_L) into the two waveguide directions."""
    n = cfg.n_atoms
    dim = 2**n
    c_r = sparse.csr_matrix((dim, dim), dtype=complex)
    c_l = sparse.csr_matrix((dim, dim), dtype=complex)
    amp = np.sqrt(cfg.gamma / 2)
    for i, sm in enumerate(lowering_operators(n)):
        c_r = c_r + amp[i] * np.exp(-1j * cfg.phase[i]) * sm
        c_l = c_l + amp[i] * np.exp(1j * cfg.phase[i]) * sm
    return c_r.tocsr(), c_l.tocsr()


def drive_hamiltonian_sparse(dc: DriveConfig) -> sparse.csr_matrix:
    cfg = dc.base
    n = cfg.n_atoms
    _check_size(n, settings.max_hamiltonian_atoms, "the drive Hamiltonian")
    dim = 2**n
    sm = lowering_operators(n)
    sp = [dagger(s) for s in sm]
    exchange, _ = exchange_couplings(cfg)
    rel_phase = cfg.phase - cfg.phase[0] if n else cfg.phase
    omega = dc.rabi_frequencies * np.exp(1j * rel_phase)
    if cfg.spacing_multiple is not None:
        omega = dc.rabi_frequencies * cfg.spacing_sign

    h = sparse.csr_matrix((dim, dim), dtype=complex)
    for i in range(n):
        h = h - (dc.delta_k - cfg.delta_omega[i]) * (sp[i] @ sm[i])
        h = h + omega[i] * sp[i] + np.conj(omega[i]) * sm[i]
        for j in range(n):
            if i != j and exchange[i, j] != 0.0:
                h = h + exchange[i, j] * (sp[i] @ sm[j])
    return h.tocsr()


def build_drive_hamiltonian(dc: DriveConfig) -> np.ndarray:
    """Dense drive Hamiltonian (Hermitian) in the rotating frame.

    H = −Σᵢ(Δₖ − δωᵢ)σᵢ⁺σᵢ⁻ + Σᵢ≠ⱼ𝒢ᵢⱼσᵢ⁺σⱼ⁻ + Σᵢ(Ωᵢe^{i(φᵢ−φ₁)}σᵢ⁺ + h.c.)

    Raises:
        DimensionTooLarge: N exceeds settings.max_hamiltonian_atoms.
    """
    return drive_hamiltonian_sparse(dc).toarray()


def build_liouvillian(dc: DriveConfig) -> sparse.csr_matrix:
    """Sparse Liouvillian acting on row-major vec(ρ); trace-annihilating.

    Raises:
        DimensionTooLarge: N exceeds settings.max_drive_atoms.
    """
    _check_size(dc.n_atoms, settings.max_drive_atoms, "the Liouvillian")
    h = drive_hamiltonian_sparse(dc)
    c_r, c_l = channel_operators(dc.base)
    liouvillian = -1j * (spre(h) - spost(h)) + lindblad_dissipator(c_r) + lindblad_dissipator(c_l)
    return liouvillian.tocsr()


# =============================================================================
# Steady state
# =============================================================================


def _trace_row(dim: int) -> np.ndarray:
    row = np.zeros(dim * dim, dtype=complex)
    row[:: dim + 1] = 1.0
    return row


def _dense_steady_state(liouvillian: sparse.spmatrix, dim: int, check_unique: bool) -> np.ndarray:
    a = liouvillian.toarray()
    if check_unique:
        s = svdvals(a)
        null_dim = int(np.sum(s < NULL_SPACE_RTOL * s[0]))
        logger.debug("dense steady state: kernel dimension %d", null_dim)
        if null_dim > 1:
            raise NonUniqueSteadyState(null_dim)
    stacked = np.vstack([a, _trace_row(dim)[None, :]])
    rhs = np.zeros(stacked.shape[0], dtype=complex)
    rhs[-1] = 1.0
    solution, *_ = lstsq(stacked, rhs)
    return solution


def _sparse_steady_state(liouvillian: sparse.spmatrix, dim: int) -> np.ndarray:
    a = liouvillian.tolil()
    a[0, :] = _trace_row(dim)
    rhs = np.zeros(dim * dim, dtype=complex)
    rhs[0] = 1.0
    try:
        solution = splu(a.tocsc()).solve(rhs)
    except RuntimeError as e:
        # SuperLU reports an exactly singular factor
        raise NonUniqueSteadyState(2) from e
    if not np.all(np.isfinite(solution)):
        raise NonUniqueSteadyState(2)
    return solution


def _relative_residual(liouvillian: sparse.spmatrix, solution: np.ndarray) -> float:
    scale = sparse_norm(sparse.csr_matrix(liouvillian)) * np.linalg.norm(solution)
    if scale == 0:
        return 0.0
    return float(np.linalg.norm(liouvillian @ solution) / scale)


def steady_state(liouvillian: sparse.spmatrix, *, check_unique: bool = True) -> DensityOperator:
    """Solve L·vec(ρ) = 0 with tr ρ = 1.

    Dense least squares on [L; trace row] up to settings.dense_max_atoms,
    sparse LU with the trace row replacing one equation beyond that. Either
    way the relative residual ‖L·x‖ / (‖L‖·‖x‖) must stay below
    RESIDUAL_RTOL; on the sparse path this is what detects a degenerate kernel.

    Raises:
        NonUniqueSteadyState: The kernel of L has dimension > 1, or the
            solution fails the residual check.
        DimensionTooLarge: N exceeds settings.max_drive_atoms.
    """
    dim = int(round(math.sqrt(liouvillian.shape[0])))
    n_atoms = int(round(math.log2(dim)))
    _check_size(n_atoms, settings.max_drive_atoms, "steady-state solves")
    if n_atoms <= settings.dense_max_atoms:
        solution = _dense_steady_state(liouvillian, dim, check_unique)
    else:
        logger.debug("sparse steady state for %d atoms", n_atoms)
        solution = _sparse_steady_state(liouvillian, dim)
    residual = _relative_residual(liouvillian, solution)
    logger.debug("steady-state relative residual %.3g", residual)
    if not residual <= RESIDUAL_RTOL:
        raise NonUniqueSteadyState(2, residual=residual)
    return DensityOperator.from_matrix(unvec(solution))
