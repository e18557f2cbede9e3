"""Sparse spin operators and row-major superoperators.

Basis: atom 1 is the most significant tensor factor, |g⟩ = 0 and |e⟩ = 1.
Density matrices are vectorised row by row (``rho.reshape(-1)``), so
vec(A·ρ·B) = kron(A, Bᵀ)·vec(ρ).
"""

from __future__ import annotations

import numpy as np
from scipy import sparse

SIGMA_MINUS = sparse.csr_matrix(np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex))


def lowering_operator(n_atoms: int, site: int) -> sparse.csr_matrix:
    """σ⁻ acting on one atom of an n-atom register."""
    left = sparse.identity(2**site, dtype=complex, format="csr")
    right = sparse.identity(2 ** (n_atoms - site - 1), dtype=complex, format="csr")
    return sparse.kron(sparse.kron(left, SIGMA_MINUS), right, format="csr")


def lowering_operators(n_atoms: int) -> list[sparse.csr_matrix]:
    return [lowering_operator(n_atoms, i) for i in range(n_atoms)]


def dagger(op: sparse.spmatrix) -> sparse.csr_matrix:
    return op.conj().T.tocsr()


def spre(a: sparse.spmatrix) -> sparse.csr_matrix:
    """ρ ↦ A·ρ."""
    eye = sparse.identity(a.shape[0], dtype=complex, format="csr")
    return sparse.kron(a, eye, format="csr")


def spost(b: sparse.spmatrix) -> sparse.csr_matrix:
    """ρ ↦ ρ·B."""
    eye = sparse.identity(b.shape[0], dtype=complex, format="csr")
    return sparse.kron(eye, b.T, format="csr")


def sprepost(a: sparse.spmatrix, b: sparse.spmatrix) -> sparse.csr_matrix:
    """ρ ↦ A·ρ·B."""
    return sparse.kron(a, b.T, format="csr")


def lindblad_dissipator(c: sparse.spmatrix) -> sparse.csr_matrix:
    """𝒟[c]ρ = cρc† − ½{c†c, ρ}."""
    cd = dagger(c)
    cdc = (cd @ c).tocsr()
    return (sprepost(c, cd) - 0.5 * spre(cdc) - 0.5 * spost(cdc)).tocsr()


def vec(rho: np.ndarray) -> np.ndarray:
    return np.asarray(rho).reshape(-1)


def unvec(v: np.ndarray) -> np.ndarray:
    dim = int(round(np.sqrt(v.size)))
    return np.asarray(v).reshape(dim, dim)


def basis_index(label: str) -> int:
    """Index of a product state written as e.g. 'egge' (atom 1 first)."""
    return int(label.replace("g", "0").replace("e", "1"), 2)
