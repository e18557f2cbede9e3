"""Analytic dark steady states of driven even-N ladders.

For N = 2 and N = 4 atoms with equally spaced frequencies (spacing Δ,
ascending), driven on the mean frequency with real Rabi frequency Ω:

    |D₂⟩ = [Δ|gg⟩ + 2Ω(|eg⟩ + |ge⟩)] / √(8Ω² + Δ²)

    |D₄⟩ = [3Δ²|gggg⟩ + 2ΔΩ(|eggg⟩ + |ggge⟩ − 3|gegg⟩ − 3|ggeg⟩)
            − 4Ω²(|eegg⟩ + |egeg⟩ + |gege⟩ + |ggee⟩)] / √((8Ω²+Δ²)(8Ω²+9Δ²))

written for odd spacing multiples, where the drive on atom j carries (−1)^{j−1}.
A drive phase θ multiplies every k-excitation amplitude by e^{ikθ}.
Both are annihilated by the drive Hamiltonian and by the collective jump
operators, so they are pure steady states with no inelastic emission.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from arrayeit.core.errors import InvalidConfig, Unsupported
from arrayeit.model.array import ArrayConfig
from arrayeit.opensystem.master import DensityOperator, DriveConfig, build_drive_hamiltonian, build_liouvillian
from arrayeit.opensystem.operators import basis_index, vec


def _two_atom(spacing: float, rabi: float) -> dict[str, float]:
    return {"gg": spacing, "eg": 2 * rabi, "ge": 2 * rabi}


def _four_atom(spacing: float, rabi: float) -> dict[str, float]:
    cross = 2 * spacing * rabi
    pair = -4 * rabi**2
    return {
        "gggg": 3 * spacing**2,
        "eggg": cross,
        "ggge": cross,
        "gegg": -3 * cross,
        "ggeg": -3 * cross,
        "eegg": pair,
        "egeg": pair,
        "gege": pair,
        "ggee": pair,
    }


_AMPLITUDES = {2: _two_atom, 4: _four_atom}


def _ladder(n_atoms: int, spacing: float) -> np.ndarray:
    return spacing * (np.arange(n_atoms) - (n_atoms - 1) / 2)


@dataclass(frozen=True, eq=False)
class DarkState:
    """A normalized dark state over the 2^N product basis (atom 1 first).

    Attributes:
        amplitudes: Unit-norm state vector.
        normalization: The constant the printed coefficients are divided by.
        n_atoms: 2 or 4.
        spacing: Frequency spacing Δ of the ladder.
        rabi: Real Rabi frequency Ω = √(Γ/2)·α.
        spacing_multiple: Phase step n of the array (steps of nπ).
        drive_phase: Phase θ of the coherent drive α = |α|e^{iθ}.
    """

    amplitudes: np.ndarray
    normalization: float
    n_atoms: int
    spacing: float
    rabi: float
    spacing_multiple: int = 1
    drive_phase: float = 0.0

    @property
    def frequencies(self) -> np.ndarray:
        return _ladder(self.n_atoms, self.spacing)

    def fidelity(self, rho: DensityOperator) -> float:
        """⟨D|ρ|D⟩."""
        psi = self.amplitudes
        return float(np.real(psi.conj() @ rho.matrix @ psi))

    def superradiant_overlap(self) -> complex:
        """⟨S|D⟩ with |S⟩ = Σⱼ sⱼ|eⱼ⟩/√N the bright single-excitation state."""
        n = self.n_atoms
        signs = np.where((np.arange(n) * self.spacing_multiple) % 2 == 0, 1.0, -1.0)
        bright = np.zeros(2**n, dtype=complex)
        for j in range(n):
            bright[1 << (n - 1 - j)] = signs[j] / math.sqrt(n)
        return complex(bright.conj() @ self.amplitudes)

    def density(self) -> DensityOperator:
        return DensityOperator.pure(self.amplitudes)


def dark_state(
    n_atoms: int, spacing: float, rabi: float, *, spacing_multiple: int = 1, drive_phase: float = 0.0
) -> DarkState:
    """Closed-form dark state of an N = 2 or 4 ladder driven at Δₖ = 0.

    Args:
        n_atoms: Number of atoms, 2 or 4.
        spacing: Frequency spacing Δ between neighbouring atoms (ascending ladder).
        rabi: Real Rabi frequency Ω.
        spacing_multiple: Phase step n; even n removes the alternating drive sign,
            which flips the sign of every amplitude with an odd number of
            excitations on even-numbered atoms.
        drive_phase: Phase θ of the drive amplitude.

    Raises:
        Unsupported: n_atoms is not 2 or 4.
        InvalidConfig: Δ and Ω both vanish, leaving no normalizable state.
    """
    if n_atoms not in _AMPLITUDES:
        raise Unsupported(f"closed-form dark states exist for N = 2 and 4, got N = {n_atoms}")
    if spacing == 0 and rabi == 0:
        raise InvalidConfig("dark state needs a non-zero spacing or Rabi frequency")

    coefficients = _AMPLITUDES[n_atoms](spacing, rabi)
    amplitudes = np.zeros(2**n_atoms, dtype=complex)
    for label, value in coefficients.items():
        if spacing_multiple % 2 == 0:
            flips = sum(1 for j, c in enumerate(label) if c == "e" and j % 2 == 1)
            value = value * (-1) ** flips
        amplitudes[basis_index(label)] = value * np.exp(1j * drive_phase * label.count("e"))

    if n_atoms == 2:
        normalization = math.sqrt(8 * rabi**2 + spacing**2)
    else:
        normalization = math.sqrt((8 * rabi**2 + spacing**2) * (8 * rabi**2 + 9 * spacing**2))
    return DarkState(
        amplitudes=amplitudes / normalization,
        normalization=normalization,
        n_atoms=n_atoms,
        spacing=float(spacing),
        rabi=float(rabi),
        spacing_multiple=spacing_multiple,
        drive_phase=float(drive_phase),
    )


def dark_state_config(ds: DarkState, *, gamma: float = 1.0) -> DriveConfig:
    """The array and resonant drive the dark state belongs to."""
    cfg = ArrayConfig.regular(ds.frequencies, gamma=gamma, spacing_multiple=ds.spacing_multiple)
    alpha = ds.rabi / math.sqrt(gamma / 2) * np.exp(1j * ds.drive_phase)
    return DriveConfig(base=cfg, delta_k=0.0, alpha=complex(alpha))


def dark_state_residuals(ds: DarkState, dc: DriveConfig) -> tuple[float, float]:
    """(‖H·|D⟩‖, ‖L(|D⟩⟨D|)‖); both vanish for a dark steady state."""
    h = build_drive_hamiltonian(dc)
    liouvillian = build_liouvillian(dc)
    psi = ds.amplitudes
    return (
        float(np.linalg.norm(h @ psi)),
        float(np.linalg.norm(liouvillian @ vec(np.outer(psi, psi.conj())))),
    )
