"""The atom array and its Markovian effective Hamiltonian.

All quantities are in units of the reference decay rate Γ, with detunings
measured from the mean atomic frequency. A configuration whose document
frequencies do not average to zero is stored centered, with the removed mean
kept in ``reference_offset`` so results can be reported in the document frame.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from arrayeit.core.errors import InvalidConfig

# Mean-frequency tolerance per atom
ZERO_MEAN_TOL = 1e-12

# Phase-step tolerance for the regular-spacing check (scaled by max(1, |φ|))
SPACING_TOL = 1e-12

# Relative tolerance for treating decay rates as equal
EQUAL_DECAY_TOL = 1e-12


def _infer_spacing(phase: np.ndarray) -> int | None:
    """Return n if every phase step equals nπ for one positive integer n."""
    if len(phase) < 2:
        return None
    steps = np.diff(phase) / math.pi
    n = round(float(steps[0]))
    if n < 1:
        return None
    scale = np.maximum(1.0, np.abs(phase[1:]))
    if np.all(np.abs(np.diff(phase) - n * math.pi) <= SPACING_TOL * scale):
        return n
    return None


@dataclass(frozen=True, eq=False)
class ArrayConfig:
    """N two-level atoms side-coupled to a waveguide.

    Attributes:
        n_atoms: Number of atoms N (0 is the empty waveguide).
        delta_omega: Detunings δωᵢ from the mean frequency, summing to zero.
        gamma: Decay rates Γᵢ into the waveguide, all positive.
        phase: Propagation phases φᵢ = ω̄xᵢ/v_g, nondecreasing.
        spacing_multiple: n when every step φᵢ₊₁ − φᵢ equals nπ, else None.
        reference_offset: Mean frequency removed from the document values.
    """

    n_atoms: int
    delta_omega: np.ndarray
    gamma: np.ndarray
    phase: np.ndarray
    spacing_multiple: int | None = None
    reference_offset: float = 0.0

    def __post_init__(self) -> None:
        n = self.n_atoms
        if not isinstance(n, (int, np.integer)) or n < 0:
            raise InvalidConfig(f"n_atoms must be a non-negative integer, got {n!r}")
        for name in ("delta_omega", "gamma", "phase"):
            arr = np.asarray(getattr(self, name), dtype=float).copy()
            if arr.shape != (n,):
                raise InvalidConfig(f"{name} must have {n} entries, got {arr.size}")
            if not np.all(np.isfinite(arr)):
                raise InvalidConfig(f"{name} must be finite")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

        mean = float(np.sum(self.delta_omega))
        if abs(mean) > ZERO_MEAN_TOL * max(n, 1):
            raise InvalidConfig(f"delta_omega must sum to zero, sum is {mean:.3g}")
        if np.any(self.gamma <= 0):
            raise InvalidConfig("all decay rates gamma must be positive")
        if np.any(np.diff(self.phase) < 0):
            raise InvalidConfig("phases must be sorted ascending")

        if self.spacing_multiple is not None:
            m = self.spacing_multiple
            if not isinstance(m, (int, np.integer)) or m < 1:
                raise InvalidConfig(f"spacing_multiple must be a positive integer, got {m!r}")
            scale = np.maximum(1.0, np.abs(self.phase[1:]))
            if np.any(np.abs(np.diff(self.phase) - m * math.pi) > SPACING_TOL * scale):
                raise InvalidConfig(f"phase steps are not {m}π")

    # -------------------------------------------------------------------------
    # Constructors
    # -------------------------------------------------------------------------

    @classmethod
    def create(
        cls,
        frequencies: Sequence[float],
        gamma: float | Sequence[float] = 1.0,
        phase: Sequence[float] | None = None,
        spacing_multiple: int | None = None,
        phase0: float = 0.0,
    ) -> ArrayConfig:
        """Build a config from document-frame frequencies, centering them.

        Args:
            frequencies: Atomic detunings in any frame; the mean is moved to reference_offset.
            gamma: One decay rate for all atoms or one per atom.
            phase: Explicit phases. When omitted, phases are phase0 + i·nπ with
                n = spacing_multiple (default 1).
            spacing_multiple: Regular-spacing multiple; inferred from explicit phases if omitted.
            phase0: Phase of the first atom for generated phases.

        Returns:
            A validated ArrayConfig.
        """
        freqs = np.asarray(frequencies, dtype=float)
        n = len(freqs)
        offset = float(np.mean(freqs)) if n else 0.0
        centered = freqs - offset

        gammas = np.full(n, float(gamma)) if np.isscalar(gamma) else np.asarray(gamma, dtype=float)

        if phase is None:
            step = spacing_multiple or 1
            phases = phase0 + step * math.pi * np.arange(n)
            spacing = step
        else:
            phases = np.asarray(phase, dtype=float)
            spacing = spacing_multiple if spacing_multiple is not None else _infer_spacing(phases)

        return cls(
            n_atoms=n,
            delta_omega=centered,
            gamma=gammas,
            phase=phases,
            spacing_multiple=spacing,
            reference_offset=offset,
        )

    @classmethod
    def regular(
        cls,
        frequencies: Sequence[float],
        gamma: float = 1.0,
        spacing_multiple: int = 1,
        phase0: float = 0.0,
    ) -> ArrayConfig:
        """Equal decay rates and phase steps of nπ: the EIT condition."""
        return cls.create(frequencies, gamma=gamma, spacing_multiple=spacing_multiple, phase0=phase0)

    # -------------------------------------------------------------------------
    # Properties
    # -------------------------------------------------------------------------

    @property
    def is_regular(self) -> bool:
        return self.spacing_multiple is not None or self.n_atoms <= 1

    @property
    def equal_decay(self) -> bool:
        if self.n_atoms == 0:
            return True
        return bool(np.all(np.abs(self.gamma - self.gamma[0]) <= EQUAL_DECAY_TOL * self.gamma[0]))

    @property
    def total_decay(self) -> float:
        return float(np.sum(self.gamma))

    @property
    def frequencies(self) -> np.ndarray:
        """Detunings in the document frame."""
        return self.delta_omega + self.reference_offset

    @property
    def spacing_sign(self) -> np.ndarray:
        """(−1)^{(j−1)n} for each atom; the superradiant mode's sign pattern."""
        n = self.spacing_multiple or 0
        return np.where((np.arange(self.n_atoms) * n) % 2 == 0, 1.0, -1.0)

    def require_collective(self) -> float:
        """Check the EIT condition and return the common decay rate Γ."""
        if not self.is_regular:
            raise InvalidConfig("collective modes need phase steps of nπ (spacing_multiple)")
        if not self.equal_decay:
            raise InvalidConfig("collective modes need equal decay rates")
        return float(self.gamma[0]) if self.n_atoms else 1.0


def build_effective_hamiltonian(cfg: ArrayConfig) -> np.ndarray:
    """Markovian single-excitation Hamiltonian after tracing out the waveguide.

    H[i, j] = δωᵢ[i=j] − (i/2)√(ΓᵢΓⱼ)·exp(i|φᵢ − φⱼ|), complex symmetric.
    """
    rates = np.sqrt(np.outer(cfg.gamma, cfg.gamma))
    phases = np.abs(np.subtract.outer(cfg.phase, cfg.phase))
    h = -0.5j * rates * np.exp(1j * phases)
    h[np.diag_indices(cfg.n_atoms)] += cfg.delta_omega
    return h
