"""Spectra over a detuning grid."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from functools import partial

import numpy as np
from scipy.signal import find_peaks

from arrayeit.core.errors import InvalidConfig
from arrayeit.core.parallel import parallel_map
from arrayeit.model.array import ArrayConfig
from arrayeit.model.degenerate import merge_emitters
from arrayeit.scattering.amplitudes import ScatteringResult, cleared_amplitudes
from arrayeit.scattering.transfer import scatter

logger = logging.getLogger(__name__)

# Resolves the narrowest features of the EIT ladders (widths ~0.05Γ)
DEFAULT_GRID = (-4.0, 4.0, 2001)


def default_grid() -> np.ndarray:
    lo, hi, n = DEFAULT_GRID
    return np.linspace(lo, hi, n)


@dataclass(frozen=True, eq=False)
class SpectrumSweep:
    grid: np.ndarray
    results: list[ScatteringResult]

    @property
    def t(self) -> np.ndarray:
        return np.array([res.t for res in self.results])

    @property
    def r(self) -> np.ndarray:
        return np.array([res.r for res in self.results])

    @property
    def transmittance(self) -> np.ndarray:
        return np.array([res.transmittance for res in self.results])

    @property
    def reflectance(self) -> np.ndarray:
        return np.array([res.reflectance for res in self.results])


def validate_grid(grid: Sequence[float] | np.ndarray) -> np.ndarray:
    values = np.asarray(grid, dtype=float)
    if values.ndim != 1 or values.size == 0:
        raise InvalidConfig("grid must be a non-empty 1-D sequence")
    if np.any(np.diff(values) <= 0):
        raise InvalidConfig("grid must be strictly increasing")
    return values


def sweep(
    cfg: ArrayConfig,
    grid: Sequence[float] | np.ndarray | None = None,
    *,
    threads: int | None = None,
) -> SpectrumSweep:
    """One ScatteringResult per grid point.

    Uses the pole-free closed form when the array is regularly spaced with
    equal decay rates, otherwise the transfer matrix (points evaluated in
    parallel).
    """
    values = default_grid() if grid is None else validate_grid(grid)

    if cfg.is_regular and cfg.equal_decay:
        logger.debug("closed-form sweep over %d points", values.size)
        freqs, decays = merge_emitters(cfg)
        t, r = cleared_amplitudes(values, freqs, decays)
        results = [ScatteringResult.from_amplitudes(x, ti, ri) for x, ti, ri in zip(values, t, r, strict=True)]
    else:
        logger.debug("transfer-matrix sweep over %d points", values.size)
        results = parallel_map(partial(scatter, cfg), values, threads=threads)
    return SpectrumSweep(grid=values, results=results)


def count_dips(spectrum: SpectrumSweep, *, prominence: float = 0.05) -> int:
    """Number of reflectance dips (transparency windows) resolved on the grid."""
    minima, _ = find_peaks(-spectrum.reflectance, prominence=prominence)
    return len(minima)
