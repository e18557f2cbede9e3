"""Scattering - exact single-photon transmission and reflection."""

from arrayeit.scattering.amplitudes import (
    ScatteringResult,
    cleared_amplitudes,
    closed_form,
    green_function_amplitudes,
    transparency_points,
)
from arrayeit.scattering.sweep import SpectrumSweep, count_dips, default_grid, sweep
from arrayeit.scattering.transfer import TransferState, propagate, scatter, single_site_matrices

__all__ = [
    "ScatteringResult",
    "cleared_amplitudes",
    "closed_form",
    "green_function_amplitudes",
    "transparency_points",
    "SpectrumSweep",
    "count_dips",
    "default_grid",
    "sweep",
    "TransferState",
    "propagate",
    "scatter",
    "single_site_matrices",
]
