"""Multiple electromagnetically induced transparency in waveguide-coupled atom arrays.

This package simulates N two-level atoms side-coupled to a one-dimensional
waveguide: single-photon transmission and reflection, the collective
(superradiant / subradiant) mode picture, complex resonances and their
EIT / ATS classification, and the coherently driven master equation.

Subpackages:
- arrayeit.core: Settings, errors, units and parallel evaluation
- arrayeit.model: Array configuration, collective modes, degenerate reduction
- arrayeit.scattering: Transfer-matrix and closed-form amplitudes, sweeps
- arrayeit.resonances: Poles, residues and window labels
- arrayeit.opensystem: Lindblad steady state, inelastic flux and spectra, dark states
- arrayeit.cli: Command-line runs and figure presets
"""

# Re-export common items for convenience
from arrayeit.core import settings
from arrayeit.model import ArrayConfig, decompose
from arrayeit.opensystem import DriveConfig, drive_point
from arrayeit.resonances import analyze, partial_fractions
from arrayeit.scattering import closed_form, scatter, sweep

__all__ = [
    "settings",
    "ArrayConfig",
    "decompose",
    "DriveConfig",
    "drive_point",
    "analyze",
    "partial_fractions",
    "closed_form",
    "scatter",
    "sweep",
]

__version__ = "0.1.0"
