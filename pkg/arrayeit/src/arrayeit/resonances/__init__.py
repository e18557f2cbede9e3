"""Resonances - pole/residue decomposition and EIT/ATS window labels."""

from arrayeit.resonances.poles import (
    PoleSet,
    denominator_polynomial,
    find_poles,
    numerator_polynomial,
    partial_fractions,
    polynomial_roots,
    reconstruct,
)
from arrayeit.resonances.windows import WindowLabel, WindowType, analyze, classify_windows, window_centers

__all__ = [
    "PoleSet",
    "denominator_polynomial",
    "find_poles",
    "numerator_polynomial",
    "partial_fractions",
    "polynomial_roots",
    "reconstruct",
    "WindowLabel",
    "WindowType",
    "analyze",
    "classify_windows",
    "window_centers",
]
