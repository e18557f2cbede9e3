"""EIT / ATS classification of transparency windows.

A window is EIT-type when a narrow resonance sits inside a much wider one and
the two interfere destructively; it is ATS-type when it is simply the gap
between two well-separated resonances.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from arrayeit.core.errors import InvalidConfig
from arrayeit.model.array import ArrayConfig
from arrayeit.resonances.poles import PoleSet, partial_fractions, polynomial_roots

# A pole is "narrow" relative to another when its half-width is below this fraction
DEFAULT_WIDTH_RATIO = 0.5

# Poles whose distance to a window differs by less than this are tied
TIE_TOL = 1e-9


class WindowType(Enum):
    EIT = "EIT"
    ATS = "ATS"
    AMBIGUOUS = "AMBIGUOUS"


@dataclass(frozen=True)
class WindowLabel:
    """One transparency window.

    Attributes:
        center: Detuning where the reflection vanishes.
        label: EIT, ATS or AMBIGUOUS.
        narrow: Index of the pole nearest the window.
        partner: Index of the wide pole (EIT) or of a bracketing pole other than
            narrow (ATS); None when ambiguous.
    """

    center: float
    label: WindowType
    narrow: int
    partner: int | None = None


def window_centers(ps: PoleSet) -> np.ndarray:
    """Real zeros of Σ Aᵢ/(x − Zᵢ), ascending."""
    if ps.residues is None:
        raise InvalidConfig("window classification needs residues; use partial_fractions")
    numerator = np.zeros(len(ps.poles), dtype=complex)
    for i, a in enumerate(ps.residues):
        numerator = numerator + a * np.poly(np.delete(ps.poles, i))
    return np.sort(polynomial_roots(numerator).real)


def _pick(candidates: np.ndarray, widths: np.ndarray, *, widest: bool) -> int:
    order = np.argsort(-widths[candidates] if widest else widths[candidates], kind="stable")
    return int(candidates[order[0]])


def _nearest(center: float, re: np.ndarray, widths: np.ndarray) -> int:
    dist = np.abs(re - center)
    tied = np.flatnonzero(dist <= dist.min() + TIE_TOL)
    return _pick(tied, widths, widest=False)


def _bracket(center: float, re: np.ndarray, widths: np.ndarray) -> tuple[int, int] | None:
    # Poles centred on the window bracket nothing
    left = np.flatnonzero(re < center - TIE_TOL)
    right = np.flatnonzero(re > center + TIE_TOL)
    if not left.size or not right.size:
        return None
    lmax = re[left].max()
    rmin = re[right].min()
    lo = _pick(left[re[left] >= lmax - TIE_TOL], widths, widest=True)
    hi = _pick(right[re[right] <= rmin + TIE_TOL], widths, widest=True)
    return lo, hi


def classify_windows(ps: PoleSet, *, width_ratio: float = DEFAULT_WIDTH_RATIO) -> list[WindowLabel]:
    """Label each transparency window EIT, ATS or AMBIGUOUS.

    EIT: the pole a nearest the window is narrow against some pole b
    (w_a < width_ratio·w_b) and lies within b's half-width
    (|Re a − Re b| < w_b).
    ATS: otherwise, the adjacent poles bracketing the window are separated by
    more than the sum of their half-widths.
    AMBIGUOUS: neither holds.

    Args:
        ps: PoleSet with residues.
        width_ratio: Narrow/wide half-width threshold.

    Returns:
        One WindowLabel per window, ordered by center.
    """
    if len(ps.poles) < 2:
        raise InvalidConfig("window classification needs at least two poles")
    re = ps.poles.real
    widths = ps.half_widths

    labels = []
    for center in window_centers(ps):
        a = _nearest(center, re, widths)
        wide = [
            b
            for b in range(len(re))
            if b != a and widths[a] < width_ratio * widths[b] and abs(re[a] - re[b]) < widths[b]
        ]
        if wide:
            b = max(wide, key=lambda k: widths[k])
            labels.append(WindowLabel(float(center), WindowType.EIT, a, b))
            continue

        pair = _bracket(center, re, widths)
        if pair is not None:
            lo, hi = pair
            if re[hi] - re[lo] > widths[lo] + widths[hi]:
                labels.append(WindowLabel(float(center), WindowType.ATS, a, hi if a != hi else lo))
                continue
        labels.append(WindowLabel(float(center), WindowType.AMBIGUOUS, a))
    return labels


def analyze(cfg: ArrayConfig, *, width_ratio: float = DEFAULT_WIDTH_RATIO) -> PoleSet:
    """Poles, residues and window labels in one pass."""
    ps = partial_fractions(cfg)
    if len(ps.poles) < 2:
        return ps
    return ps.with_windows(classify_windows(ps, width_ratio=width_ratio))
