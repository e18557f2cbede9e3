"""Shared test fixtures and builders."""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
import pytest

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from arrayeit.core.config import settings  # noqa: E402
from arrayeit.model.array import ArrayConfig  # noqa: E402

# ---------------------------------------------------------------------------
# Array builders
# ---------------------------------------------------------------------------


def make_ladder(n_atoms: int, spacing: float = 1.0, *, gamma: float = 1.0, spacing_multiple: int = 1) -> ArrayConfig:
    """Equally spaced, zero-mean ladder δωⱼ = spacing·(j − (N−1)/2)."""
    freqs = spacing * (np.arange(n_atoms) - (n_atoms - 1) / 2)
    return ArrayConfig.regular(freqs, gamma=gamma, spacing_multiple=spacing_multiple)


def make_random_config(
    rng: np.random.Generator,
    n_atoms: int,
    *,
    regular: bool = True,
    equal_decay: bool = True,
    width: float = 2.0,
) -> ArrayConfig:
    """Random frequencies in [−width, width]; optionally random Γᵢ and phases."""
    freqs = rng.uniform(-width, width, n_atoms)
    gamma = 1.0 if equal_decay else rng.uniform(0.5, 1.5, n_atoms)
    if regular:
        return ArrayConfig.create(freqs, gamma=gamma, spacing_multiple=int(rng.integers(1, 4)))
    phases = np.cumsum(rng.uniform(0.1, 4.0, n_atoms))
    return ArrayConfig.create(freqs, gamma=gamma, phase=phases)


def make_pair(splitting: float = 0.5) -> ArrayConfig:
    """Two atoms at ±splitting/2."""
    return ArrayConfig.regular([-splitting / 2, splitting / 2])


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------


@pytest.fixture
def rng():
    """Seeded generator so property tests are reproducible."""
    return np.random.default_rng(20240611)


@pytest.fixture
def serial(monkeypatch):
    """Force single-threaded grid evaluation."""
    monkeypatch.setattr(settings, "threads", 1)


@pytest.fixture
def fig4a():
    return ArrayConfig.regular([-0.75, -0.25, 0.25, 0.75])


@pytest.fixture
def fig4b():
    return ArrayConfig.regular([-3.5, -0.25, 0.25, 3.5])


@pytest.fixture
def fig4c():
    return ArrayConfig.regular([-3.75, -1.25, 1.25, 3.75])


@pytest.fixture
def fig4d():
    return ArrayConfig.regular([-0.5, 0.25, 0.25, 0.25])
