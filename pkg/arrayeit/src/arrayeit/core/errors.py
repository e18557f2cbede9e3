"""Exception hierarchy for arrayeit.

``ConfigError`` and ``InvalidConfig`` describe bad input (CLI exit code 2);
every ``NumericalError`` describes a computation that cannot produce a
trustworthy answer for valid input (CLI exit code 3).
"""

from __future__ import annotations

import numpy as np


class ArrayEITError(Exception):
    """Base class for all arrayeit errors."""


class InvalidConfig(ArrayEITError, ValueError):
    """A physical configuration violates its invariants or an operation's preconditions."""


class ConfigError(ArrayEITError):
    """A run-config document failed schema validation."""

    def __init__(self, path: str, reason: str):
        self.path = path
        self.reason = reason
        super().__init__(f"{path}: {reason}" if path else reason)


# =============================================================================
# Numerical failures
# =============================================================================


class NumericalError(ArrayEITError):
    """Base class for failures of a computation on valid input."""


class NearDegenerate(NumericalError):
    """Two atomic frequencies are too close for the subradiant diagonalization."""

    def __init__(self, pair: tuple[int, int], gap: float):
        self.pair = pair
        self.gap = gap
        super().__init__(
            f"atoms {pair[0] + 1} and {pair[1] + 1} differ by {gap:.3g}; use reduce_degenerate"
        )


class OnAtomResonance(NumericalError):
    """The probe sits on a bare atomic frequency where the site matrix diverges."""

    def __init__(self, site: int, delta_k: float):
        self.site = site
        self.delta_k = delta_k
        super().__init__(f"probe detuning {delta_k} is resonant with atom {site + 1}")


class IllConditioned(NumericalError):
    """Two poles nearly coincide, so the simple-pole residues are unreliable."""

    def __init__(self, poles: np.ndarray, pair: tuple[int, int]):
        self.poles = poles
        self.pair = pair
        a, b = poles[pair[0]], poles[pair[1]]
        super().__init__(f"poles {a:.6g} and {b:.6g} are closer than the separation tolerance")


class NonUniqueSteadyState(NumericalError):
    """The Liouvillian kernel has more than one dimension.

    residual is set when the kernel was not measured directly and the failure
    showed up as a solution that does not satisfy L·vec(ρ) = 0.
    """

    def __init__(self, null_dimension: int, residual: float | None = None):
        self.null_dimension = null_dimension
        self.residual = residual
        if residual is None:
            super().__init__(f"Liouvillian null space has dimension {null_dimension}")
        else:
            super().__init__(f"steady-state residual {residual:.3g} exceeds tolerance; kernel is not one-dimensional")


class ZeroDrive(NumericalError):
    """Input-output amplitudes are undefined without a drive."""


class DimensionTooLarge(NumericalError):
    """The Hilbert space is too large for the requested representation."""

    def __init__(self, n_atoms: int, limit: int, what: str = "this operation"):
        self.n_atoms = n_atoms
        self.limit = limit
        super().__init__(f"{n_atoms} atoms exceeds the limit of {limit} for {what}")


class SlowConvergence(NumericalError):
    """The correlation horizon is shorter than the slowest Liouvillian decay time."""

    def __init__(self, slowest_rate: float, tau_max: float):
        self.slowest_rate = slowest_rate
        self.tau_max = tau_max
        super().__init__(
            f"slowest decay rate {slowest_rate:.3g} needs tau_max >= {1 / slowest_rate if slowest_rate > 0 else float('inf'):.3g}, got {tau_max:.3g}"
        )


class Unsupported(NumericalError):
    """No analytic result exists for the requested case."""
