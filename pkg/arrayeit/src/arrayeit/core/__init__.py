"""Core module - configuration, errors, units and parallel evaluation."""

from arrayeit.core import errors, units
from arrayeit.core.config import Settings, settings
from arrayeit.core.parallel import parallel_map, worker_count
from arrayeit.core.units import get_ureg, to_gamma_units

__all__ = [
    "errors",
    "units",
    "Settings",
    "settings",
    "parallel_map",
    "worker_count",
    "get_ureg",
    "to_gamma_units",
]
