"""Unit conversion utilities using pint.

All internal quantities are stored in units of the reference single-atom
decay rate Γ (Γ = 1). Run configs may give detunings and rates either as
plain numbers (already in units of Γ) or as strings with units, e.g.
``"3 MHz"``, together with the physical value of Γ (``gamma_reference``).

Note: angular units (``rad/s``) are divided by 2π so that ``"18.85 Mrad/s"``
and ``"3 MHz"`` agree; pint treats the radian as dimensionless and would
otherwise equate 1 rad/s with 1 Hz.
"""

import math

import pint

from arrayeit.core.errors import ConfigError

# Create a unit registry (lazily initialized)
_ureg: pint.UnitRegistry | None = None


def get_ureg() -> pint.UnitRegistry:
    """Get the pint unit registry (lazily initialized)."""
    global _ureg
    if _ureg is None:
        _ureg = pint.UnitRegistry()
    return _ureg


def _cycles_per_second(quantity: pint.Quantity, field: str) -> float:
    if not quantity.check("[frequency]"):
        raise ConfigError(field, f"expected a frequency, got '{quantity.units}'")
    value = float(quantity.to("Hz").magnitude)
    if "radian" in str(quantity.units):
        value /= 2 * math.pi
    return value


def parse_quantity(text: str, field: str = "") -> pint.Quantity:
    """Parse a string such as ``"3 MHz"`` into a pint quantity."""
    try:
        return get_ureg().Quantity(text)
    except (pint.errors.UndefinedUnitError, pint.errors.DefinitionSyntaxError, ValueError) as e:
        raise ConfigError(field, f"cannot parse quantity '{text}': {e}") from e


def to_gamma_units(value: float | int | str, gamma_reference: str | None, field: str = "") -> float:
    """Convert a detuning or rate to units of Γ.

    Args:
        value: Plain number (already in units of Γ) or a string with units.
        gamma_reference: Physical value of Γ, e.g. "6 MHz". Required when value has units.
        field: Dotted config path, used in error messages.

    Returns:
        The value in units of Γ.
    """
    if not isinstance(value, str):
        return float(value)
    quantity = parse_quantity(value, field)
    if quantity.dimensionless:
        return float(quantity.to("dimensionless").magnitude)
    if gamma_reference is None:
        raise ConfigError(field, f"'{value}' has units but array.gamma_reference is not set")
    gamma_hz = _cycles_per_second(parse_quantity(gamma_reference, "array.gamma_reference"), "array.gamma_reference")
    if gamma_hz <= 0:
        raise ConfigError("array.gamma_reference", "must be positive")
    return _cycles_per_second(quantity, field) / gamma_hz
