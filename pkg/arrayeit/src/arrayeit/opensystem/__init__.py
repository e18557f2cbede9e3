"""Open system - coherently driven arrays beyond the single-photon limit."""

from arrayeit.opensystem.dark import DarkState, dark_state, dark_state_config, dark_state_residuals
from arrayeit.opensystem.master import (
    DensityOperator,
    DriveConfig,
    build_drive_hamiltonian,
    build_liouvillian,
    channel_operators,
    exchange_couplings,
    steady_state,
)
from arrayeit.opensystem.observables import (
    SteadyStateResult,
    drive_point,
    inelastic_flux,
    io_amplitudes,
    lindblad_sweep,
    output_operators,
)
from arrayeit.opensystem.spectrum import InelasticSpectrum, inelastic_spectrum, slowest_decay_rate

__all__ = [
    "DarkState",
    "dark_state",
    "dark_state_config",
    "dark_state_residuals",
    "DensityOperator",
    "DriveConfig",
    "build_drive_hamiltonian",
    "build_liouvillian",
    "channel_operators",
    "exchange_couplings",
    "steady_state",
    "SteadyStateResult",
    "drive_point",
    "inelastic_flux",
    "io_amplitudes",
    "lindblad_sweep",
    "output_operators",
    "InelasticSpectrum",
    "inelastic_spectrum",
    "slowest_decay_rate",
]
