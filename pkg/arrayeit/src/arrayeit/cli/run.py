"""Run a validated config in one of the five modes.

All physics happens in the centered frame; detunings, window centers and pole
real parts are shifted back by the array's reference_offset on output.
"""

from __future__ import annotations

import logging
import math

import numpy as np

from arrayeit.cli.config import RunConfig
from arrayeit.cli.output import ResultTable
from arrayeit.core.errors import InvalidConfig, NearDegenerate, Unsupported
from arrayeit.model.array import ArrayConfig
from arrayeit.model.collective import decompose, decompose_reduced
from arrayeit.model.degenerate import reduce_degenerate
from arrayeit.opensystem.dark import dark_state, dark_state_residuals
from arrayeit.opensystem.master import DriveConfig
from arrayeit.opensystem.observables import drive_point, lindblad_sweep
from arrayeit.resonances.windows import analyze
from arrayeit.scattering.amplitudes import transparency_points
from arrayeit.scattering.sweep import count_dips, sweep

logger = logging.getLogger(__name__)

# Relative tolerance for accepting a frequency ladder as equally spaced
LADDER_TOL = 1e-9


# -----------------------------------------------------------------------------
# Modes
# -----------------------------------------------------------------------------


def run_spectrum(rc: RunConfig, cfg: ArrayConfig, *, threads: int | None = None) -> ResultTable:
    grid = rc.grid.values()
    spectrum = sweep(cfg, grid - cfg.reference_offset, threads=threads)
    table = ResultTable("spectrum", ["delta_k", "t_re", "t_im", "r_re", "r_im", "T", "R"])
    for x, res in zip(grid, spectrum.results, strict=True):
        table.add_row(x, res.t.real, res.t.imag, res.r.real, res.r.imag, res.transmittance, res.reflectance)

    table.summary["n_atoms"] = cfg.n_atoms
    table.summary["dips"] = count_dips(spectrum)
    if cfg.n_atoms > 1 and cfg.is_regular and cfg.equal_decay:
        table.summary["transparency_points"] = list(transparency_points(cfg) + cfg.reference_offset)
    return table


def run_modes(rc: RunConfig, cfg: ArrayConfig, *, threads: int | None = None) -> ResultTable:
    try:
        dec = decompose(cfg)
    except NearDegenerate as exc:
        logger.info("%s; reporting the merged emitter model", exc)
        dec = decompose_reduced(reduce_degenerate(cfg))
    table = ResultTable("modes", ["i", "delta_i", "abs_g", "arg_g"])
    for i, (delta, g) in enumerate(zip(dec.effective_detunings, dec.effective_couplings, strict=True), start=1):
        table.add_row(i, delta + cfg.reference_offset, abs(g), float(np.angle(g)))
    table.summary["n_atoms"] = cfg.n_atoms
    table.summary["emitters"] = dec.n_emitters
    table.summary["superradiant_decay"] = dec.superradiant_decay
    table.summary["windows"] = dec.window_count
    return table


def run_poles(rc: RunConfig, cfg: ArrayConfig, *, threads: int | None = None) -> ResultTable:
    ps = analyze(cfg)
    table = ResultTable("poles", ["re_z", "im_z", "re_a", "im_a"])
    for z, a in zip(ps.poles, ps.residues, strict=True):
        table.add_row(z.real + cfg.reference_offset, z.imag, a.real, a.imag)
    table.summary["n_poles"] = len(ps.poles)
    for k, window in enumerate(ps.window_labels, start=1):
        table.summary[f"window_{k}"] = f"{format(window.center + cfg.reference_offset, '.12g')} {window.label.value}"
    return table


def run_lindblad(rc: RunConfig, cfg: ArrayConfig, *, threads: int | None = None) -> ResultTable:
    grid = rc.grid.values()
    alpha2 = rc.drive.alpha2
    points = lindblad_sweep(cfg, grid - cfg.reference_offset, alpha2, phase=rc.drive.phase, threads=threads)
    table = ResultTable("lindblad", ["delta_k", "T", "R", "F_over_alpha2"])
    for x, res in zip(grid, points, strict=True):
        table.add_row(x, res.transmittance, res.reflectance, res.flux_ratio)
    table.summary["n_atoms"] = cfg.n_atoms
    table.summary["alpha2"] = alpha2
    return table


def _ladder_spacing(cfg: ArrayConfig) -> float:
    steps = np.diff(cfg.delta_omega)
    if steps.size == 0 or np.any(np.abs(steps - steps[0]) > LADDER_TOL * max(1.0, abs(steps[0]))):
        raise InvalidConfig("darkstate mode needs an equally spaced frequency ladder")
    if steps[0] <= 0:
        raise InvalidConfig("darkstate mode needs ascending frequencies")
    return float(steps[0])


def run_darkstate(rc: RunConfig, cfg: ArrayConfig, *, threads: int | None = None) -> ResultTable:
    if cfg.n_atoms not in (2, 4):
        raise Unsupported(f"closed-form dark states exist for N = 2 and 4, got N = {cfg.n_atoms}")
    gamma = cfg.require_collective()
    spacing = _ladder_spacing(cfg)
    alpha2 = rc.drive.alpha2
    if alpha2 <= 0:
        raise InvalidConfig("darkstate mode needs drive.alpha2 > 0")
    rabi = math.sqrt(gamma / 2 * alpha2)
    phase = rc.drive.phase

    ds = dark_state(cfg.n_atoms, spacing, rabi, spacing_multiple=cfg.spacing_multiple or 1, drive_phase=phase)
    dc = DriveConfig.from_intensity(cfg, 0.0, alpha2, phase)
    h_residual, l_residual = dark_state_residuals(ds, dc)
    point = drive_point(cfg, 0.0, alpha2, phase)

    table = ResultTable(
        "darkstate",
        ["n_atoms", "spacing", "rabi", "fidelity", "h_residual", "l_residual", "T", "F"],
    )
    table.add_row(
        cfg.n_atoms,
        spacing,
        rabi,
        ds.fidelity(point.rho),
        h_residual,
        l_residual,
        point.transmittance,
        point.flux,
    )
    table.summary["superradiant_overlap"] = abs(ds.superradiant_overlap())
    table.summary["delta_k"] = cfg.reference_offset
    return table


MODE_RUNNERS = {
    "spectrum": run_spectrum,
    "modes": run_modes,
    "poles": run_poles,
    "lindblad": run_lindblad,
    "darkstate": run_darkstate,
}


def run(rc: RunConfig, *, threads: int | None = None) -> ResultTable:
    """Evaluate rc and return its result table."""
    cfg = rc.array_config()
    logger.debug("running %s for %d atoms", rc.mode, cfg.n_atoms)
    return MODE_RUNNERS[rc.mode](rc, cfg, threads=threads)
