"""CLI entry point for arrayeit.

Usage::

    arrayeit spectrum --preset fig2a                  # T, R over the default grid
    arrayeit modes --config ladder.toml               # subradiant modes and couplings
    arrayeit poles --preset fig4a --format json       # poles, residues, window labels
    arrayeit lindblad --preset fig5a --out fig5a.csv  # driven steady state
    arrayeit darkstate --preset fig5c                 # analytic dark-state check
    arrayeit presets                                  # list shipped presets

Exit codes: 0 success, 2 config error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import logging
import sys

from arrayeit import __version__
from arrayeit.cli.config import MODES, RunConfig, emit_config, list_presets, load_config, load_preset, with_overrides
from arrayeit.cli.output import ResultTable, render, write_atomic
from arrayeit.cli.run import run
from arrayeit.core.config import settings
from arrayeit.core.errors import ConfigError, InvalidConfig, NumericalError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

# -----------------------------------------------------------------------------
# Formatters
# -----------------------------------------------------------------------------


def _print_summary(table: ResultTable, path: str) -> None:
    """Print a short human-readable report after writing a file."""
    print(f"\n{'=' * 56}")
    print(f"  {table.mode} ({len(table.rows)} rows)")
    print(f"{'=' * 56}")
    for key, value in table.summary.items():
        print(f"  {key:<22} {value}")
    print(f"\n  Written to {path}\n")


# -----------------------------------------------------------------------------
# Argument handling
# -----------------------------------------------------------------------------


def parse_grid(text: str) -> dict[str, float | int]:
    """``min:max:points`` to a grid section."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError("grid", f"expected min:max:points, got '{text}'")
    try:
        return {"min": float(parts[0]), "max": float(parts[1]), "points": int(parts[2])}
    except ValueError as e:
        raise ConfigError("grid", f"cannot parse '{text}': {e}") from e


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Load the document and apply command-line overrides."""
    rc = load_preset(args.preset) if args.preset else load_config(args.config)
    output = {}
    if args.out:
        output["path"] = args.out
    if args.format:
        output["format"] = args.format
    return with_overrides(
        rc,
        mode=args.command,
        grid=parse_grid(args.grid) if args.grid else None,
        drive={"alpha2": args.alpha2} if args.alpha2 is not None else None,
        output=output or None,
    )


def cmd_run(args: argparse.Namespace) -> int:
    rc = resolve_config(args)
    table = run(rc, threads=args.threads)
    text = render(table, rc.output.format, version=__version__, config_echo=emit_config(rc))
    if rc.output.path:
        write_atomic(rc.output.path, text)
        _print_summary(table, rc.output.path)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_presets(args: argparse.Namespace) -> int:
    for name in list_presets():
        rc = load_preset(name)
        print(f"  {name:<8} {rc.mode:<10} N={rc.array.n_atoms}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arrayeit",
        description="Multiple-EIT spectra of atom arrays coupled to a waveguide",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  arrayeit spectrum --preset fig2a                 Transmission/reflection spectrum
  arrayeit spectrum --config run.toml --grid=-2:2:801
  arrayeit modes --preset fig2c                    Subradiant modes and couplings
  arrayeit poles --preset fig4b --format json      Poles, residues, EIT/ATS labels
  arrayeit lindblad --preset fig5c --alpha2 0.02   Driven steady state, F/|alpha|^2
  arrayeit darkstate --preset fig5a                Dark-state fidelity and residuals
  arrayeit presets                                 List figure presets

Environment:
  ARRAYEIT_THREADS     worker threads for grid evaluation
  ARRAYEIT_LOG_LEVEL   DEBUG, INFO, WARNING or ERROR
""",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    subparsers = parser.add_subparsers(dest="command", help="Command to run")

    for mode in MODES:
        sub = subparsers.add_parser(mode, help=f"Run in {mode} mode")
        source = sub.add_mutually_exclusive_group(required=True)
        source.add_argument("--config", help="Run-config document (TOML or JSON)")
        source.add_argument("--preset", help="Shipped preset name (see 'arrayeit presets')")
        sub.add_argument("--out", help="Output path (default: stdout)")
        sub.add_argument("--format", choices=["csv", "json"], help="Output format (default: csv)")
        sub.add_argument("--grid", help="Detuning grid as min:max:points")
        sub.add_argument("--alpha2", type=float, help="Drive photon flux |alpha|^2 in units of Gamma")
        sub.add_argument("--threads", type=int, default=None, help="Worker threads (default: ARRAYEIT_THREADS)")
        # SUPPRESS keeps a top-level -v from being reset by the subcommand default
        sub.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS, help="Debug logging")

    subparsers.add_parser("presets", help="List shipped figure presets")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    level = "DEBUG" if getattr(args, "verbose", False) else settings.log_level
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)

    commands = {mode: cmd_run for mode in MODES}
    commands["presets"] = cmd_presets

    if args.command not in commands:
        parser.print_help()
        return EXIT_CONFIG

    try:
        return commands[args.command](args)
    except (ConfigError, InvalidConfig) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_NUMERIC


def cli() -> None:
    """CLI entry point."""
    sys.exit(main())


if __name__ == "__main__":
    cli()
