"""CLI - run configs, figure presets and result files."""

from arrayeit.cli.config import RunConfig, emit_config, list_presets, load_config, load_preset, parse_config
from arrayeit.cli.main import cli, main
from arrayeit.cli.run import run

__all__ = [
    "RunConfig",
    "emit_config",
    "list_presets",
    "load_config",
    "load_preset",
    "parse_config",
    "cli",
    "main",
    "run",
]
