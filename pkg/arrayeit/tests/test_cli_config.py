"""Tests for run-config parsing, validation and presets."""

import logging

import pytest

from arrayeit.cli.config import (
    emit_config,
    list_presets,
    load_config,
    load_preset,
    parse_config,
    validate_config,
    with_overrides,
)
from arrayeit.core.errors import ConfigError

MINIMAL = """
mode = "spectrum"

[array]
delta_omega = [-0.25, 0.25]
"""


class TestParseConfig:
    """TOML and JSON documents with defaults filled in."""

    def test_minimal_document(self):
        rc = parse_config(MINIMAL)
        assert rc.mode == "spectrum"
        assert rc.array.n_atoms == 2
        assert rc.array.gamma == 1.0
        assert rc.grid.points == 2001
        assert rc.drive.alpha2 == 0.01
        assert rc.output.format == "csv"

    def test_json_document(self):
        rc = parse_config('{"mode": "modes", "array": {"delta_omega": [-1, 0, 1]}}')
        assert rc.mode == "modes"
        assert rc.array.n_atoms == 3

    def test_mode_is_case_insensitive(self):
        rc = parse_config('{"mode": "POLES", "array": {"delta_omega": [-1, 1]}}')
        assert rc.mode == "poles"

    def test_flat_array_keys_lifted(self):
        rc = parse_config('mode = "spectrum"\ndelta_omega = [-0.5, 0.5]\nspacing_multiple = 2\n')
        assert rc.array.delta_omega == [-0.5, 0.5]
        assert rc.array.spacing_multiple == 2

    def test_n_atoms_alone(self):
        rc = parse_config('{"array": {"n_atoms": 3}}')
        assert rc.array.delta_omega == [0.0, 0.0, 0.0]

    def test_lindblad_preset_document(self):
        rc = load_preset("fig5c")
        assert rc.mode == "lindblad"
        assert rc.drive.alpha2 == pytest.approx(0.04)
        assert rc.grid.min == -1.5
        assert rc.grid.points == 301
        assert rc.array_config().n_atoms == 4

    def test_load_from_file(self, tmp_path):
        path = tmp_path / "run.toml"
        path.write_text(MINIMAL)
        assert load_config(path).array.n_atoms == 2


class TestCentering:
    """Off-center documents are shifted, with the mean kept as reference_offset."""

    def test_warns_and_recenters(self, caplog):
        with caplog.at_level(logging.WARNING, logger="arrayeit.cli.config"):
            rc = parse_config('{"array": {"delta_omega": [-0.5, 0.25, 0.25, 0.25]}}')
        assert "re-centering" in caplog.text
        assert sum(rc.array.delta_omega) == pytest.approx(0.0, abs=1e-12)
        assert rc.array.reference_offset == pytest.approx(0.0625)

    def test_two_atom_shift(self):
        rc = parse_config('{"array": {"delta_omega": [0, 1]}}')
        assert rc.array.delta_omega == pytest.approx([-0.5, 0.5])
        assert rc.array.reference_offset == pytest.approx(0.5)

    def test_array_config_keeps_document_frame(self):
        cfg = load_preset("fig4d").array_config()
        assert cfg.frequencies == pytest.approx([-0.5, 0.25, 0.25, 0.25])
        assert cfg.reference_offset == pytest.approx(0.0625)

    def test_centered_document_is_quiet(self, caplog):
        with caplog.at_level(logging.WARNING, logger="arrayeit.cli.config"):
            parse_config(MINIMAL)
        assert caplog.text == ""


class TestUnits:
    def test_frequencies_with_units(self):
        rc = parse_config(
            '{"array": {"delta_omega": ["-3 MHz", "3 MHz"], "gamma_reference": "6 MHz"}}'
        )
        assert rc.array.delta_omega == pytest.approx([-0.5, 0.5])

    def test_units_need_reference(self):
        with pytest.raises(ConfigError, match="gamma_reference"):
            parse_config('{"array": {"delta_omega": ["-3 MHz", "3 MHz"]}}')


class TestValidationErrors:
    """Errors name the offending field."""

    def test_missing_array(self):
        with pytest.raises(ConfigError) as exc:
            validate_config({"mode": "spectrum"})
        assert exc.value.path == "array"

    def test_unknown_mode(self):
        with pytest.raises(ConfigError) as exc:
            parse_config('{"mode": "fit", "array": {"delta_omega": [0]}}')
        assert exc.value.path == "mode"

    def test_unknown_key(self):
        with pytest.raises(ConfigError) as exc:
            parse_config('{"array": {"delta_omega": [0], "colour": 1}}')
        assert exc.value.path == "array.colour"

    def test_bad_list_entry(self):
        with pytest.raises(ConfigError) as exc:
            parse_config('{"array": {"delta_omega": [0, 1], "phase": [0, "x"]}}')
        assert exc.value.path == "array.phase[1]"

    def test_negative_alpha2(self):
        with pytest.raises(ConfigError) as exc:
            parse_config('{"array": {"delta_omega": [0]}, "drive": {"alpha2": -1}}')
        assert exc.value.path == "drive.alpha2"

    def test_grid_range(self):
        with pytest.raises(ConfigError, match="exceed"):
            parse_config('{"array": {"delta_omega": [0]}, "grid": {"min": 1, "max": -1}}')

    def test_count_mismatch(self):
        with pytest.raises(ConfigError, match="entries"):
            parse_config('{"array": {"n_atoms": 3, "delta_omega": [0, 1]}}')

    def test_duplicate_flat_key(self):
        with pytest.raises(ConfigError) as exc:
            parse_config('{"delta_omega": [0], "array": {"delta_omega": [0]}}')
        assert exc.value.path == "array.delta_omega"

    def test_malformed_toml(self):
        with pytest.raises(ConfigError, match="malformed"):
            parse_config("mode = ")

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="cannot read"):
            load_config(tmp_path / "absent.toml")


class TestRoundTrip:
    @pytest.mark.parametrize("name", ["fig2d", "fig4d", "fig5b"])
    def test_emit_then_parse(self, name):
        rc = load_preset(name)
        assert parse_config(emit_config(rc)) == rc

    def test_overrides(self):
        rc = with_overrides(load_preset("fig2a"), grid={"points": 11}, drive=None, mode="poles")
        assert rc.grid.points == 11
        assert rc.grid.min == -4.0
        assert rc.mode == "poles"


class TestPresets:
    def test_fourteen_presets(self):
        names = list_presets()
        assert len(names) == 14
        assert names[0] == "fig2a"
        assert names[-1] == "fig5c"

    @pytest.mark.parametrize("name", list_presets())
    def test_every_preset_validates(self, name):
        assert load_preset(name).array_config().n_atoms > 0

    def test_unknown_preset(self):
        with pytest.raises(ConfigError, match="unknown preset"):
            load_preset("fig9z")
