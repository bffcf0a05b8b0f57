import copy
import logging
from datetime import datetime, timezone

import pytest
import yaml

from wavesim.errors import ConfigError, DomainError
from wavesim.presets import preset_names, preset_scenario
from wavesim.scenario import (load_file, parse_time, resolve, save_file,
                              DEFAULT_PEAK_FRACTION)


@pytest.fixture(autouse=True)
def quiet_resolver(caplog):
    logging.getLogger("wavesim.scenario").setLevel(logging.ERROR)
    yield
    logging.getLogger("wavesim.scenario").setLevel(logging.NOTSET)


@pytest.fixture
def event_doc():
    return preset_scenario("cuba-2016")


class TestParseTime:
    def test_utc_suffix(self):
        t = parse_time("2016-01-17T08:29:25Z")
        assert t == datetime(2016, 1, 17, 8, 29, 25, tzinfo=timezone.utc)

    def test_short_fraction(self):
        t = parse_time("2016-01-17T08:30:25.08+00:00")
        assert t.microsecond == 80000

    def test_naive_becomes_utc(self):
        t = parse_time("2016-01-17T08:29:25")
        assert t.tzinfo == timezone.utc

    def test_datetime_passthrough(self):
        src = datetime(2020, 5, 1, tzinfo=timezone.utc)
        assert parse_time(src) is src

    def test_garbage_rejected(self):
        with pytest.raises(ConfigError):
            parse_time("yesterday at noon")


class TestPresets:
    def test_names(self):
        assert "cuba-2016" in preset_names()
        assert "halfspace-demo" in preset_names()

    def test_unknown(self):
        with pytest.raises(ConfigError):
            preset_scenario("no-such-event")

    def test_deep_copy(self, event_doc):
        event_doc["domain"]["level"] = 99
        assert preset_scenario("cuba-2016")["domain"]["level"] == 0


class TestEventResolution:
    """Frozen end-to-end values for the bundled 2016 event scenario."""

    def test_domain(self, event_doc):
        r = resolve(event_doc)
        assert r.name == "cuba-2016"
        assert r.domain.shape == (64, 64, 32)
        assert r.domain.dt == 0.1
        assert r.domain.n_steps == 1700
        assert r.domain.size_x == pytest.approx(428100.4676, abs=1e-3)
        assert r.domain.size_y == pytest.approx(671021.0859, abs=1e-3)
        assert r.domain.size_z == pytest.approx(120000.0)
        assert r.domain.dz == pytest.approx(3750.0)
        assert r.domain.start_time == datetime(2016, 1, 17, 8, 29, 25,
                                               tzinfo=timezone.utc)

    def test_stability_headroom(self, event_doc):
        r = resolve(event_doc)
        assert r.max_stable_dt == pytest.approx(0.23203125)
        assert r.domain.dt <= r.max_stable_dt
        assert r.max_frequency == pytest.approx(0.05371634, abs=1e-6)

    def test_medium(self, event_doc):
        r = resolve(event_doc)
        assert r.volume.surface_z == pytest.approx(30000.0)
        assert r.volume.shape == (16, 16, 8)
        assert r.parameter_shape == (16, 16, 8)

    def test_source(self, event_doc):
        r = resolve(event_doc)
        gx, gy, gz = r.source.grid_position
        assert gx == pytest.approx(32.7314286, abs=1e-6)
        assert gy == pytest.approx(21.7659906, abs=1e-6)
        assert gz == pytest.approx(9.8666667, abs=1e-6)
        # centroid lands 60.08 s into the run; wavelet delay 1.5 / 0.025
        assert r.source.stf.delay == pytest.approx(60.0)
        assert r.source.peak_time == pytest.approx(60.08)
        assert r.source.stf.peak_frequency == 0.025
        assert r.source.moment[1][1] == pytest.approx(-4.31e16)

    def test_receivers(self, event_doc):
        r = resolve(event_doc)
        assert len(r.receivers) == 8
        names = [rc.name for rc in r.receivers]
        assert names[0] == "CHIV"
        chiv = r.receivers[0]
        assert chiv.depth == pytest.approx(-0.02)  # 20 m altitude
        assert chiv.grid_position[0] == pytest.approx(36.5099221, abs=1e-6)

    def test_sponge_and_run(self, event_doc):
        r = resolve(event_doc)
        assert r.sponge.width == 20
        assert r.sponge.strength == pytest.approx(0.015)
        assert r.sponge.faces["z_min"] is False
        assert r.sponge.faces["z_max"] is True
        assert r.backend == "cpu-serial"
        assert r.precision == "float32"
        assert r.medium_cache is True
        assert r.level == 0


class TestOverrides:
    def test_level_replaces_grid_step_and_duration(self, event_doc):
        r = resolve(event_doc, level=2)
        assert r.level == 2
        assert r.domain.shape == (128, 64, 64)
        assert r.domain.dt == 0.1
        assert r.domain.n_steps == 1700
        assert r.domain.dt <= r.max_stable_dt

    def test_n_steps_override(self, event_doc):
        assert resolve(event_doc, n_steps=50).domain.n_steps == 50

    def test_backend_override(self, event_doc):
        assert resolve(event_doc, backend="cpu-parallel").backend == \
            "cpu-parallel"

    def test_zero_steps_allowed(self, event_doc):
        assert resolve(event_doc, n_steps=0).domain.n_steps == 0


class TestValidation:
    def test_dt_above_stability_limit(self, event_doc):
        event_doc["domain"]["dt"] = 0.5
        with pytest.raises(ConfigError):
            resolve(event_doc)

    def test_unknown_backend(self, event_doc):
        with pytest.raises(ConfigError):
            resolve(event_doc, backend="quantum")

    def test_bad_precision(self, event_doc):
        event_doc["run"]["precision"] = "float16"
        with pytest.raises(ConfigError):
            resolve(event_doc)

    def test_bad_interval(self, event_doc):
        event_doc["run"]["divergence_check_interval"] = 0
        with pytest.raises(ConfigError):
            resolve(event_doc)

    def test_missing_section(self, event_doc):
        del event_doc["source"]
        with pytest.raises(ConfigError):
            resolve(event_doc)

    def test_duplicate_receiver_names(self, event_doc):
        event_doc["receivers"].append(dict(event_doc["receivers"][0]))
        with pytest.raises(ConfigError):
            resolve(event_doc)

    def test_unknown_sponge_face(self, event_doc):
        event_doc["sponge"] = {"faces": {"w_min": True}}
        with pytest.raises(ConfigError):
            resolve(event_doc)

    def test_peak_frequency_above_limit_strict(self, event_doc):
        event_doc["source"]["stf"]["peak_frequency_hz"] = 10.0
        with pytest.raises(ConfigError):
            resolve(event_doc, strict_frequency=True)
        # non-strict only warns
        r = resolve(event_doc)
        assert r.source.stf.peak_frequency == 10.0

    def test_source_outside_domain(self, event_doc):
        event_doc["source"]["location"]["latitude"] = 5.0
        with pytest.raises(DomainError):
            resolve(event_doc)

    def test_neither_grid_nor_level(self, event_doc):
        del event_doc["domain"]["level"]
        with pytest.raises(ConfigError):
            resolve(event_doc)


class TestDefaults:
    def test_peak_frequency_defaults_to_half_limit(self, event_doc):
        del event_doc["source"]["stf"]["peak_frequency_hz"]
        r = resolve(event_doc)
        assert r.source.stf.peak_frequency == pytest.approx(
            DEFAULT_PEAK_FRACTION * r.max_frequency)

    def test_altitude_converts_to_depth(self, event_doc):
        event_doc["receivers"][0]["altitude_m"] = 500.0
        event_doc["receivers"][0].pop("depth_km", None)
        r = resolve(event_doc)
        assert r.receivers[0].depth == pytest.approx(-0.5)


class TestManifest:
    def test_round_trip_is_identity(self, event_doc, tmp_path):
        r1 = resolve(event_doc)
        doc1 = r1.to_dict()
        save_file(tmp_path / "scenario.yaml", doc1)
        doc2 = resolve(load_file(tmp_path / "scenario.yaml")).to_dict()
        assert doc1 == doc2

    def test_round_trip_bytes_stable(self, event_doc, tmp_path):
        doc = resolve(event_doc).to_dict()
        save_file(tmp_path / "a.yaml", doc)
        save_file(tmp_path / "b.yaml", resolve(load_file(tmp_path / "a.yaml")).to_dict())
        assert (tmp_path / "a.yaml").read_bytes() == \
            (tmp_path / "b.yaml").read_bytes()

    def test_manifest_run_info(self, event_doc):
        m = resolve(event_doc).manifest_dict({"wall_time_s": 2.5})
        info = m["run_info"]
        assert info["wall_time_s"] == 2.5
        assert info["max_stable_dt_s"] == pytest.approx(0.23203125)
        assert info["duration_s"] == pytest.approx(170.0)
        # the manifest itself must be loadable yaml
        assert yaml.safe_load(yaml.safe_dump(m)) is not None

    def test_manifest_resolves_again(self, event_doc):
        m = resolve(event_doc).manifest_dict({})
        r2 = resolve(copy.deepcopy(m))
        assert r2.domain.shape == (64, 64, 32)
