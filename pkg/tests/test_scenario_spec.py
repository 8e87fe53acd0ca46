import json
from pathlib import Path

import numpy as np
import pytest

from catenary_robot.catenary import TensionMode
from catenary_robot.control import GravitySign
from catenary_robot.errors import ScenarioError, TraceIOError, UnknownScenario
from catenary_robot.harness import (
    BUILTIN_DESCRIPTIONS,
    builtin_scenarios,
    get_builtin,
    load_scenario,
    parse_scenario,
    save_scenario,
)
from catenary_robot.harness.scenario import read_scenario_file
from catenary_robot.trajectory import FlowerTrajectory

SCENARIO_DIR = Path(__file__).resolve().parent.parent / "scenarios"


def minimal_document(**updates):
    document = {
        "name": "custom",
        "cable": {"length_m": 2.0, "mass_kg": 0.01},
        "trajectory": {"type": "hover", "params": {"x_c": [0.0, 0.0, 1.0]}},
    }
    document.update(updates)
    return document


@pytest.mark.parametrize("name", sorted(BUILTIN_DESCRIPTIONS))
def test_builtin_matches_shipped_document(name):
    shipped = json.loads((SCENARIO_DIR / f"{name}.json").read_text(encoding="utf-8"))
    assert get_builtin(name).to_document() == shipped


def test_builtin_cables():
    scenarios = builtin_scenarios()
    assert set(scenarios) == set(BUILTIN_DESCRIPTIONS)
    assert scenarios["exp1_flower"].cable_spec().mass == pytest.approx(0.0076)
    assert scenarios["exp1_2_cables"].cable_spec().mass == pytest.approx(0.05639)
    assert scenarios["exp1_2_rope"].cable_spec().mass == pytest.approx(0.00623)
    assert scenarios["exp1_2_steel"].cable_spec().mass == pytest.approx(0.01417)
    assert scenarios["exp2_traverse"].gains.kR == 0.04
    assert scenarios["exp1_flower"].gains.kR == 0.01
    assert scenarios["exp4_transport"].cable_spec().mass == pytest.approx(0.0376)
    for spec in scenarios.values():
        assert spec.cable.length_m == 2.0
        assert spec.sim.duration_s == 30.0


def test_defaults_are_filled():
    spec = parse_scenario(minimal_document())
    assert spec.schema_version == 1
    assert spec.gains.kp == pytest.approx([8.0 * 0.132] * 3)
    assert spec.gains.kOmega == 0.002
    assert spec.modes.tension is TensionMode.CLASSICAL
    assert spec.modes.feedforward
    assert spec.sim.sensing_hz is None

    params = spec.quad_params()
    assert params.f_max == pytest.approx(2.0 * (0.132 + 0.01) * 9.81)
    np.testing.assert_allclose(spec.controller_gains().kv, 4.0 * 0.132 * np.eye(3))


@pytest.mark.parametrize(
    "updates",
    [
        {"cable": {"length_m": 0.0, "mass_kg": 0.01}},
        {"cable": {"length_m": 2.0, "mass_kg": -0.01}},
        {"trajectory": {"type": "spiral"}},
        {"sim": {"dt": 0.01, "control_hz": 500.0}},
        {"sim": {"duration_s": -1.0}},
        {"schema_version": 2},
        {"vehicle": {"inertia_diag": [1.0, 1.0]}},
        {"gains": {"kp": [1.0, 1.0, 1.0], "kv": [1.0, 1.0, 1.0], "kR": 0.0, "kOmega": 0.1}},
        {"modes": {"tension": "exact"}},
        {"colour": "red"},
    ],
)
def test_invalid_documents_are_rejected(updates):
    with pytest.raises(ScenarioError):
        parse_scenario(minimal_document(**updates))


def test_zero_duration_is_accepted():
    spec = parse_scenario(minimal_document(sim={"duration_s": 0.0}))
    assert spec.sim.duration_s == 0.0


def test_overrides_are_revalidated():
    spec = get_builtin("exp1_flower")
    changed = spec.with_overrides(dt=0.0005, duration_s=2.0, tension="sag", feedforward=False,
                                  log_hz=60.0)
    assert changed.sim.dt == 0.0005
    assert changed.sim.duration_s == 2.0
    assert changed.sim.log_hz == 60.0
    assert changed.modes.tension is TensionMode.SAG
    assert not changed.modes.feedforward
    # The original document is unchanged
    assert spec.sim.duration_s == 30.0

    with pytest.raises(ScenarioError):
        spec.with_overrides(dt=0.01)


@pytest.mark.parametrize("tension, gravity", [("paper", "paper"), ("sag", "inverted")])
def test_mode_values_and_aliases(tension, gravity):
    spec = parse_scenario(minimal_document(modes={"tension": tension, "gravity_sign": gravity}))
    assert spec.modes.tension is TensionMode.SAG
    assert spec.modes.gravity_sign is GravitySign.INVERTED
    # Written back with the documented value
    assert spec.to_document()["modes"]["tension"] == "paper"
    assert spec.to_document()["modes"]["gravity_sign"] == "paper"


@pytest.mark.parametrize("suffix", [".json", ".yaml"])
def test_save_and_load_round_trip(tmp_path, suffix):
    spec = get_builtin("exp2_traverse")
    path = save_scenario(spec, tmp_path / f"traverse{suffix}")
    assert load_scenario(path) == spec
    assert load_scenario(str(path)).to_document() == spec.to_document()


def test_load_resolves_builtin_names_and_scenario_dir(tmp_path, monkeypatch):
    assert isinstance(load_scenario("exp1_flower").build_trajectory(), FlowerTrajectory)

    from catenary_robot.utils.config import config
    monkeypatch.setitem(config.paths, "scenario_dir", tmp_path)
    save_scenario(parse_scenario(minimal_document()), tmp_path / "custom.json")
    assert load_scenario("custom.json").name == "custom"


def test_load_unknown_names_and_bad_files(tmp_path):
    with pytest.raises(UnknownScenario):
        load_scenario("exp9_missing")
    with pytest.raises(TraceIOError):
        load_scenario(tmp_path / "absent.json")

    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(ScenarioError):
        read_scenario_file(broken)

    listing = tmp_path / "list.yaml"
    listing.write_text("- 1\n- 2\n", encoding="utf-8")
    with pytest.raises(ScenarioError):
        read_scenario_file(listing)
