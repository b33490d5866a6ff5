import os
import pathlib

import pytest

import silsrob

POSE = (15, 20, -500, -15, 10, -60)
TIP = (50, -50, -620)
SCENARIOS = pathlib.Path(os.environ.get("SILSROB_SCENARIO_DIR", pathlib.Path(__file__).parents[2] / "scenarios"))


def test_ik_fk_round_trip():
    q = silsrob.ik(POSE, TIP)
    assert q == pytest.approx((3.0889243330538183, -38.86948405885178, 147.76873209766496), abs=1e-10)
    assert silsrob.fk(POSE, q) == pytest.approx(TIP, abs=1e-9)


def test_unreachable_raises():
    with pytest.raises(silsrob.KinematicsError, match="Unreachable"):
        silsrob.ik(POSE, (55.5, -60.4, -504.1))


def test_profile():
    p = silsrob.profile(25)
    assert p["t_total"] == pytest.approx(4.5, abs=1e-12)
    assert silsrob.profile(15)["peak_rate"] == pytest.approx(75 ** 0.5, abs=1e-12)


def test_run_scenario():
    code, csv, err = silsrob.run_scenario_text((SCENARIOS / "reference_scenario.cfg").read_text())
    assert code == 0, err
    lines = csv.splitlines()
    assert lines[0] == "# silsrob-timehistory v1"
    assert len(lines) == 2 + 451


def test_bad_scenario():
    with pytest.raises(silsrob.ParseError):
        silsrob.run_scenario_text("")
    with pytest.raises(silsrob.ValidationError, match="eps_max"):
        silsrob.run_scenario_text("motion = type4\npose = 0,0,-500,0,0,0\nleft.tip = 0,0,-600\neps_max = -5\n")


def test_validate():
    results = silsrob.validate()
    assert results and all(r[3] for r in results)
