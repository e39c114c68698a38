import math
import os
from pathlib import Path

import pytest

import hugperch as hp

RECIPES = Path(os.environ.get("HUGPERCH_RECIPES", Path(__file__).resolve().parents[2] / "recipes"))


def paper_robot():
    k = 1.36e-3 * 180.0 / math.pi
    return hp.RobotGeometry(0.180, [0.195, 0.195], [k, k], 0.325)


def test_range_matches_recipe():
    robot = paper_robot()
    d_min, d_max = hp.diameter_range(robot)
    assert d_min == pytest.approx(0.26373, abs=1e-5)
    assert d_max == pytest.approx(0.47036, abs=1e-5)
    assert hp.diameter_range(hp.load_robot([RECIPES / "robot.cfg"])) == (d_min, d_max)


def test_solve_balances():
    out = hp.solve(paper_robot(), hp.PoleSpec(0.30, 1.0))
    assert out["feasible"]
    assert out["force_residual"] < 1e-9
    assert out["moment_residual"] < 1e-9
    assert out["mu_total"] <= 1.0
    assert len(out["forces"]) == 5


def test_frictionless_pole_is_infeasible():
    out = hp.solve(paper_robot(), hp.PoleSpec(0.30, 0.0))
    assert not out["feasible"]


def test_sweep_and_payload_trend():
    robot = paper_robot()
    rows = hp.sweep(robot, [0.28, 0.33, 0.38], [0.8, 1.2])
    assert len(rows) == 6
    assert rows[0]["max_payload"] >= rows[2]["max_payload"]
    assert rows[1]["max_payload"] >= rows[0]["max_payload"]
    csv = hp.sweep_csv(robot, [0.28, 0.33], [1.0])
    assert csv == hp.sweep_csv(robot, [0.28, 0.33], [1.0])
    assert csv.splitlines()[0].startswith("diameter_m,mu_static,feasible")


def test_payload_smaller_pole_holds_more():
    robot = paper_robot()
    assert hp.max_payload(robot, hp.PoleSpec(0.250, 1.0)) > hp.max_payload(robot, hp.PoleSpec(0.315, 1.0))


def test_predict_recipe_poles():
    poles = hp.load_poles([RECIPES / "static_poles.cfg"])
    rows = hp.predict(paper_robot(), poles)
    assert len(rows) == 15
    assert rows[0]["label"] == "I"


def test_errors_carry_their_kind():
    with pytest.raises(hp.HugperchError, match="DomainError"):
        hp.RobotGeometry(-1.0, [0.1], [1.0], 1.0)
    with pytest.raises(hp.HugperchError, match="GeometryInfeasible"):
        hp.solve(paper_robot(), hp.PoleSpec(2.0, 1.0))


def test_friction_estimators():
    assert hp.mu_from_pull(0.4905, 0.1) == pytest.approx(0.5, abs=1e-12)
    assert hp.mu_from_angle(math.atan(0.5)) == pytest.approx(0.5, abs=1e-12)
    assert hp.mu_from_vertical_tool(5.4905, 0.05, 1000.0, 0.01) == pytest.approx(0.5, abs=1e-12)
    assert "mean,pooled," in hp.friction_csv(RECIPES / "friction_measurements.csv")


def test_analyze_synthetic_flight(tmp_path):
    rate, speed, stop = 240.0, 5.0, 0.025
    dt = 1.0 / rate
    lines = ["# rate_hz=240 mass_kg=0.22", "t,x,y,z,roll,pitch,yaw"]
    x = 0.0
    for k in range(240):
        t = k * dt
        t_rel = t - 48 * dt
        if t_rel <= 0:
            x = speed * t
            pitch = 20.0
        elif t_rel < stop:
            x = speed * 48 * dt + speed * t_rel - 0.5 * speed / stop * t_rel**2
            pitch = 20.0
        else:
            x = speed * 48 * dt + 0.5 * speed * stop
            pitch = min(95.0, 20.0 + 75.0 * (t_rel - stop) / 0.2)
        lines.append(f"{t!r},{x!r},0,1,0,{pitch!r},0")
    path = tmp_path / "flight.csv"
    path.write_text("\n".join(lines) + "\n")
    out = hp.analyze_flight(path)
    assert out["impact_speed"] == pytest.approx(5.0, rel=1e-9)
    assert out["peak_force"] == pytest.approx(0.22 * 200.0, rel=1e-6)
    assert out["success"]
    with pytest.raises(hp.HugperchError, match="NoImpactFound"):
        hp.analyze_flight(path, impact_threshold_g=100.0)
