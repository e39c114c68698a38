"""Statics, design sweeps and flight analysis for a hugging-wing perching robot.

All quantities are SI: metres, kilograms, newtons, radians (flight angles in
the trajectory files are degrees).
"""

from ._hugperch import (
    GRAVITY,
    HugperchError,
    PoleSpec,
    RobotGeometry,
    analyze_flight,
    diameter_range,
    friction_csv,
    load_poles,
    load_robot,
    max_payload,
    mu_from_angle,
    mu_from_pull,
    mu_from_vertical_tool,
    predict,
    solve,
    sweep,
    sweep_csv,
)

__version__ = "0.1.0"

__all__ = [
    "GRAVITY",
    "HugperchError",
    "PoleSpec",
    "RobotGeometry",
    "analyze_flight",
    "diameter_range",
    "friction_csv",
    "load_poles",
    "load_robot",
    "max_payload",
    "mu_from_angle",
    "mu_from_pull",
    "mu_from_vertical_tool",
    "predict",
    "solve",
    "sweep",
    "sweep_csv",
]
