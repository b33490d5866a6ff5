"""Kinematics and motion planning for a SILS parallel robot with spherical RCM modules."""

from ._core import (
    KinematicsError,
    ParseError,
    ValidationError,
    fk,
    ik,
    profile,
    run_scenario_text,
    validate,
)

__all__ = [
    "KinematicsError",
    "ParseError",
    "ValidationError",
    "fk",
    "ik",
    "profile",
    "run_scenario_text",
    "validate",
]
