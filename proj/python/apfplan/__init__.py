"""Potential-field path planning with circular sampling."""

import json

from ._core import (
    Scenario,
    ScenarioError,
    SingularityError,
    Trajectory,
    field_grid,
    field_sample,
    plan,
    scenario_ids,
)
from . import _core

__all__ = [
    "Scenario",
    "ScenarioError",
    "SingularityError",
    "Trajectory",
    "compare",
    "field_grid",
    "field_sample",
    "load",
    "plan",
    "scenario_document",
    "scenario_ids",
]


def load(source):
    """Built-in scenario id, JSON text, or a dict scenario document."""
    if isinstance(source, dict):
        source = json.dumps(source)
    return Scenario.load(source)


def scenario_document(scenario_id):
    return json.loads(_core.scenario_document(scenario_id))


def compare(scenarios, methods=()):
    return json.loads(_core.compare(list(scenarios), list(methods)))
