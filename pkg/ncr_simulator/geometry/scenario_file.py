"""
Custom deployments from plain-text key-value files.

Example::

    name = corner_and_side
    ncr.count = 2
    ncr.1.position = 140, 400.1
    ncr.1.access_aims = 60, 410
    ncr.2.position = 340, 400.1
    ncr.2.access_aims = 340, 410; 200, 410

Positions and aim points are ground coordinates (x, y) in metres; several
aim points are separated by ``;`` and give one access panel each.
"""

import logging
from typing import Tuple, List

from core.config_manager import parse_key_value_text
from core.exceptions import ConfigurationError
from .geometry_models import DeploymentScenario, NcrPlacement, ScenarioId

logger = logging.getLogger(__name__)


def _parse_point(text: str) -> Tuple[float, float]:
    parts = [p.strip() for p in text.split(',')]
    if len(parts) != 2:
        raise ConfigurationError(f"Expected 'x, y', got {text!r}")
    return float(parts[0]), float(parts[1])


def parse_scenario_text(text: str) -> DeploymentScenario:
    """
    Parse a custom deployment.

    Args:
        text: Key-value file contents

    Returns:
        DeploymentScenario with id CUSTOM

    Raises:
        ConfigurationError: On missing or malformed entries
    """
    entries = parse_key_value_text(text)
    try:
        count = int(entries.get('ncr.count', '0'))
    except ValueError as e:
        raise ConfigurationError("ncr.count must be an integer") from e

    placements: List[NcrPlacement] = []
    for index in range(1, count + 1):
        position_key = f'ncr.{index}.position'
        aims_key = f'ncr.{index}.access_aims'
        if position_key not in entries or aims_key not in entries:
            raise ConfigurationError(f"NCR {index} needs {position_key} and {aims_key}")
        try:
            position = _parse_point(entries[position_key])
            aims = tuple(_parse_point(p) for p in entries[aims_key].split(';') if p.strip())
        except ValueError as e:
            raise ConfigurationError(f"Malformed coordinates for NCR {index}: {e}") from e
        if not 1 <= len(aims) <= 2:
            raise ConfigurationError(f"NCR {index} needs one or two access aims")
        placements.append(NcrPlacement(position=position, access_aims=aims))

    known = {'name', 'ncr.count'} | {f'ncr.{i}.{k}' for i in range(1, count + 1)
                                      for k in ('position', 'access_aims')}
    for key in entries:
        if key not in known:
            logger.warning(f"Unknown scenario parameter: {key}")

    return DeploymentScenario(id=ScenarioId.CUSTOM, ncr_placements=placements,
                              name=entries.get('name', 'custom'))


def load_scenario_file(path: str) -> DeploymentScenario:
    """Load a custom deployment from disk."""
    try:
        with open(path, 'r', encoding='utf-8') as f:
            text = f.read()
    except OSError as e:
        raise ConfigurationError(f"Cannot read scenario file {path}: {e}") from e
    scenario = parse_scenario_text(text)
    logger.info(f"Loaded custom scenario '{scenario.name}' with {scenario.ncr_count} NCR(s)")
    return scenario
