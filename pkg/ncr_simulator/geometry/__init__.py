"""
Madrid-grid world, deployment scenarios and UE mobility.
"""

from .geometry_models import (
    MadridGrid, Rect, Sidewalk, NetworkNode, NodeKind, BlockGroup,
    ScenarioId, DeploymentScenario, NcrPlacement, MobilityState
)
from .madrid_grid import build_grid, los_blocked, block_group_for_x
from .scenario_builder import (
    place_nodes, drop_ues, scenario_definition, gnb_position,
    GNB_ID, UE_ID_OFFSET
)
from .mobility import init_mobility, step_mobility
from .scenario_file import load_scenario_file, parse_scenario_text

__all__ = [
    'MadridGrid',
    'Rect',
    'Sidewalk',
    'NetworkNode',
    'NodeKind',
    'BlockGroup',
    'ScenarioId',
    'DeploymentScenario',
    'NcrPlacement',
    'MobilityState',
    'build_grid',
    'los_blocked',
    'block_group_for_x',
    'place_nodes',
    'drop_ues',
    'scenario_definition',
    'gnb_position',
    'GNB_ID',
    'UE_ID_OFFSET',
    'init_mobility',
    'step_mobility',
    'load_scenario_file',
    'parse_scenario_text'
]
