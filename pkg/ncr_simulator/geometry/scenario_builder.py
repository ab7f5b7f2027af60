"""
Node placement for the deployment scenarios and UE drops.
"""

import math
import logging
from typing import List, Dict, Optional, Tuple

import numpy as np

from core import settings
from core.exceptions import GeometryError
from antenna.antenna_models import UraPanel, PanelRole
from utils.helpers import direction_angles, unit_vector, angle_between_deg, wrap_angle_deg
from .geometry_models import (
    MadridGrid, NetworkNode, NodeKind, BlockGroup, ScenarioId,
    DeploymentScenario, NcrPlacement
)

logger = logging.getLogger(__name__)

GNB_ID = 0
FIRST_NCR_ID = 1
UE_ID_OFFSET = 1000


def gnb_position(grid: MadridGrid) -> np.ndarray:
    """Macro site: centre of the middle-bottom block's top edge."""
    block = grid.block(0, 1)
    return np.array([(block.x_min + block.x_max) / 2.0,
                     block.y_max + settings.FACADE_OFFSET_M,
                     settings.GNB_HEIGHT_M])


def scenario_definition(scenario_id: ScenarioId, grid: MadridGrid) -> DeploymentScenario:
    """
    NCR placements of a built-in scenario.

    NCRs mount on the street face of the top-row blocks. Access panels aim at
    the top-street centreline point in front of a block centroid. The side-block
    NCRs sit near the inner ends of their blocks.

    Args:
        scenario_id: One of the five built-in scenarios
        grid: Madrid grid

    Returns:
        DeploymentScenario
    """
    face_y = grid.block(2, 1).y_max + settings.FACADE_OFFSET_M
    street_y = grid.top_street_center_y
    left, centre, right = grid.block(2, 0), grid.block(2, 1), grid.block(2, 2)
    inset = settings.SIDE_BLOCK_NCR_INSET_M
    left_aim = (left.center[0], street_y)
    right_aim = (right.center[0], street_y)
    centre_x = centre.center[0]

    placements: Dict[ScenarioId, List[NcrPlacement]] = {
        ScenarioId.S1_BASELINE: [],
        ScenarioId.S2_ONE_NCR_ONE_PANEL: [
            NcrPlacement((centre_x, face_y), ((centre_x, street_y),)),
        ],
        ScenarioId.S3_ONE_NCR_TWO_PANELS: [
            NcrPlacement((centre_x, face_y), (left_aim, right_aim)),
        ],
        ScenarioId.S4_TWO_NCR_CORNERS: [
            NcrPlacement((centre.x_min, face_y), (left_aim,)),
            NcrPlacement((centre.x_max, face_y), (right_aim,)),
        ],
        ScenarioId.S5_TWO_NCR_SIDE_BLOCKS: [
            NcrPlacement((left.x_max - inset, face_y), (left_aim,)),
            NcrPlacement((right.x_min + inset, face_y), (right_aim,)),
        ],
    }
    if scenario_id not in placements:
        raise GeometryError(f"No built-in definition for scenario {scenario_id.value}")
    return DeploymentScenario(id=scenario_id, ncr_placements=placements[scenario_id],
                              name=scenario_id.name.lower())


def separated_access_azimuth(aim_azimuth: float, backhaul: UraPanel,
                             downtilt: float = settings.DOWNTILT_DEG,
                             min_separation: float = settings.MIN_PANEL_SEPARATION_DEG) -> float:
    """
    Access-panel azimuth closest to the aim that keeps the minimum boresight separation.

    Args:
        aim_azimuth: Desired boresight azimuth (degrees)
        backhaul: Backhaul panel of the same NCR
        downtilt: Access-panel downtilt
        min_separation: Minimum 3D angle between the two boresights

    Returns:
        Access boresight azimuth in degrees
    """
    access_forward = unit_vector(aim_azimuth, -downtilt)
    if angle_between_deg(access_forward, backhaul.forward) >= min_separation:
        return aim_azimuth

    el_b = math.radians(backhaul.boresight_elevation)
    el_a = math.radians(-downtilt)
    cos_delta = ((math.cos(math.radians(min_separation)) - math.sin(el_a) * math.sin(el_b)) /
                 (math.cos(el_a) * math.cos(el_b)))
    delta = math.degrees(math.acos(max(-1.0, min(1.0, cos_delta)))) + 1e-6
    side = 1.0 if wrap_angle_deg(aim_azimuth - backhaul.boresight_azimuth) >= 0.0 else -1.0
    adjusted = wrap_angle_deg(backhaul.boresight_azimuth + side * delta)
    logger.debug(f"Access azimuth {aim_azimuth:.1f} rotated to {adjusted:.1f} for panel separation")
    return adjusted


def build_ncr_node(node_id: int, placement: NcrPlacement, gnb_pos: np.ndarray,
                   height: float = settings.NCR_HEIGHT_M,
                   tx_power_dbm: float = settings.NCR_TX_POWER_DBM) -> NetworkNode:
    """
    NCR node with a backhaul panel facing the gNB and one access panel per aim point.
    """
    position = np.array([placement.position[0], placement.position[1], height])
    to_gnb = gnb_pos - position
    bh_az, bh_el = direction_angles(to_gnb)
    backhaul = UraPanel(boresight_azimuth=bh_az, downtilt=-bh_el, role=PanelRole.BACKHAUL)

    access_panels = []
    for aim in placement.access_aims:
        aim_az, _ = direction_angles((aim[0] - position[0], aim[1] - position[1], 0.0))
        azimuth = separated_access_azimuth(aim_az, backhaul)
        access_panels.append(UraPanel(boresight_azimuth=azimuth, downtilt=settings.DOWNTILT_DEG,
                                      role=PanelRole.ACCESS))

    return NetworkNode(id=node_id, kind=NodeKind.NCR, position=position,
                       tx_power_dbm=tx_power_dbm, panels=(backhaul, *access_panels))


def place_nodes(scenario: DeploymentScenario, grid: MadridGrid,
                gnb_tx_power_dbm: float = settings.GNB_TX_POWER_DBM,
                ncr_tx_power_dbm: float = settings.NCR_TX_POWER_DBM) -> List[NetworkNode]:
    """
    Place the gNB and the scenario's NCRs.

    Args:
        scenario: Deployment to realise
        grid: Madrid grid

    Returns:
        Nodes ordered gNB first, then NCRs by id
    """
    if not 0 <= scenario.ncr_count <= 2 and scenario.id is not ScenarioId.CUSTOM:
        raise GeometryError(f"Scenario {scenario.id.value} has {scenario.ncr_count} NCRs")

    gnb_pos = gnb_position(grid)
    gnb_panel = UraPanel(boresight_azimuth=90.0, downtilt=settings.DOWNTILT_DEG, role=PanelRole.GNB)
    nodes = [NetworkNode(id=GNB_ID, kind=NodeKind.GNB, position=gnb_pos,
                         tx_power_dbm=gnb_tx_power_dbm, panels=(gnb_panel,))]

    for offset, placement in enumerate(scenario.ncr_placements):
        if not 1 <= len(placement.access_aims) <= 2:
            raise GeometryError("An NCR needs one or two access panels")
        nodes.append(build_ncr_node(FIRST_NCR_ID + offset, placement, gnb_pos,
                                    tx_power_dbm=ncr_tx_power_dbm))

    logger.info(f"Placed scenario {scenario.id.value}: 1 gNB, {scenario.ncr_count} NCR(s)")
    return nodes


def drop_ues(count: int, grid: MadridGrid, rng_seed: int,
             tx_power_dbm: float = settings.UE_TX_POWER_DBM) -> List[NetworkNode]:
    """
    Drop UEs uniformly over the top-street sidewalks.

    Args:
        count: Number of UEs
        grid: Madrid grid
        rng_seed: Seed of the drop

    Returns:
        UE nodes with ids starting at UE_ID_OFFSET

    Raises:
        GeometryError: If count < 1
    """
    if count < 1:
        raise GeometryError(f"UE count must be positive, got {count}")

    rng = np.random.default_rng([rng_seed, 0xD70])
    walks = grid.top_street_sidewalks
    areas = np.array([walk.rect.area for walk in walks])
    choices = rng.choice(len(walks), size=count, p=areas / areas.sum())
    offsets = rng.random((count, 2))

    ues = []
    for i in range(count):
        walk = walks[choices[i]]
        x = walk.rect.x_min + offsets[i, 0] * walk.rect.width
        y = walk.rect.y_min + offsets[i, 1] * walk.rect.height
        ues.append(NetworkNode(id=UE_ID_OFFSET + i, kind=NodeKind.UE,
                               position=np.array([x, y, settings.UE_HEIGHT_M]),
                               tx_power_dbm=tx_power_dbm, block_group=walk.block_group))

    side = sum(1 for ue in ues if ue.block_group is BlockGroup.SIDE)
    logger.debug(f"Dropped {count} UEs ({side} fronting side blocks)")
    return ues


def nodes_by_kind(nodes: List[NetworkNode], kind: NodeKind) -> List[NetworkNode]:
    """Filter nodes of one kind."""
    return [node for node in nodes if node.kind is kind]
