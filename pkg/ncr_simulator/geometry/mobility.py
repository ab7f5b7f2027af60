"""
Pedestrian mobility confined to the top-street sidewalks.

UEs walk at constant speed in straight lines; on reaching a sidewalk edge
they bounce back with a freshly drawn heading pointing into the strip.
"""

import math
import logging
from typing import List

import numpy as np

from core import settings
from .geometry_models import MobilityState, NetworkNode, MadridGrid, region_of

logger = logging.getLogger(__name__)


def init_mobility(ues: List[NetworkNode], grid: MadridGrid, rng_seed: int,
                  speed_kmh: float = settings.UE_SPEED_KMH) -> MobilityState:
    """
    Initial mobility state with uniformly random headings.

    Args:
        ues: Dropped UEs
        grid: Madrid grid
        rng_seed: Seed of the run

    Returns:
        MobilityState owned by the caller
    """
    rng = np.random.default_rng([rng_seed, 0x30B])
    bounce_rng = np.random.default_rng([rng_seed, 0x5E7])
    speed = speed_kmh / 3.6
    headings = rng.uniform(0.0, 2.0 * math.pi, size=len(ues))
    velocities = speed * np.column_stack([np.cos(headings), np.sin(headings)])
    regions = []
    for ue in ues:
        walk = region_of(ue, grid)
        if walk is None:
            raise ValueError(f"UE {ue.id} is outside the top-street sidewalks")
        regions.append(walk.rect)
    positions = np.vstack([ue.position for ue in ues]).astype(float)
    return MobilityState(ue_ids=[ue.id for ue in ues], positions=positions,
                         velocities=velocities, regions=regions, rng=bounce_rng)


def step_mobility(state: MobilityState, dt: float) -> MobilityState:
    """
    Advance all UEs by dt seconds.

    Args:
        state: Current state; only its heading generator advances
        dt: Time step in seconds

    Returns:
        New MobilityState
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")

    positions = state.positions.copy()
    velocities = state.velocities.copy()
    positions[:, :2] += velocities * dt
    speeds = np.linalg.norm(velocities, axis=1)

    for i, rect in enumerate(state.regions):
        bounds = ((rect.x_min, rect.x_max), (rect.y_min, rect.y_max))
        for axis, (low, high) in enumerate(bounds):
            value = positions[i, axis]
            if low <= value <= high:
                continue
            inward = 1.0 if value < low else -1.0
            reflected = 2.0 * low - value if value < low else 2.0 * high - value
            positions[i, axis] = min(max(reflected, low), high)
            # new heading in the half-plane pointing away from the wall
            angle = state.rng.uniform(-math.pi / 2.0, math.pi / 2.0)
            along, across = speeds[i] * math.sin(angle), inward * speeds[i] * math.cos(angle)
            if axis == 0:
                velocities[i] = (across, along)
            else:
                velocities[i] = (along, across)

    return MobilityState(ue_ids=list(state.ue_ids), positions=positions, velocities=velocities,
                         regions=state.regions, travelled=state.travelled + speeds * dt,
                         rng=state.rng)
