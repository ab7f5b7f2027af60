"""
Madrid-grid construction and geometric line-of-sight queries.

Coordinates are right-handed with x along the top street and z up. Blocks
are indexed ``row * 3 + col`` with row 0 at the bottom. The top street runs
along the north face of the top row, lined by one sidewalk on each side; the
macro site sits on the middle-bottom block, two rows of buildings away.
"""

import logging
from typing import List

import numpy as np

from core import settings
from core.exceptions import GeometryError
from .geometry_models import MadridGrid, Rect, Sidewalk, BlockGroup

logger = logging.getLogger(__name__)

GRID_ROWS = 3
GRID_COLS = 3
TOP_STREET_ROW = GRID_ROWS - 1  # the top street runs along this row's north face


def _group_for_col(col: int) -> BlockGroup:
    return BlockGroup.CENTRAL if col == 1 else BlockGroup.SIDE


def build_grid(block_size: float = settings.BLOCK_SIZE_M,
               sidewalk_width: float = settings.SIDEWALK_WIDTH_M,
               street_width: float = settings.STREET_WIDTH_M,
               building_height: float = settings.BUILDING_HEIGHT_M) -> MadridGrid:
    """
    Build the nine-block grid.

    Sidewalks line every block edge facing an interior street. The top
    street adds a corridor north of the top row whose far sidewalk fronts
    no building; it is attributed to the block across the street.

    Returns:
        MadridGrid (deterministic)
    """
    pitch = block_size + 2.0 * sidewalk_width + street_width
    extent = GRID_COLS * block_size + (GRID_COLS - 1) * (2.0 * sidewalk_width + street_width)

    blocks: List[Rect] = []
    for row in range(GRID_ROWS):
        for col in range(GRID_COLS):
            x0, y0 = col * pitch, row * pitch
            blocks.append(Rect(x0, y0, x0 + block_size, y0 + block_size))

    sidewalks: List[Sidewalk] = []
    top_street: List[Sidewalk] = []
    for index, block in enumerate(blocks):
        row, col = divmod(index, GRID_COLS)
        group = _group_for_col(col)
        walk = Sidewalk(Rect(block.x_min, block.y_max, block.x_max, block.y_max + sidewalk_width),
                        index, group)
        sidewalks.append(walk)
        if row == TOP_STREET_ROW:
            far_y = block.y_max + sidewalk_width + street_width
            top_street.append(walk)
            top_street.append(Sidewalk(Rect(block.x_min, far_y, block.x_max, far_y + sidewalk_width),
                                        index, group))
        if row > 0:
            sidewalks.append(Sidewalk(
                Rect(block.x_min, block.y_min - sidewalk_width, block.x_max, block.y_min), index, group))
        if col > 0:
            sidewalks.append(Sidewalk(
                Rect(block.x_min - sidewalk_width, block.y_min, block.x_min, block.y_max), index, group))
        if col < GRID_COLS - 1:
            sidewalks.append(Sidewalk(
                Rect(block.x_max, block.y_min, block.x_max + sidewalk_width, block.y_max), index, group))

    streets: List[Rect] = []
    for k in range(1, GRID_ROWS):
        y0 = k * pitch - sidewalk_width - street_width
        streets.append(Rect(0.0, y0, extent, y0 + street_width))
    for k in range(1, GRID_COLS):
        x0 = k * pitch - sidewalk_width - street_width
        streets.append(Rect(x0, 0.0, x0 + street_width, extent))
    top_y = TOP_STREET_ROW * pitch + block_size + sidewalk_width
    streets.append(Rect(0.0, top_y, extent, top_y + street_width))

    grid = MadridGrid(
        blocks=blocks,
        sidewalks=sidewalks,
        streets=streets,
        block_size=block_size,
        sidewalk_width=sidewalk_width,
        street_width=street_width,
        building_height=building_height,
        top_street_sidewalks=top_street,
    )
    logger.debug(f"Built Madrid grid: {len(blocks)} blocks, footprint {grid.width:.0f} m")
    return grid


def _segment_hits_box(a: np.ndarray, b: np.ndarray, low: np.ndarray, high: np.ndarray,
                      eps: float = 1e-9) -> bool:
    """Slab test: does segment a-b pass through the interior of the box?"""
    direction = b - a
    t_enter, t_exit = 0.0, 1.0
    for axis in range(3):
        if abs(direction[axis]) < 1e-15:
            if a[axis] <= low[axis] or a[axis] >= high[axis]:
                return False
            continue
        t0 = (low[axis] - a[axis]) / direction[axis]
        t1 = (high[axis] - a[axis]) / direction[axis]
        if t0 > t1:
            t0, t1 = t1, t0
        t_enter = max(t_enter, t0)
        t_exit = min(t_exit, t1)
        if t_enter >= t_exit - eps:
            return False
    return True


def los_blocked(a, b, grid: MadridGrid) -> bool:
    """
    Check whether the straight segment a-b crosses any building.

    Buildings are the blocks extruded from the ground to the grid's
    building height. Touching a facade or roof does not block.

    Args:
        a: First 3D point
        b: Second 3D point
        grid: Madrid grid

    Returns:
        True if the segment passes through a building volume

    Raises:
        GeometryError: If a and b coincide
    """
    p = np.asarray(a, dtype=float)
    q = np.asarray(b, dtype=float)
    if np.allclose(p, q):
        raise GeometryError("LOS query between coincident points")
    # canonical order keeps the result exactly symmetric
    if tuple(q) < tuple(p):
        p, q = q, p
    for block in grid.blocks:
        low = np.array([block.x_min, block.y_min, 0.0])
        high = np.array([block.x_max, block.y_max, grid.building_height])
        if _segment_hits_box(p, q, low, high):
            return True
    return False


def block_group_for_x(grid: MadridGrid, x: float) -> BlockGroup:
    """Block group of the block whose x-range contains x."""
    for col in range(GRID_COLS):
        block = grid.block(0, col)
        if block.x_min <= x <= block.x_max:
            return _group_for_col(col)
    return BlockGroup.NONE
