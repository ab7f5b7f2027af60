"""
Data models for the Madrid-grid world, network nodes and deployments.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Tuple, Dict, Any, Optional

import numpy as np

from antenna.antenna_models import UraPanel


class NodeKind(Enum):
    """Kind of network node."""
    GNB = "gNB"
    NCR = "NCR"
    UE = "UE"


class BlockGroup(Enum):
    """Block a UE fronts on the top street."""
    CENTRAL = "central"
    SIDE = "side"
    NONE = "none"


class ScenarioId(Enum):
    """Deployment scenarios."""
    S1_BASELINE = "s1"
    S2_ONE_NCR_ONE_PANEL = "s2"
    S3_ONE_NCR_TWO_PANELS = "s3"
    S4_TWO_NCR_CORNERS = "s4"
    S5_TWO_NCR_SIDE_BLOCKS = "s5"
    CUSTOM = "custom"


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle in metres."""

    x_min: float
    y_min: float
    x_max: float
    y_max: float

    @property
    def width(self) -> float:
        return self.x_max - self.x_min

    @property
    def height(self) -> float:
        return self.y_max - self.y_min

    @property
    def area(self) -> float:
        return self.width * self.height

    @property
    def center(self) -> Tuple[float, float]:
        return ((self.x_min + self.x_max) / 2.0, (self.y_min + self.y_max) / 2.0)

    def contains(self, x: float, y: float, tolerance: float = 1e-9) -> bool:
        """Check whether a point lies inside (boundary included)."""
        return (self.x_min - tolerance <= x <= self.x_max + tolerance and
                self.y_min - tolerance <= y <= self.y_max + tolerance)

    def overlaps(self, other: 'Rect') -> bool:
        """Check for an overlap of positive area."""
        return (self.x_min < other.x_max and other.x_min < self.x_max and
                self.y_min < other.y_max and other.y_min < self.y_max)


@dataclass(frozen=True)
class Sidewalk:
    """A sidewalk strip along one block edge."""

    rect: Rect
    block_index: int
    block_group: BlockGroup


@dataclass
class MadridGrid:
    """Nine-block Madrid grid; blocks indexed row * 3 + col, row 0 at the bottom."""

    blocks: List[Rect]
    sidewalks: List[Sidewalk]
    streets: List[Rect]
    block_size: float
    sidewalk_width: float
    street_width: float
    building_height: float
    top_street_sidewalks: List[Sidewalk] = field(default_factory=list)

    @property
    def pitch(self) -> float:
        """Distance between the origins of adjacent blocks."""
        return self.block_size + 2.0 * self.sidewalk_width + self.street_width

    @property
    def width(self) -> float:
        """Footprint width along x."""
        return max(b.x_max for b in self.blocks) - min(b.x_min for b in self.blocks)

    @property
    def top_street_center_y(self) -> float:
        """y coordinate of the top street centreline."""
        return self.block(2, 1).y_max + self.sidewalk_width + self.street_width / 2.0

    def block(self, row: int, col: int) -> Rect:
        """Block at (row, col)."""
        return self.blocks[row * 3 + col]


@dataclass
class NetworkNode:
    """A gNB, NCR or UE."""

    id: int
    kind: NodeKind
    position: np.ndarray  # (x, y, z) metres
    tx_power_dbm: float
    panels: Tuple[UraPanel, ...] = ()
    block_group: BlockGroup = BlockGroup.NONE

    @property
    def height(self) -> float:
        """Antenna height above ground."""
        return float(self.position[2])

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {
            'id': self.id,
            'kind': self.kind.value,
            'position': [float(c) for c in self.position],
            'tx_power_dbm': self.tx_power_dbm,
            'panels': [panel.to_dict() for panel in self.panels],
            'block_group': self.block_group.value,
        }


@dataclass(frozen=True)
class NcrPlacement:
    """Ground position of an NCR and the street points its access panels aim at."""

    position: Tuple[float, float]
    access_aims: Tuple[Tuple[float, float], ...]


@dataclass
class DeploymentScenario:
    """A named NCR deployment."""

    id: ScenarioId
    ncr_placements: List[NcrPlacement] = field(default_factory=list)
    name: str = ""

    @property
    def ncr_count(self) -> int:
        return len(self.ncr_placements)


@dataclass
class MobilityState:
    """Positions and velocities of the UEs, owned by the engine."""

    ue_ids: List[int]
    positions: np.ndarray  # (n, 3)
    velocities: np.ndarray  # (n, 2) m/s
    regions: List[Rect]  # allowed rectangle per UE
    travelled: np.ndarray = None  # (n,) cumulative distance in metres
    rng: Optional[np.random.Generator] = None  # headings drawn at sidewalk edges

    def __post_init__(self):
        if self.travelled is None:
            self.travelled = np.zeros(len(self.ue_ids))
        if self.rng is None:
            self.rng = np.random.default_rng(0x5E7)

    def position_of(self, ue_id: int) -> np.ndarray:
        """Current position of a UE."""
        return self.positions[self.ue_ids.index(ue_id)]

    @property
    def speeds(self) -> np.ndarray:
        return np.linalg.norm(self.velocities, axis=1)


def region_of(node: NetworkNode, grid: MadridGrid) -> Optional[Sidewalk]:
    """Top-street sidewalk containing a UE, if any."""
    x, y = float(node.position[0]), float(node.position[1])
    for sidewalk in grid.top_street_sidewalks:
        if sidewalk.rect.contains(x, y):
            return sidewalk
    return None
