"""
Data models for antenna panels, beams and codebooks.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Tuple, Dict, Any

import numpy as np

from core import settings


class PanelRole(Enum):
    """Function of a panel on its node."""
    GNB = "gnb"
    BACKHAUL = "backhaul"
    ACCESS = "access"


@dataclass(frozen=True)
class UraPanel:
    """Uniform rectangular array panel with a mechanical orientation."""

    rows: int = settings.PANEL_ROWS
    cols: int = settings.PANEL_COLS
    element_spacing: float = settings.ELEMENT_SPACING_WAVELENGTHS  # wavelengths
    boresight_azimuth: float = 0.0  # degrees, from +x towards +y
    downtilt: float = settings.DOWNTILT_DEG  # degrees, positive points down
    max_element_gain: float = settings.MAX_ELEMENT_GAIN_DBI
    role: PanelRole = PanelRole.GNB

    @property
    def num_elements(self) -> int:
        """Number of antenna elements."""
        return self.rows * self.cols

    @property
    def boresight_elevation(self) -> float:
        """Boresight elevation in degrees (negative of the downtilt)."""
        return -self.downtilt

    @property
    def frame(self) -> np.ndarray:
        """
        Panel frame as rows (forward, horizontal, vertical).

        The horizontal axis points 90 degrees to the left of boresight and
        the vertical axis completes a right-handed frame.
        """
        az = math.radians(self.boresight_azimuth)
        tilt = math.radians(self.downtilt)
        forward = np.array([math.cos(tilt) * math.cos(az),
                            math.cos(tilt) * math.sin(az),
                            -math.sin(tilt)])
        horizontal = np.array([-math.sin(az), math.cos(az), 0.0])
        vertical = np.cross(forward, horizontal)
        return np.vstack([forward, horizontal, vertical])

    @property
    def forward(self) -> np.ndarray:
        """Boresight unit vector in global coordinates."""
        return self.frame[0]

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {
            'rows': self.rows,
            'cols': self.cols,
            'element_spacing': self.element_spacing,
            'boresight_azimuth': self.boresight_azimuth,
            'downtilt': self.downtilt,
            'role': self.role.value,
        }


@dataclass
class Beam:
    """A single codebook beam."""

    index: int
    steering: np.ndarray  # unit-norm weights, length rows*cols
    pointing: Tuple[float, float]  # panel-local (azimuth, elevation) in degrees

    @property
    def norm(self) -> float:
        """Euclidean norm of the weight vector."""
        return float(np.linalg.norm(self.steering))


@dataclass
class Codebook:
    """DFT-grid codebook of a panel."""

    beams: List[Beam] = field(default_factory=list)
    n_az: int = 1
    n_el: int = 1

    def __len__(self) -> int:
        return len(self.beams)

    @property
    def weights(self) -> np.ndarray:
        """Beam weights stacked as a (num_beams, num_elements) matrix."""
        return np.vstack([beam.steering for beam in self.beams])

    def beam(self, index: int) -> Beam:
        """Beam by index."""
        return self.beams[index]
