"""
Data models for SINR evaluation and link adaptation.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Any, Optional, Tuple

from core import settings


class Direction(Enum):
    """Transmission direction."""
    DL = "DL"
    UL = "UL"


@dataclass(frozen=True)
class SinrBreakdown:
    """Useful, interference and noise power of one UE on one RB."""

    useful: float
    interference: float
    noise: float
    rb: int
    direction: Direction

    @property
    def sinr(self) -> float:
        return self.useful / (self.interference + self.noise)

    @property
    def sinr_db(self) -> float:
        return 10.0 * math.log10(self.sinr) if self.sinr > 0.0 else float('-inf')

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {
            'rb': self.rb,
            'direction': self.direction.value,
            'useful_w': self.useful,
            'interference_w': self.interference,
            'noise_w': self.noise,
            'sinr_db': self.sinr_db,
        }


@dataclass
class RbChannelState:
    """
    Beamformed link powers on one RB of one slot (linear, |gamma|^2).

    Keys follow the transmitting beam owner: ``direct[(x, y)]`` is the gNB
    to UE y power with the gNB beam of UE x; ``backhaul[(r, x)]`` is the
    gNB to NCR r power with the gNB beam of UE x; ``access[(r, y)]`` is the
    NCR r to UE y power with the access beam r uses on this RB.
    """

    rb: int
    direction: Direction
    scheduled: Dict[int, float]  # UE id -> transmit power of its signal (W)
    direct: Dict[Tuple[int, int], float] = field(default_factory=dict)
    access: Dict[Tuple[int, int], float] = field(default_factory=dict)
    backhaul: Dict[Tuple[int, int], float] = field(default_factory=dict)
    ncr_gain: Dict[int, float] = field(default_factory=dict)
    noise_per_rb: float = 0.0  # W


@dataclass
class LinkAdaptationState:
    """Outer-loop state of one UE bearer."""

    ue_id: int
    offset_db: float = 0.0
    cqi: int = 0
    mcs: int = 0
    target_bler: float = settings.TARGET_BLER
    errors: int = 0
    successes: int = 0
    out_of_range: bool = False
    estimate_db: Optional[float] = None  # last SINR known to the gNB

    @property
    def measured_bler(self) -> float:
        total = self.errors + self.successes
        return self.errors / total if total else 0.0
