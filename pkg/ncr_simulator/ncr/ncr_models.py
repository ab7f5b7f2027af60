"""
Data models for network-controlled repeaters.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, Any, List, Optional, Tuple

import numpy as np

from core import settings
from core.exceptions import GeometryError
from antenna.antenna_models import UraPanel
from geometry.geometry_models import NetworkNode, NodeKind
from utils.helpers import angle_between_deg

BACKHAUL_PANEL = 0


@dataclass
class SideControlInfo:
    """
    Control the gNB sends to an NCR for one slot.

    The forwarding unit follows these fields and nothing else.
    """

    slot: int
    gnb_beam: int  # gNB beam of the backhaul pair
    backhaul_beam: int
    access_panel: np.ndarray  # per RB, index into the node's panels
    access_beam: np.ndarray  # per RB
    forwarding: bool = True
    gain: float = 0.0  # linear power gain applied in this slot

    def beam_on(self, rb: int) -> Tuple[int, int]:
        """(access panel, access beam) used on an RB."""
        return int(self.access_panel[rb]), int(self.access_beam[rb])

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {
            'slot': self.slot,
            'gnb_beam': self.gnb_beam,
            'backhaul_beam': self.backhaul_beam,
            'forwarding': self.forwarding,
            'gain_db': 10.0 * math.log10(self.gain) if self.gain > 0 else float('-inf'),
        }


@dataclass
class NcrNode:
    """An NCR: a mobile-termination part and an amplify-and-forward part."""

    node: NetworkNode
    controlling_gnb: int
    gain_db: float = float('-inf')
    max_gain_db: float = settings.NCR_MAX_GAIN_DB
    backhaul_pair: Optional[Tuple[int, int]] = None  # (gNB beam, backhaul beam)
    side_control: Optional[SideControlInfo] = field(default=None, repr=False)

    def __post_init__(self):
        if self.node.kind is not NodeKind.NCR:
            raise GeometryError(f"Node {self.node.id} is not an NCR")
        if not 1 <= len(self.access_panels) <= 2:
            raise GeometryError(f"NCR {self.id} needs one or two access panels")
        for panel in self.access_panels:
            separation = angle_between_deg(self.backhaul_panel.forward, panel.forward)
            if separation < settings.MIN_PANEL_SEPARATION_DEG - 1e-6:
                raise GeometryError(
                    f"NCR {self.id}: access panel only {separation:.1f} deg from backhaul panel"
                )

    @property
    def id(self) -> int:
        return self.node.id

    @property
    def backhaul_panel(self) -> UraPanel:
        return self.node.panels[BACKHAUL_PANEL]

    @property
    def access_panels(self) -> List[UraPanel]:
        return list(self.node.panels[1:])

    @property
    def access_panel_indices(self) -> List[int]:
        """Indices of the access panels within ``node.panels``."""
        return list(range(1, len(self.node.panels)))

    @property
    def forwarding(self) -> bool:
        return self.side_control is None or self.side_control.forwarding

    @property
    def gain(self) -> float:
        """Linear power gain currently applied (0 when not forwarding)."""
        if not self.forwarding or math.isinf(self.gain_db):
            return 0.0
        return 10.0 ** (self.gain_db / 10.0)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {
            'id': self.id,
            'controlling_gnb': self.controlling_gnb,
            'gain_db': self.gain_db,
            'backhaul_pair': list(self.backhaul_pair) if self.backhaul_pair else None,
            'node': self.node.to_dict(),
        }
