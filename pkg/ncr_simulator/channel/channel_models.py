"""
Data models for per-link channel state.
"""

import math
from dataclasses import dataclass, field
from typing import Optional, Tuple, Dict, Any

import numpy as np

from core import settings
from antenna.antenna_models import UraPanel

# (tx node, tx panel, rx node, rx panel); panel None is a single omni antenna
LinkKey = Tuple[int, Optional[int], int, Optional[int]]


def pair_key(a: int, b: int) -> Tuple[int, int]:
    """Unordered node pair shared by both directions of a link."""
    return (a, b) if a <= b else (b, a)


@dataclass
class LargeScaleState:
    """Path loss, shadowing and LOS state of a node pair."""

    path_loss: float  # dB
    shadowing: float  # dB
    los: bool
    distance_3d: float  # metres

    @property
    def total_loss_db(self) -> float:
        return self.path_loss + self.shadowing

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {
            'path_loss_db': self.path_loss,
            'shadowing_db': self.shadowing,
            'los': self.los,
            'distance_3d_m': self.distance_3d,
        }


@dataclass
class FastFadingState:
    """
    Sum-of-sinusoids Rician/Rayleigh process of a node pair.

    The specular part carries K/(K+1) of the power; the diffuse part is the
    sum of equal-power scatterers with uniform arrival angles (Jakes
    spectrum) and exponentially distributed excess delays.
    """

    k_factor: float  # linear, math.inf for a pure specular channel
    doppler_hz: float
    specular_cos: float
    specular_phase: float
    scatter_cos: np.ndarray
    scatter_phase: np.ndarray
    scatter_delay: np.ndarray  # seconds
    rb_bandwidth_hz: float = settings.SUBCARRIERS_PER_RB * settings.SUBCARRIER_SPACING_HZ
    slot_duration_s: float = settings.SLOT_DURATION_S

    @property
    def specular_weight(self) -> float:
        if math.isinf(self.k_factor):
            return 1.0
        return math.sqrt(self.k_factor / (self.k_factor + 1.0))

    @property
    def diffuse_weight(self) -> float:
        if math.isinf(self.k_factor):
            return 0.0
        return math.sqrt(1.0 / (self.k_factor + 1.0))

    def coefficients(self, slots, rbs) -> np.ndarray:
        """
        Complex fading coefficients.

        Args:
            slots: Slot indices (scalar or 1-D)
            rbs: RB indices (scalar or 1-D)

        Returns:
            Array of shape (len(slots), len(rbs))
        """
        t = np.atleast_1d(np.asarray(slots, dtype=float)) * self.slot_duration_s
        f = np.atleast_1d(np.asarray(rbs, dtype=float)) * self.rb_bandwidth_hz
        two_pi_fd = 2.0 * math.pi * self.doppler_hz

        specular = np.exp(1j * (two_pi_fd * self.specular_cos * t + self.specular_phase))
        h = self.specular_weight * specular[:, None] * np.ones((1, f.size))
        if self.diffuse_weight > 0.0:
            time_phase = two_pi_fd * np.outer(t, self.scatter_cos) + self.scatter_phase  # (T, M)
            freq_phase = -2.0 * math.pi * np.outer(self.scatter_delay, f)  # (M, F)
            diffuse = np.exp(1j * time_phase) @ np.exp(1j * freq_phase)
            h = h + self.diffuse_weight * diffuse / math.sqrt(self.scatter_cos.size)
        return h


@dataclass
class ChannelLink:
    """Directional view of a node pair between two specific panels."""

    tx_id: int
    rx_id: int
    tx_panel: Optional[UraPanel]
    rx_panel: Optional[UraPanel]
    large_scale: LargeScaleState
    fading: FastFadingState
    tx_response: np.ndarray
    rx_response: np.ndarray
    tx_element_gain_db: float = 0.0
    rx_element_gain_db: float = 0.0
    tx_panel_index: Optional[int] = None
    rx_panel_index: Optional[int] = None
    epoch: int = 0
    tx_factors: Optional[np.ndarray] = field(default=None, repr=False)
    rx_factors: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def key(self) -> LinkKey:
        return (self.tx_id, self.tx_panel_index, self.rx_id, self.rx_panel_index)

    @property
    def pair(self) -> Tuple[int, int]:
        return pair_key(self.tx_id, self.rx_id)

    @property
    def shape(self) -> Tuple[int, int]:
        """(N_r, N_t)."""
        return (self.rx_response.size, self.tx_response.size)

    @property
    def amplitude(self) -> float:
        """Linear amplitude of path loss, shadowing and both element gains."""
        gain_db = (self.tx_element_gain_db + self.rx_element_gain_db
                   - self.large_scale.total_loss_db)
        return 10.0 ** (gain_db / 20.0)

    @property
    def large_scale_gain(self) -> float:
        """Linear power gain expected per antenna pair."""
        return self.amplitude ** 2

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for the channel trace."""
        row = {
            'tx': self.tx_id,
            'tx_panel': '' if self.tx_panel_index is None else self.tx_panel_index,
            'rx': self.rx_id,
            'rx_panel': '' if self.rx_panel_index is None else self.rx_panel_index,
            'tx_element_gain_db': self.tx_element_gain_db,
            'rx_element_gain_db': self.rx_element_gain_db,
            'epoch': self.epoch,
        }
        row.update(self.large_scale.to_dict())
        return row
