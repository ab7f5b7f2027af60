"""
TR 38.901 street-canyon (UMi) and macro (UMa) path loss.
"""

import math
from typing import Tuple

from core import settings
from core.exceptions import ChannelError

# Effective environment height used by the breakpoint distance
ENVIRONMENT_HEIGHT_M = 1.0


def _distances(distance_3d: float, heights: Tuple[float, float]) -> Tuple[float, float, float]:
    if not math.isfinite(distance_3d) or distance_3d < 1.0:
        raise ChannelError(f"Distance {distance_3d} m is below the model validity (1 m)")
    h_bs, h_ut = max(heights), min(heights)
    vertical = h_bs - h_ut
    distance_2d = math.sqrt(max(distance_3d ** 2 - vertical ** 2, 0.0))
    return distance_2d, h_bs, h_ut


def breakpoint_distance(fc_ghz: float, h_bs: float, h_ut: float) -> float:
    """Breakpoint distance d'_BP in metres."""
    return (4.0 * (h_bs - ENVIRONMENT_HEIGHT_M) * (h_ut - ENVIRONMENT_HEIGHT_M)
            * fc_ghz * 1e9 / settings.SPEED_OF_LIGHT)


def path_loss_umi(distance_3d: float, fc_ghz: float = settings.CARRIER_FREQUENCY_GHZ,
                  los: bool = True,
                  heights: Tuple[float, float] = (settings.GNB_HEIGHT_M, settings.UE_HEIGHT_M)) -> float:
    """
    UMi street-canyon path loss.

    Args:
        distance_3d: 3D distance in metres (>= 1 m)
        fc_ghz: Carrier frequency in GHz
        los: Line-of-sight state
        heights: Antenna heights of both ends (order irrelevant)

    Returns:
        Path loss in dB; NLOS never below LOS

    Raises:
        ChannelError: If the distance is below 1 m
    """
    distance_2d, h_bs, h_ut = _distances(distance_3d, heights)
    d_bp = breakpoint_distance(fc_ghz, h_bs, h_ut)
    log_fc = 20.0 * math.log10(fc_ghz)
    if distance_2d <= d_bp:
        pl_los = 32.4 + 21.0 * math.log10(distance_3d) + log_fc
    else:
        pl_los = (32.4 + 40.0 * math.log10(distance_3d) + log_fc
                  - 9.5 * math.log10(d_bp ** 2 + (h_bs - h_ut) ** 2))
    if los:
        return pl_los
    pl_nlos = (35.3 * math.log10(distance_3d) + 22.4 + 21.3 * math.log10(fc_ghz)
               - 0.3 * (h_ut - 1.5))
    return max(pl_los, pl_nlos)


def path_loss_uma(distance_3d: float, fc_ghz: float = settings.CARRIER_FREQUENCY_GHZ,
                  los: bool = True,
                  heights: Tuple[float, float] = (settings.GNB_HEIGHT_M, settings.UE_HEIGHT_M)) -> float:
    """UMa path loss; same contract as path_loss_umi."""
    distance_2d, h_bs, h_ut = _distances(distance_3d, heights)
    d_bp = breakpoint_distance(fc_ghz, h_bs, h_ut)
    log_fc = 20.0 * math.log10(fc_ghz)
    if distance_2d <= d_bp:
        pl_los = 28.0 + 22.0 * math.log10(distance_3d) + log_fc
    else:
        pl_los = (28.0 + 40.0 * math.log10(distance_3d) + log_fc
                  - 9.0 * math.log10(d_bp ** 2 + (h_bs - h_ut) ** 2))
    if los:
        return pl_los
    pl_nlos = 13.54 + 39.08 * math.log10(distance_3d) + log_fc - 0.6 * (h_ut - 1.5)
    return max(pl_los, pl_nlos)


# Shadowing standard deviations (dB) per scenario row: (LOS, NLOS)
SHADOWING_STD_DB = {
    "umi": (settings.SHADOWING_STD_LOS_DB, settings.SHADOWING_STD_NLOS_DB),
    "uma": (4.0, 6.0),
}

PATH_LOSS_MODELS = {
    "umi": path_loss_umi,
    "uma": path_loss_uma,
}


def los_probability_umi(distance_2d: float) -> float:
    """Street-canyon LOS probability at a ground distance."""
    if distance_2d <= 18.0:
        return 1.0
    return 18.0 / distance_2d + math.exp(-distance_2d / 36.0) * (1.0 - 18.0 / distance_2d)


def los_probability_uma(distance_2d: float) -> float:
    """Macro LOS probability for UEs at street level."""
    if distance_2d <= 18.0:
        return 1.0
    return 18.0 / distance_2d + math.exp(-distance_2d / 63.0) * (1.0 - 18.0 / distance_2d)


LOS_PROBABILITY_MODELS = {
    "umi": los_probability_umi,
    "uma": los_probability_uma,
}
