"""
3GPP 3D antenna element radiation pattern.
"""

import numpy as np

from core import settings


def element_gain(theta, phi, omni: bool = False,
                 max_gain_dbi: float = settings.MAX_ELEMENT_GAIN_DBI,
                 beamwidth_deg: float = settings.ELEMENT_BEAMWIDTH_DEG,
                 front_to_back_db: float = settings.FRONT_TO_BACK_DB,
                 side_lobe_db: float = settings.SIDE_LOBE_LEVEL_DB):
    """
    Element gain in dBi for a direction relative to the element boresight.

    Args:
        theta: Elevation offset from boresight in degrees (scalar or array)
        phi: Azimuth offset from boresight in degrees (scalar or array)
        omni: Return the 0 dBi isotropic pattern of a single-antenna UE
        max_gain_dbi: Peak element gain
        beamwidth_deg: 3 dB beamwidth in both cuts
        front_to_back_db: Maximum horizontal attenuation
        side_lobe_db: Maximum vertical attenuation

    Returns:
        Gain in dBi (float for scalar input, array otherwise)
    """
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    if omni:
        gain = np.zeros(np.broadcast(theta, phi).shape)
    else:
        # wrap azimuth to [-180, 180)
        phi = (phi + 180.0) % 360.0 - 180.0
        vertical = -np.minimum(12.0 * (theta / beamwidth_deg) ** 2, side_lobe_db)
        horizontal = -np.minimum(12.0 * (phi / beamwidth_deg) ** 2, front_to_back_db)
        gain = max_gain_dbi - np.minimum(-(vertical + horizontal), front_to_back_db)
    if gain.ndim == 0:
        return float(gain)
    return gain
