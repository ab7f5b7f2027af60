"""
URA array responses, DFT codebooks and the combined beamforming gain.

Channel matrices follow the convention H = c * a_rx a_tx^T, so that the
reverse link is exactly the transpose. A beam's weight vector is the
conjugate of the array response towards its pointing direction, which makes
``a^T w`` the Hermitian inner product between the two responses.
"""

import math
import logging
from typing import Optional, Tuple

import numpy as np

from core import settings
from core.exceptions import DimensionMismatchError
from .antenna_models import UraPanel, Beam, Codebook
from .element_pattern import element_gain

logger = logging.getLogger(__name__)


def local_angles(panel: UraPanel, direction) -> Tuple[float, float]:
    """
    Panel-local azimuth and elevation of a global direction.

    Args:
        panel: Panel whose frame is used
        direction: Global 3D direction vector (need not be normalized)

    Returns:
        (azimuth, elevation) in degrees relative to boresight
    """
    vector = np.asarray(direction, dtype=float)
    vector = vector / np.linalg.norm(vector)
    x, y, z = panel.frame @ vector
    azimuth = math.degrees(math.atan2(y, x))
    elevation = math.degrees(math.asin(max(-1.0, min(1.0, z))))
    return azimuth, elevation


def _response_from_uv(panel: UraPanel, u: float, v: float) -> np.ndarray:
    """Array response for direction cosines u (horizontal) and v (vertical)."""
    spacing = 2.0 * math.pi * panel.element_spacing
    cols = np.arange(panel.cols)
    rows = np.arange(panel.rows)
    phase = spacing * (rows[:, None] * v + cols[None, :] * u)
    return np.exp(1j * phase).ravel() / math.sqrt(panel.num_elements)


def steering_vector(panel: UraPanel, az: float, el: float) -> np.ndarray:
    """
    Unit-norm URA response for a panel-local direction.

    Args:
        panel: Antenna panel
        az: Panel-local azimuth in degrees
        el: Panel-local elevation in degrees

    Returns:
        Complex vector of length rows*cols
    """
    az_rad = math.radians(az)
    el_rad = math.radians(el)
    u = math.cos(el_rad) * math.sin(az_rad)
    v = math.sin(el_rad)
    return _response_from_uv(panel, u, v)


def array_response(panel: Optional[UraPanel], direction) -> np.ndarray:
    """
    Response of a panel towards a global direction; ``None`` is a single omni antenna.
    """
    if panel is None:
        return np.ones(1, dtype=complex)
    az, el = local_angles(panel, direction)
    return steering_vector(panel, az, el)


def panel_element_gain_db(panel: Optional[UraPanel], direction) -> float:
    """Element gain of a panel towards a global direction (0 dBi for omni)."""
    if panel is None:
        return element_gain(0.0, 0.0, omni=True)
    az, el = local_angles(panel, direction)
    return element_gain(el, az, max_gain_dbi=panel.max_element_gain)


def build_codebook(panel: UraPanel, n_az: int, n_el: int,
                   az_span: Tuple[float, float] = settings.CODEBOOK_AZ_SPAN_DEG,
                   el_span: Tuple[float, float] = settings.CODEBOOK_EL_SPAN_DEG) -> Codebook:
    """
    Build a DFT-grid codebook over the panel sector.

    Beam centres are spaced uniformly in direction-cosine space, which keeps
    the crossover loss between neighbours constant across the sector.

    Args:
        panel: Antenna panel
        n_az: Beams across azimuth
        n_el: Beams across elevation
        az_span: Sector azimuth limits (degrees, panel-local)
        el_span: Sector elevation limits (degrees, panel-local)

    Returns:
        Codebook with n_az * n_el unit-norm beams, index = el_index * n_az + az_index
    """
    if n_az < 1 or n_el < 1:
        raise ValueError(f"Codebook dimensions must be >= 1, got ({n_az}, {n_el})")

    u_low, u_high = (math.sin(math.radians(a)) for a in az_span)
    v_low, v_high = (math.sin(math.radians(e)) for e in el_span)
    u_centers = u_low + (np.arange(n_az) + 0.5) * (u_high - u_low) / n_az
    v_centers = v_low + (np.arange(n_el) + 0.5) * (v_high - v_low) / n_el

    beams = []
    for el_index, v in enumerate(v_centers):
        elevation = math.degrees(math.asin(v))
        for az_index, u in enumerate(u_centers):
            sin_az = max(-1.0, min(1.0, u / math.cos(math.radians(elevation))))
            azimuth = math.degrees(math.asin(sin_az))
            weights = np.conj(_response_from_uv(panel, float(u), float(v)))
            beams.append(Beam(index=len(beams), steering=weights, pointing=(azimuth, elevation)))

    logger.debug(f"Built {len(beams)}-beam codebook for {panel.role.value} panel")
    return Codebook(beams=beams, n_az=n_az, n_el=n_el)


def beam_gains(codebook: Codebook, response: np.ndarray) -> np.ndarray:
    """
    Beamforming amplitude factor of every codebook beam for an array response.

    Args:
        codebook: Codebook to evaluate
        response: Array response (length rows*cols)

    Returns:
        Complex array of ``a^T w`` per beam
    """
    return codebook.weights @ response


def combined_gain(tx_filter, channel, rx_filter) -> complex:
    """
    Combined effect of precoder, channel and combiner.

    Args:
        tx_filter: Precoder f of length N_t (or N_t x 1)
        channel: Channel matrix H of shape (N_r, N_t)
        rx_filter: Combiner d of length N_r (or 1 x N_r)

    Returns:
        gamma = d H f

    Raises:
        DimensionMismatchError: If the shapes are not conformable
    """
    f = np.asarray(tx_filter).reshape(-1)
    d = np.asarray(rx_filter).reshape(-1)
    h = np.atleast_2d(np.asarray(channel))
    if h.ndim != 2 or h.shape != (d.size, f.size):
        raise DimensionMismatchError(
            f"Cannot combine rx {d.size} x H {np.shape(channel)} x tx {f.size}"
        )
    return complex(d @ h @ f)
