"""
Antenna panels, element pattern and beam codebooks.
"""

from .antenna_models import UraPanel, Beam, Codebook, PanelRole
from .element_pattern import element_gain
from .beamforming import (
    steering_vector, build_codebook, combined_gain, array_response,
    local_angles, beam_gains, panel_element_gain_db
)

__all__ = [
    'UraPanel',
    'Beam',
    'Codebook',
    'PanelRole',
    'element_gain',
    'steering_vector',
    'build_codebook',
    'combined_gain',
    'array_response',
    'local_angles',
    'beam_gains',
    'panel_element_gain_db'
]
