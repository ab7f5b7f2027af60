"""
SINR evaluation and link adaptation.
"""

from .phy_models import Direction, SinrBreakdown, RbChannelState, LinkAdaptationState
from .sinr_calculator import useful_power, interference_power, noise_power, sinr, noise_power_per_rb
from .link_adaptation import (
    BlerTable, sinr_to_mcs, outer_loop_update, effective_sinr_db,
    transport_block_bits, draw_crc
)

__all__ = [
    'Direction',
    'SinrBreakdown',
    'RbChannelState',
    'LinkAdaptationState',
    'useful_power',
    'interference_power',
    'noise_power',
    'sinr',
    'noise_power_per_rb',
    'BlerTable',
    'sinr_to_mcs',
    'outer_loop_update',
    'effective_sinr_db',
    'transport_block_bits',
    'draw_crc'
]
