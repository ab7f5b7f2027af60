"""
Large-scale and small-scale channel modeling.
"""

from .channel_models import LargeScaleState, FastFadingState, ChannelLink, pair_key
from .pathloss import path_loss_umi, path_loss_uma
from .fading import (
    fading_sample, shadowing_sample, create_fading_state, doppler_frequency, ShadowingProcess
)
from .channel_generator import ChannelGenerator, channel_matrix

__all__ = [
    'LargeScaleState',
    'FastFadingState',
    'ChannelLink',
    'pair_key',
    'path_loss_umi',
    'path_loss_uma',
    'fading_sample',
    'shadowing_sample',
    'create_fading_state',
    'doppler_frequency',
    'ShadowingProcess',
    'ChannelGenerator',
    'channel_matrix'
]
