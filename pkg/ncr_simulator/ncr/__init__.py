"""
Network-controlled repeater model and its side control.
"""

from .ncr_models import NcrNode, SideControlInfo, BACKHAUL_PANEL
from .repeater import set_gain, forwarded_term, NcrController

__all__ = [
    'NcrNode',
    'SideControlInfo',
    'BACKHAUL_PANEL',
    'set_gain',
    'forwarded_term',
    'NcrController'
]
