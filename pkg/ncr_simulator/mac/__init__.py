"""
TDD frame, traffic, scheduling and the slot engine.
"""

from .mac_models import TddPattern, Packet, Bearer, CbrSource, SlotSchedule
from .scheduler import slot_type, rr_schedule
from .traffic import generate_traffic, create_sources, create_bearers
from .engine import SlotEngine, run_single, run_simulation, run_campaign

__all__ = [
    'TddPattern',
    'Packet',
    'Bearer',
    'CbrSource',
    'SlotSchedule',
    'slot_type',
    'rr_schedule',
    'generate_traffic',
    'create_sources',
    'create_bearers',
    'SlotEngine',
    'run_single',
    'run_simulation',
    'run_campaign'
]
