"""
Constant-bit-rate traffic generation.
"""

import logging
from typing import Dict, Iterable, List, Sequence, Tuple

from core import settings
from phy.phy_models import Direction
from .mac_models import Bearer, CbrSource

logger = logging.getLogger(__name__)

# backlog kept in full-buffer mode; exceeds what 66 RBs at the top MCS carry in a slot
FULL_BUFFER_BACKLOG_BITS = 24 * settings.CBR_PACKET_BITS

BearerKey = Tuple[int, Direction]


def create_sources(ue_ids: Sequence[int], period_slots: int,
                   full_buffer: bool = False) -> List[CbrSource]:
    """One source per UE and direction; arrivals staggered across UEs."""
    sources = []
    for index, ue_id in enumerate(ue_ids):
        for direction in (Direction.DL, Direction.UL):
            sources.append(CbrSource(ue_id=ue_id, direction=direction,
                                     period_slots=period_slots,
                                     offset=index % period_slots,
                                     full_buffer=full_buffer))
    return sources


def create_bearers(ue_ids: Sequence[int]) -> Dict[BearerKey, Bearer]:
    """Empty DL and UL bearer for every UE."""
    return {(ue_id, direction): Bearer(ue_id=ue_id, direction=direction)
            for ue_id in ue_ids for direction in (Direction.DL, Direction.UL)}


def generate_traffic(sources: Iterable[CbrSource], bearers: Dict[BearerKey, Bearer],
                     slot: int) -> Dict[BearerKey, Bearer]:
    """
    Enqueue the packets generated in a slot.

    Each source adds one packet when its period fires; full-buffer sources
    also top their bearer up so that it never runs dry.

    Returns:
        The updated bearer map
    """
    for source in sources:
        key = (source.ue_id, source.direction)
        bearer = bearers.get(key)
        if bearer is None:
            bearer = bearers[key] = Bearer(ue_id=source.ue_id, direction=source.direction)
        if source.fires(slot):
            bearer.enqueue(slot, source.packet_bits)
        if source.full_buffer:
            while bearer.backlog_bits < FULL_BUFFER_BACKLOG_BITS:
                bearer.enqueue(slot, source.packet_bits)
    return bearers
