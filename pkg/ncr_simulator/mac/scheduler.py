"""
Longest-waiting-first round-robin RB scheduler.
"""

import logging
from typing import Dict, Iterable, List, Optional

from core import settings
from phy.phy_models import Direction
from .mac_models import Bearer, SlotSchedule, TddPattern

logger = logging.getLogger(__name__)

_DEFAULT_PATTERN = TddPattern()


def slot_type(slot: int, pattern: TddPattern = _DEFAULT_PATTERN) -> Direction:
    """Direction of a slot; special slots count as downlink."""
    return pattern.direction(slot)


class _PendingQueue:
    """View of a bearer queue drained by the RBs granted during scheduling."""

    def __init__(self, bearer: Bearer):
        self.bearer = bearer
        self.ue_id = bearer.ue_id
        self._packets = iter(bearer.queue)
        self._arrival = None
        self._remaining = 0
        self._advance()

    def _advance(self) -> None:
        packet = next(self._packets, None)
        if packet is None:
            self._arrival, self._remaining = None, 0
        else:
            self._arrival, self._remaining = packet.arrival_slot, packet.bits

    @property
    def pending(self) -> bool:
        return self._arrival is not None

    def wait(self, slot: int) -> int:
        return slot - self._arrival

    def consume(self, bits: int) -> None:
        while bits > 0 and self.pending:
            take = min(bits, self._remaining)
            self._remaining -= take
            bits -= take
            if self._remaining == 0:
                self._advance()


def rr_schedule(bearers: Iterable[Bearer], slot: int,
                direction: Optional[Direction] = None,
                num_rbs: int = settings.NUM_RBS,
                bits_per_rb: Optional[Dict[int, int]] = None,
                max_wait_slots: int = settings.SCHEDULER_MAX_WAIT_SLOTS) -> SlotSchedule:
    """
    Allocate the RBs of a slot.

    RBs are visited in order; each goes to the direction-matching non-empty
    bearer whose head-of-line packet has waited longest. Waits are counted up
    to ``max_wait_slots``; bearers at the cap are served least recently
    scheduled first, so a bearer that keeps failing its CRC cannot hold the
    carrier. Remaining ties go to the lowest UE id. When ``bits_per_rb`` is
    given, every grant drains that many bits from the bearer's pending
    packets, so a bearer whose backlog is covered stops competing and its
    wait advances to its next packet.

    Args:
        bearers: All bearers of the cell
        slot: Slot index
        direction: Slot direction (derived from the TDD pattern when omitted)
        num_rbs: RBs in the carrier
        bits_per_rb: Estimated bits one RB carries, per UE
        max_wait_slots: Cap on the head-of-line wait used for priority

    Returns:
        SlotSchedule with one entry per RB
    """
    direction = direction or slot_type(slot)
    queues = [_PendingQueue(b) for b in bearers if b.direction is direction and not b.is_empty]
    allocation: List[Optional[int]] = []

    for _ in range(num_rbs):
        live = [q for q in queues if q.pending]
        if not live:
            allocation.append(None)
            continue
        chosen = max(live, key=lambda q: (min(q.wait(slot), max_wait_slots),
                                          slot - q.bearer.last_scheduled_slot, -q.ue_id))
        allocation.append(chosen.ue_id)
        if bits_per_rb:
            chosen.consume(bits_per_rb.get(chosen.ue_id, 0))

    # no RB stays idle while a bearer still has pending data
    assert None not in allocation or not any(q.pending for q in queues)

    granted = set(allocation)
    for queue in queues:
        if queue.ue_id in granted:
            queue.bearer.last_scheduled_slot = slot

    schedule = SlotSchedule(slot=slot, direction=direction, allocation=allocation)
    logger.debug(f"Slot {slot} {direction.value}: {len(schedule.scheduled_ues)} UE(s) scheduled")
    return schedule
