"""
Data models for the MAC layer: TDD frame, bearers, traffic sources and schedules.
"""

from collections import deque
from dataclasses import dataclass, field
from typing import Deque, Dict, Any, List, Optional

from core import settings
from phy.phy_models import Direction

# slot kinds of the frame that carry downlink
DOWNLINK_KINDS = ("DL", "S")


@dataclass(frozen=True)
class TddPattern:
    """Cyclic TDD frame; special slots are used as downlink."""

    kinds: tuple = tuple(settings.TDD_PATTERN)

    @property
    def period(self) -> int:
        return len(self.kinds)

    def kind(self, slot: int) -> str:
        """Frame slot kind ("DL", "S" or "UL")."""
        return self.kinds[slot % self.period]

    def direction(self, slot: int) -> Direction:
        return Direction.DL if self.kind(slot) in DOWNLINK_KINDS else Direction.UL

    @property
    def downlink_share(self) -> float:
        return sum(1 for k in self.kinds if k in DOWNLINK_KINDS) / self.period


@dataclass
class Packet:
    """A queued packet; ``bits`` shrinks as parts of it are delivered."""

    arrival_slot: int
    bits: int


@dataclass
class Bearer:
    """FIFO packet queue of one UE in one direction."""

    ue_id: int
    direction: Direction
    queue: Deque[Packet] = field(default_factory=deque)
    delivered_bits: int = 0
    enqueued_packets: int = 0
    last_scheduled_slot: int = -1

    @property
    def backlog_bits(self) -> int:
        return sum(packet.bits for packet in self.queue)

    @property
    def is_empty(self) -> bool:
        return not self.queue

    def head_of_line_wait(self, slot: int) -> int:
        """Slots the oldest queued packet has waited (0 for an empty queue)."""
        return slot - self.queue[0].arrival_slot if self.queue else 0

    def enqueue(self, slot: int, bits: int = settings.CBR_PACKET_BITS) -> None:
        self.queue.append(Packet(arrival_slot=slot, bits=bits))
        self.enqueued_packets += 1

    def drain(self, bits: int) -> int:
        """
        Remove delivered bits from the head of the queue.

        Returns:
            Bits actually removed
        """
        removed = 0
        while self.queue and bits > 0:
            head = self.queue[0]
            take = min(head.bits, bits)
            head.bits -= take
            bits -= take
            removed += take
            if head.bits == 0:
                self.queue.popleft()
        self.delivered_bits += removed
        return removed


@dataclass
class CbrSource:
    """Constant-bit-rate source feeding one bearer."""

    ue_id: int
    direction: Direction
    period_slots: int
    packet_bits: int = settings.CBR_PACKET_BITS
    offset: int = 0
    full_buffer: bool = False

    def __post_init__(self):
        if self.period_slots < 1:
            raise ValueError("CBR period must be at least one slot")

    def fires(self, slot: int) -> bool:
        return slot % self.period_slots == self.offset % self.period_slots


@dataclass
class SlotSchedule:
    """RB allocation of one slot."""

    slot: int
    direction: Direction
    allocation: List[Optional[int]]  # UE id per RB, None when idle

    @property
    def num_rbs(self) -> int:
        return len(self.allocation)

    @property
    def scheduled_ues(self) -> List[int]:
        return sorted({ue for ue in self.allocation if ue is not None})

    def rbs_of(self, ue_id: int) -> List[int]:
        return [rb for rb, ue in enumerate(self.allocation) if ue == ue_id]

    def shares(self) -> Dict[int, int]:
        """Number of RBs per scheduled UE."""
        counts: Dict[int, int] = {}
        for ue in self.allocation:
            if ue is not None:
                counts[ue] = counts.get(ue, 0) + 1
        return counts

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {
            'slot': self.slot,
            'direction': self.direction.value,
            'allocation': list(self.allocation),
        }
