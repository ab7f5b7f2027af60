"""
Data models for simulation metrics.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, Any, List, Optional, Tuple

from core import settings
from phy.phy_models import Direction


@dataclass(frozen=True)
class SinrSample:
    """SINR of one scheduled UE in one slot, averaged over its RBs."""

    scenario: str
    seed: int
    ue_id: int
    block_group: str  # "central" or "side"
    direction: Direction
    slot: int
    sinr_db: float

    def __post_init__(self):
        if not math.isfinite(self.sinr_db):
            raise ValueError(f"UE {self.ue_id} slot {self.slot}: non-finite SINR sample")

    def to_dict(self) -> Dict[str, Any]:
        """Convert to a CSV row."""
        return {
            'scenario': self.scenario,
            'seed': self.seed,
            'ue': self.ue_id,
            'group': self.block_group,
            'direction': self.direction.value,
            'slot': self.slot,
            'sinr_db': self.sinr_db,
        }


@dataclass
class PercentileEntry:
    """SINR percentiles of one (scenario, direction, group) and their gain over the baseline."""

    scenario: str
    direction: str
    group: str
    values: Dict[float, float]
    deltas: Dict[float, Optional[float]] = field(default_factory=dict)

    @property
    def key(self) -> Tuple[str, str, str]:
        return (self.scenario, self.direction, self.group)


@dataclass
class PercentileReport:
    """Percentile table of all scenarios against a baseline scenario."""

    entries: List[PercentileEntry] = field(default_factory=list)
    percentiles: List[float] = field(default_factory=lambda: list(settings.PERCENTILES))
    baseline: str = "s1"

    def get(self, scenario: str, direction: str, group: str) -> Optional[PercentileEntry]:
        for entry in self.entries:
            if entry.key == (scenario, direction, group):
                return entry
        return None

    def delta(self, scenario: str, direction: str, group: str, q: float) -> Optional[float]:
        entry = self.get(scenario, direction, group)
        return entry.deltas.get(q) if entry else None

    def to_rows(self) -> List[Dict[str, Any]]:
        """Flat rows, one per entry, for CSV export."""
        rows = []
        for entry in self.entries:
            row = {'scenario': entry.scenario, 'direction': entry.direction, 'group': entry.group}
            for q in self.percentiles:
                tag = f"p{int(round(q * 100))}"
                row[f"{tag}_db"] = entry.values[q]
                delta = entry.deltas.get(q)
                row[f"{tag}_delta_db"] = float('nan') if delta is None else delta
            rows.append(row)
        return rows

    @classmethod
    def from_rows(cls, rows: List[Dict[str, Any]], percentiles: List[float],
                  baseline: str = "s1") -> "PercentileReport":
        """Inverse of ``to_rows``."""
        entries = []
        for row in rows:
            values, deltas = {}, {}
            for q in percentiles:
                tag = f"p{int(round(q * 100))}"
                values[q] = float(row[f"{tag}_db"])
                delta = float(row[f"{tag}_delta_db"])
                deltas[q] = None if math.isnan(delta) else delta
            entries.append(PercentileEntry(str(row['scenario']), str(row['direction']),
                                           str(row['group']), values, deltas))
        return cls(entries=entries, percentiles=list(percentiles), baseline=baseline)

    def to_dict(self) -> Dict[str, Any]:
        """Nested dictionary for the JSON summary."""
        return {
            'baseline': self.baseline,
            'percentiles': self.percentiles,
            'entries': [
                {
                    'scenario': e.scenario,
                    'direction': e.direction,
                    'group': e.group,
                    'sinr_db': {str(q): v for q, v in e.values.items()},
                    'delta_db': {str(q): d for q, d in e.deltas.items()},
                }
                for e in self.entries
            ],
        }


@dataclass
class MetricsBundle:
    """Everything collected by the runs of one scenario."""

    scenario: str
    seeds: List[int] = field(default_factory=list)
    samples: List[SinrSample] = field(default_factory=list)
    num_slots: int = 0
    warmup_slots: int = 0
    num_ues: int = 0
    delivered_bits: Dict[str, int] = field(default_factory=lambda: {'DL': 0, 'UL': 0})
    transport_blocks: Dict[str, int] = field(default_factory=lambda: {'DL': 0, 'UL': 0})
    block_errors: Dict[str, int] = field(default_factory=lambda: {'DL': 0, 'UL': 0})
    via_ncr_fractions: List[float] = field(default_factory=list)
    out_of_range_selections: int = 0
    association_trace: List[Dict[str, Any]] = field(default_factory=list)
    channel_trace: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def measured_slots(self) -> int:
        return (self.num_slots - self.warmup_slots) * max(len(self.seeds), 1)

    def throughput_mbps(self, direction: str) -> float:
        """Cell throughput delivered during the measured slots."""
        duration = self.measured_slots * settings.SLOT_DURATION_S
        return self.delivered_bits[direction] / duration / 1e6 if duration > 0 else 0.0

    def bler(self, direction: str) -> float:
        total = self.transport_blocks[direction]
        return self.block_errors[direction] / total if total else 0.0

    @property
    def via_ncr_share(self) -> float:
        """Mean share of UEs associated through an NCR over all access sweeps."""
        if not self.via_ncr_fractions:
            return 0.0
        return sum(self.via_ncr_fractions) / len(self.via_ncr_fractions)

    def merge(self, other: "MetricsBundle") -> "MetricsBundle":
        """Fold another run of the same scenario into this bundle."""
        if other.scenario != self.scenario:
            raise ValueError(f"Cannot merge {other.scenario} into {self.scenario}")
        self.seeds.extend(other.seeds)
        self.samples.extend(other.samples)
        self.num_slots = self.num_slots or other.num_slots
        self.warmup_slots = self.warmup_slots or other.warmup_slots
        self.num_ues = self.num_ues or other.num_ues
        for direction in ('DL', 'UL'):
            self.delivered_bits[direction] += other.delivered_bits[direction]
            self.transport_blocks[direction] += other.transport_blocks[direction]
            self.block_errors[direction] += other.block_errors[direction]
        self.via_ncr_fractions.extend(other.via_ncr_fractions)
        self.out_of_range_selections += other.out_of_range_selections
        self.association_trace.extend(other.association_trace)
        self.channel_trace.extend(other.channel_trace)
        return self

    def summary(self) -> Dict[str, Any]:
        """Key figures of the scenario for the JSON summary."""
        return {
            'scenario': self.scenario,
            'seeds': list(self.seeds),
            'num_slots': self.num_slots,
            'warmup_slots': self.warmup_slots,
            'num_ues': self.num_ues,
            'num_samples': len(self.samples),
            'throughput_mbps': {d: self.throughput_mbps(d) for d in ('DL', 'UL')},
            'bler': {d: self.bler(d) for d in ('DL', 'UL')},
            'via_ncr_share': self.via_ncr_share,
            'out_of_range_selections': self.out_of_range_selections,
        }
