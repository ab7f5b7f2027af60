"""
Data models for beam management and UE association.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, Any, List, Optional

from core import settings
from core.exceptions import SweepScheduleError


@dataclass(frozen=True)
class ServingPath:
    """Direct link to the gNB, or a path through one NCR access panel."""

    ncr_id: Optional[int] = None
    panel: Optional[int] = None

    @property
    def is_direct(self) -> bool:
        return self.ncr_id is None

    @property
    def label(self) -> str:
        return "direct" if self.is_direct else f"ncr{self.ncr_id}/p{self.panel}"


DIRECT = ServingPath()


@dataclass
class BeamCandidate:
    """One measured beam: a gNB beam, or an NCR access beam behind its backhaul pair."""

    path: ServingPath
    gnb_beam: int
    access_beam: Optional[int]
    rsrp_dbm: float

    def rank_key(self):
        """Sort key: strongest first, direct before NCR, then lowest ids."""
        return (-self.rsrp_dbm,
                0 if self.path.is_direct else 1,
                self.path.ncr_id or 0,
                self.path.panel or 0,
                self.access_beam or 0,
                self.gnb_beam)


@dataclass
class MeasurementReport:
    """Beam RSRPs a UE reports after an access sweep."""

    ue_id: int
    slot: int
    candidates: List[BeamCandidate] = field(default_factory=list)

    def __post_init__(self):
        if not self.candidates:
            raise ValueError(f"Measurement report of UE {self.ue_id} has no candidates")
        for candidate in self.candidates:
            if not math.isfinite(candidate.rsrp_dbm):
                raise ValueError(f"UE {self.ue_id}: non-finite RSRP reported")

    def best(self) -> BeamCandidate:
        return min(self.candidates, key=BeamCandidate.rank_key)

    def best_direct(self) -> Optional[BeamCandidate]:
        direct = [c for c in self.candidates if c.path.is_direct]
        return min(direct, key=BeamCandidate.rank_key) if direct else None


@dataclass
class Association:
    """Serving path of a UE, valid until the next access sweep."""

    ue_id: int
    path: ServingPath
    gnb_beam: int
    access_beam: Optional[int]
    valid_from: int
    rsrp_dbm: float = float('-inf')

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for the association trace."""
        return {
            'slot': self.valid_from,
            'ue': self.ue_id,
            'path': 'direct' if self.path.is_direct else 'ncr',
            'ncr': '' if self.path.is_direct else self.path.ncr_id,
            'panel': '' if self.path.is_direct else self.path.panel,
            'gnb_beam': self.gnb_beam,
            'access_beam': '' if self.access_beam is None else self.access_beam,
            'rsrp_dbm': self.rsrp_dbm,
        }


@dataclass(frozen=True)
class SweepSchedule:
    """Periods of the backhaul and access beam sweeps, in slots."""

    t_backhaul: int = settings.T_BACKHAUL_SLOTS
    t_access: int = settings.T_ACCESS_SLOTS

    def __post_init__(self):
        if self.t_access < 1 or self.t_backhaul < 1:
            raise SweepScheduleError("Sweep periods must be positive")
        if self.t_backhaul < self.t_access:
            raise SweepScheduleError(
                f"t_backhaul ({self.t_backhaul}) must not be shorter than t_access ({self.t_access})"
            )

    def is_backhaul_slot(self, slot: int) -> bool:
        return slot % self.t_backhaul == 0

    def is_access_slot(self, slot: int) -> bool:
        return slot % self.t_access == 0
