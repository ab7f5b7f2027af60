"""
Beam sweeping and association decisions taken by the gNB.

Backhaul sweeps pick the gNB/NCR beam pair of every repeater; access
sweeps let each UE measure all gNB beams and all NCR access beams it can
hear, and the gNB associates each UE with its strongest candidate.
"""

import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from core import settings
from core.exceptions import SweepScheduleError
from channel.channel_generator import ChannelGenerator
from geometry.geometry_models import NetworkNode
from ncr.ncr_models import NcrNode, BACKHAUL_PANEL
from ncr.repeater import set_gain
from utils.helpers import linear_to_db
from .link_models import (
    BeamCandidate, MeasurementReport, Association, SweepSchedule, ServingPath, DIRECT
)

logger = logging.getLogger(__name__)

GNB_PANEL = 0


def _power_per_rb_dbm(total_dbm: float, num_rbs: int) -> float:
    return total_dbm - float(linear_to_db(num_rbs))


def _rsrp_dbm(power_per_rb_dbm: float, gains: np.ndarray) -> np.ndarray:
    with np.errstate(divide='ignore'):
        return power_per_rb_dbm + 10.0 * np.log10(gains)


def sweep_backhaul(channels: ChannelGenerator, gnb: NetworkNode, ncrs: Sequence[NcrNode],
                   slot: int, schedule: Optional[SweepSchedule] = None) -> Dict[int, Tuple[int, int]]:
    """
    Select the backhaul beam pair of every NCR.

    Args:
        channels: Channel generator of the run
        gnb: Controlling gNB
        ncrs: Repeaters to sweep
        slot: Current slot
        schedule: Sweep periods; when given the slot must be a backhaul slot

    Returns:
        NCR id -> (gNB beam, NCR backhaul beam) maximising |gamma_br|^2,
        ties resolved to the lowest gNB beam, then the lowest NCR beam

    Raises:
        SweepScheduleError: If the slot is not a backhaul sweep instant
    """
    if schedule is not None and not schedule.is_backhaul_slot(slot):
        raise SweepScheduleError(f"Slot {slot} is not a backhaul sweep instant")

    pairs = {}
    for ncr in ncrs:
        link = channels.link(gnb.id, GNB_PANEL, ncr.id, BACKHAUL_PANEL)
        table = channels.beam_power_table(link, slot)
        gnb_beam, ncr_beam = np.unravel_index(int(np.argmax(table)), table.shape)
        pairs[ncr.id] = (int(gnb_beam), int(ncr_beam))
        logger.debug(f"NCR {ncr.id}: backhaul pair gNB beam {gnb_beam}, NCR beam {ncr_beam}")
    return pairs


def reference_gain(channels: ChannelGenerator, gnb: NetworkNode, ncr: NcrNode, slot: int,
                   gnb_tx_power_dbm: float = settings.GNB_TX_POWER_DBM,
                   num_rbs: int = settings.NUM_RBS,
                   max_output_dbm: float = settings.NCR_TX_POWER_DBM) -> float:
    """
    Gain of an NCR when the gNB transmits on every RB through the backhaul pair.

    Used for measurements, where every RB carries reference signals.
    """
    gnb_beam, ncr_beam = ncr.backhaul_pair
    link = channels.link(gnb.id, GNB_PANEL, ncr.id, BACKHAUL_PANEL)
    gains = np.abs(channels.gains(link, slot, np.arange(num_rbs), gnb_beam, ncr_beam)) ** 2
    received = _rsrp_dbm(_power_per_rb_dbm(gnb_tx_power_dbm, num_rbs), gains)
    return set_gain(ncr, received, max_output_dbm)


def sweep_access(channels: ChannelGenerator, gnb: NetworkNode, ncrs: Sequence[NcrNode],
                 ues: Sequence[NetworkNode], slot: int,
                 schedule: Optional[SweepSchedule] = None,
                 gnb_tx_power_dbm: float = settings.GNB_TX_POWER_DBM,
                 num_rbs: int = settings.NUM_RBS) -> List[MeasurementReport]:
    """
    Measure every candidate beam of every UE.

    Direct candidates are the gNB beams; NCR candidates are the access beams
    of each access panel, reached end to end through the frozen backhaul
    pair and the NCR's current gain. RSRP is the band-averaged received
    power per RB.

    Args:
        channels: Channel generator of the run
        gnb: Controlling gNB
        ncrs: Repeaters (with backhaul pairs and gains set)
        ues: UEs to measure
        slot: Current slot
        schedule: Sweep periods; when given the slot must be an access slot

    Returns:
        One MeasurementReport per UE, in the order of ``ues``

    Raises:
        SweepScheduleError: If the slot is not an access sweep instant
    """
    if schedule is not None and not schedule.is_access_slot(slot):
        raise SweepScheduleError(f"Slot {slot} is not an access sweep instant")

    p_rb_dbm = _power_per_rb_dbm(gnb_tx_power_dbm, num_rbs)
    rbs = np.arange(num_rbs)

    backhaul_power = {}
    for ncr in ncrs:
        if ncr.gain <= 0.0 or ncr.backhaul_pair is None:
            continue
        link = channels.link(gnb.id, GNB_PANEL, ncr.id, BACKHAUL_PANEL)
        backhaul_power[ncr.id] = np.abs(channels.gains(link, slot, rbs, *ncr.backhaul_pair)) ** 2

    reports = []
    for ue in ues:
        candidates = []
        direct_link = channels.link(gnb.id, GNB_PANEL, ue.id, None)
        direct = _rsrp_dbm(p_rb_dbm, channels.beam_power_table(direct_link, slot)[:, 0])
        for beam, rsrp in enumerate(direct):
            if np.isfinite(rsrp):
                candidates.append(BeamCandidate(DIRECT, beam, None, float(rsrp)))

        for ncr in ncrs:
            if ncr.id not in backhaul_power:
                continue
            gnb_beam = ncr.backhaul_pair[0]
            for panel in ncr.access_panel_indices:
                access_link = channels.link(ncr.id, panel, ue.id, None)
                n_r, n_t = access_link.shape
                access_power = (access_link.large_scale_gain * n_r * n_t
                                * np.abs(channels.coefficients(access_link, slot)) ** 2)
                end_to_end = ncr.gain * float(np.mean(backhaul_power[ncr.id] * access_power))
                per_beam = end_to_end * np.abs(access_link.tx_factors) ** 2
                path = ServingPath(ncr.id, panel)
                for beam, rsrp in enumerate(_rsrp_dbm(p_rb_dbm, per_beam)):
                    if np.isfinite(rsrp):
                        candidates.append(BeamCandidate(path, gnb_beam, beam, float(rsrp)))

        reports.append(MeasurementReport(ue_id=ue.id, slot=slot, candidates=candidates))
    return reports


def associate(reports: Sequence[MeasurementReport], slot: Optional[int] = None) -> List[Association]:
    """
    Associate each UE with its strongest reported candidate.

    Ties prefer the direct path, then the lowest NCR id.

    Args:
        reports: One report per UE
        slot: Slot from which the associations hold (defaults to the report slot)

    Returns:
        One Association per report

    Raises:
        ValueError: If no report is given
    """
    if not reports:
        raise ValueError("Cannot associate without measurement reports")

    associations = []
    for report in reports:
        best = report.best()
        associations.append(Association(
            ue_id=report.ue_id,
            path=best.path,
            gnb_beam=best.gnb_beam,
            access_beam=best.access_beam,
            valid_from=report.slot if slot is None else slot,
            rsrp_dbm=best.rsrp_dbm,
        ))

    via = sum(1 for a in associations if not a.path.is_direct)
    logger.debug(f"Associated {len(associations)} UEs, {via} via NCRs")
    return associations
