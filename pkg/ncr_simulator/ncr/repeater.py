"""
Amplify-and-forward behaviour of NCRs and the gNB-side controller.
"""

import logging
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np

from core import settings
from utils.helpers import dbm_to_watt, watt_to_dbm
from .ncr_models import NcrNode, SideControlInfo

logger = logging.getLogger(__name__)


def set_gain(ncr: NcrNode, input_power_dbm: Iterable[float],
             max_output_dbm: float = settings.NCR_TX_POWER_DBM) -> float:
    """
    Choose the slot gain of an NCR.

    The gain is flat over RBs and capped so that the total output over the
    occupied RBs never exceeds ``max_output_dbm``.

    Args:
        ncr: Repeater to configure
        input_power_dbm: Received power per occupied RB (dBm)
        max_output_dbm: Output power cap summed over RBs

    Returns:
        Linear power gain g (0 when forwarding is off)

    Raises:
        ValueError: If an input power is not finite or none is given
    """
    powers = np.atleast_1d(np.asarray(list(input_power_dbm), dtype=float))
    if powers.size == 0 or not np.all(np.isfinite(powers)):
        raise ValueError("NCR input power must be finite on every occupied RB")

    if not ncr.forwarding:
        ncr.gain_db = float('-inf')
        return 0.0

    total_input_dbm = float(watt_to_dbm(float(np.sum(dbm_to_watt(powers)))))
    ncr.gain_db = min(ncr.max_gain_db, max_output_dbm - total_input_dbm)
    if ncr.side_control is not None:
        ncr.side_control.gain = ncr.gain
    return ncr.gain


def forwarded_term(ncr: NcrNode, gnb_to_ncr_gain, ncr_to_ue_gain, tx_power: float):
    """
    Power delivered through an NCR: |gamma_ru|^2 * g * |gamma_br|^2 * p.

    Works on scalars or on per-RB arrays of beamformed coefficients.
    """
    return (np.abs(ncr_to_ue_gain) ** 2) * ncr.gain * (np.abs(gnb_to_ncr_gain) ** 2) * tx_power


class NcrController:
    """
    gNB-side control of its NCRs.

    Translates associations and the slot schedule into side control
    information; the repeaters take no decisions of their own.
    """

    def __init__(self, ncrs: Sequence[NcrNode], num_rbs: int = settings.NUM_RBS,
                 default_access_beam: int = 0, force_off: bool = False):
        """
        Initialize the controller.

        Args:
            ncrs: Repeaters controlled by this gNB
            num_rbs: Number of RBs in the carrier
            default_access_beam: Access beam used on RBs not serving the NCR's UEs
            force_off: Keep every repeater's forwarding off
        """
        self.ncrs: Dict[int, NcrNode] = {ncr.id: ncr for ncr in ncrs}
        self.num_rbs = num_rbs
        self.default_access_beam = default_access_beam
        self.force_off = force_off
        if force_off and ncrs:
            logger.info(f"Forwarding disabled on {len(ncrs)} NCR(s)")

    def set_backhaul(self, pairs: Dict[int, tuple]) -> None:
        """Freeze the backhaul beam pair of each NCR until the next sweep."""
        for ncr_id, pair in pairs.items():
            self.ncrs[ncr_id].backhaul_pair = (int(pair[0]), int(pair[1]))

    def issue(self, slot: int, allocation: Sequence[Optional[int]],
              access_beams: Dict[int, tuple], measurement: bool = False) -> Dict[int, SideControlInfo]:
        """
        Issue side control for a slot.

        An NCR forwards only in slots where it serves a scheduled UE, or in
        measurement slots where every RB carries reference signals.

        Args:
            slot: Slot index
            allocation: UE id (or None) per RB
            access_beams: UE id -> (ncr id, access panel, access beam) for UEs served via NCRs
            measurement: Keep every NCR forwarding for a beam sweep

        Returns:
            Side control info per NCR id
        """
        issued = {}
        for ncr_id, ncr in self.ncrs.items():
            panels = np.full(self.num_rbs, ncr.access_panel_indices[0], dtype=int)
            beams = np.full(self.num_rbs, self.default_access_beam, dtype=int)
            serving = False
            for rb, ue_id in enumerate(allocation):
                served = access_beams.get(ue_id) if ue_id is not None else None
                if served is not None and served[0] == ncr_id:
                    panels[rb], beams[rb] = served[1], served[2]
                    serving = True
            gnb_beam, backhaul_beam = ncr.backhaul_pair if ncr.backhaul_pair else (0, 0)
            info = SideControlInfo(slot=slot, gnb_beam=gnb_beam, backhaul_beam=backhaul_beam,
                                   access_panel=panels, access_beam=beams,
                                   forwarding=not self.force_off and (serving or measurement))
            ncr.side_control = info
            issued[ncr_id] = info
        return issued

    def gains(self) -> Dict[int, float]:
        """Linear gain currently applied by each NCR."""
        return {ncr_id: ncr.gain for ncr_id, ncr in self.ncrs.items()}

    def active(self) -> List[NcrNode]:
        """NCRs whose forwarding is on."""
        return [ncr for ncr in self.ncrs.values() if ncr.forwarding and ncr.gain > 0.0]
