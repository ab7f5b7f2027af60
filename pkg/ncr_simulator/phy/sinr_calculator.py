"""
SINR of a UE on one RB, direct and NCR-forwarded paths combined.

The forwarded paths add incoherently to the direct one. Every NCR forwards
whatever it receives, so all repeaters contribute to useful power,
interference and noise, each through the beams its side control sets.

In DL the gNB transmits and the UE receives; in UL the roles swap and the
reciprocal channels are used, so that:

* DL forwarded useful power: A[r, x] * g_r * B[r, x]
* UL forwarded useful power: B[r, x] * g_r * A[r, x]
* DL forwarded noise: sigma^2 * A[r, x] * g_r (NCR noise reaching the UE)
* UL forwarded noise: sigma^2 * B[r, x] * g_r (NCR noise reaching the gNB)
"""

import math
import logging

from core import settings
from core.exceptions import UeNotScheduledError
from utils.helpers import dbm_to_watt
from .phy_models import Direction, RbChannelState, SinrBreakdown

logger = logging.getLogger(__name__)


def noise_power_per_rb(noise_figure_db: float = settings.NOISE_FIGURE_DB,
                       rb_bandwidth_hz: float = settings.SUBCARRIERS_PER_RB * settings.SUBCARRIER_SPACING_HZ
                       ) -> float:
    """Thermal noise over one RB including the receiver noise figure (W)."""
    noise_dbm = (settings.THERMAL_NOISE_DBM_PER_HZ + 10.0 * math.log10(rb_bandwidth_hz)
                 + noise_figure_db)
    return float(dbm_to_watt(noise_dbm))


def _check_scheduled(state: RbChannelState, ue_id: int) -> None:
    if ue_id not in state.scheduled:
        raise UeNotScheduledError(f"UE {ue_id} is not scheduled on RB {state.rb}")


def _path_power(state: RbChannelState, beam_owner: int, tx_ue: int, rx_ue: int) -> float:
    """
    Power of one signal at one receiver, per unit transmit power.

    DL: gNB beam of ``beam_owner`` reaching UE ``rx_ue``.
    UL: UE ``tx_ue`` reaching the gNB receiving with the beam of ``beam_owner``.
    """
    if state.direction is Direction.DL:
        direct = state.direct[(beam_owner, rx_ue)]
        forwarded = math.fsum(state.access[(r, rx_ue)] * g * state.backhaul[(r, beam_owner)]
                              for r, g in sorted(state.ncr_gain.items()))
    else:
        direct = state.direct[(beam_owner, tx_ue)]
        forwarded = math.fsum(state.backhaul[(r, beam_owner)] * g * state.access[(r, tx_ue)]
                              for r, g in sorted(state.ncr_gain.items()))
    return direct + forwarded


def useful_power(state: RbChannelState, ue_id: int) -> float:
    """
    Useful power of a UE's own signal (W).

    Raises:
        UeNotScheduledError: If the UE holds no resources on this RB
    """
    _check_scheduled(state, ue_id)
    return state.scheduled[ue_id] * _path_power(state, ue_id, ue_id, ue_id)


def interference_power(state: RbChannelState, ue_id: int) -> float:
    """
    Power of the other UEs' signals sharing the RB (W).

    DL: signals meant for other UEs, sent with their gNB beams, at this UE.
    UL: other UEs' transmissions at the gNB beam receiving this UE.
    """
    _check_scheduled(state, ue_id)
    terms = []
    for other, power in sorted(state.scheduled.items()):
        if other == ue_id:
            continue
        if state.direction is Direction.DL:
            terms.append(power * _path_power(state, other, other, ue_id))
        else:
            terms.append(power * _path_power(state, ue_id, other, ue_id))
    return math.fsum(terms)


def noise_power(state: RbChannelState, ue_id: int) -> float:
    """Receiver noise plus noise amplified and forwarded by the NCRs (W)."""
    if state.direction is Direction.DL:
        forwarded = math.fsum(state.access[(r, ue_id)] * g for r, g in sorted(state.ncr_gain.items()))
    else:
        forwarded = math.fsum(state.backhaul[(r, ue_id)] * g for r, g in sorted(state.ncr_gain.items()))
    return state.noise_per_rb * (1.0 + forwarded)


def sinr(state: RbChannelState, ue_id: int) -> SinrBreakdown:
    """
    SINR breakdown of a UE on the RB of ``state``.

    Raises:
        UeNotScheduledError: If the UE holds no resources on this RB
    """
    return SinrBreakdown(
        useful=useful_power(state, ue_id),
        interference=interference_power(state, ue_id),
        noise=noise_power(state, ue_id),
        rb=state.rb,
        direction=state.direction,
    )
