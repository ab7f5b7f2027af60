"""
Channel generator: builds links on demand and evaluates beamformed gains.

All randomness is drawn from streams keyed by (seed, node pair), so the
channel process is a pure function of the seed, the topology, the slot and
the RB, independently of which other nodes exist in the scenario.
"""

import math
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from core import settings
from core.performance_cache import CoefficientCache
from antenna.antenna_models import Codebook, UraPanel
from antenna.beamforming import (
    build_codebook, array_response, panel_element_gain_db, combined_gain
)
from geometry.geometry_models import MadridGrid, NetworkNode, NodeKind, MobilityState
from geometry.madrid_grid import los_blocked
from .channel_models import ChannelLink, LargeScaleState, FastFadingState, LinkKey, pair_key
from .pathloss import PATH_LOSS_MODELS, SHADOWING_STD_DB, LOS_PROBABILITY_MODELS
from .fading import (
    create_fading_state, with_los_state, doppler_frequency, fading_sample,
    ShadowingProcess, shadowing_rng
)

logger = logging.getLogger(__name__)


@dataclass
class PairState:
    """Random state shared by both directions of a node pair."""

    fading: FastFadingState
    shadowing: ShadowingProcess
    los: bool
    los_draw: float = 0.0
    version: int = 0


def channel_matrix(link: ChannelLink, slot: int, rb: int) -> np.ndarray:
    """
    Full channel matrix of a link for one slot and RB.

    Returns:
        fading_sample scaled by the link's large-scale amplitude
    """
    return link.amplitude * fading_sample(link, slot, rb)


class ChannelGenerator:
    """Creates and caches channel links between the nodes of one run."""

    def __init__(self, nodes: List[NetworkNode], grid: MadridGrid, seed: int,
                 channel_scenario: str = "umi",
                 carrier_frequency_ghz: float = settings.CARRIER_FREQUENCY_GHZ,
                 num_rbs: int = settings.NUM_RBS,
                 codebook_shape: Tuple[int, int] = (settings.CODEBOOK_AZ_BEAMS,
                                                    settings.CODEBOOK_EL_BEAMS),
                 rician_k_db: float = settings.RICIAN_K_DB,
                 shadowing_correlation_m: float = settings.SHADOWING_CORRELATION_M,
                 ue_speed_kmh: float = settings.UE_SPEED_KMH,
                 los_probability: bool = True):
        """
        Initialize the generator.

        Args:
            nodes: All nodes of the run (gNB, NCRs, UEs)
            grid: Madrid grid used for LOS decisions
            seed: Seed of the run
            channel_scenario: Path-loss row, "umi" or "uma"
            los_probability: Apply the scenario's LOS probability to unobstructed
                links; otherwise LOS is purely geometric
        """
        self.grid = grid
        self.seed = seed
        self.path_loss = PATH_LOSS_MODELS[channel_scenario]
        self.shadowing_std = SHADOWING_STD_DB[channel_scenario]
        self.los_probability = LOS_PROBABILITY_MODELS[channel_scenario] if los_probability else None
        self.fc_ghz = carrier_frequency_ghz
        self.num_rbs = num_rbs
        self.rician_k_db = rician_k_db
        self.shadowing_correlation_m = shadowing_correlation_m
        self.ue_doppler_hz = doppler_frequency(ue_speed_kmh / 3.6, carrier_frequency_ghz)

        self.nodes: Dict[int, NetworkNode] = {node.id: node for node in nodes}
        self.positions: Dict[int, np.ndarray] = {
            node.id: np.asarray(node.position, dtype=float).copy() for node in nodes
        }
        self.codebooks: Dict[Tuple[int, int], Codebook] = {}
        for node in nodes:
            for index, panel in enumerate(node.panels):
                self.codebooks[(node.id, index)] = build_codebook(panel, *codebook_shape)

        self._pairs: Dict[Tuple[int, int], PairState] = {}
        self._links: Dict[LinkKey, ChannelLink] = {}
        self._travelled: Dict[int, float] = {}
        self.epoch = 0
        self.cache = CoefficientCache(max_size=4 * len(nodes) + 64)

    # ------------------------------------------------------------------ state

    def codebook(self, node_id: int, panel_index: int) -> Codebook:
        """Codebook of a node panel."""
        return self.codebooks[(node_id, panel_index)]

    def panel(self, node_id: int, panel_index: Optional[int]) -> Optional[UraPanel]:
        if panel_index is None:
            return None
        return self.nodes[node_id].panels[panel_index]

    def _is_los(self, key: Tuple[int, int], draw: float) -> bool:
        """
        LOS state of a node pair.

        gNB-NCR links are planned and always LOS. Other pairs need a clear
        segment and, with the LOS probability enabled, a draw below the
        probability at their ground distance.
        """
        kinds = {self.nodes[n].kind for n in key}
        if kinds == {NodeKind.GNB, NodeKind.NCR}:
            return True
        a, b = self.positions[key[0]], self.positions[key[1]]
        if los_blocked(a, b, self.grid):
            return False
        if self.los_probability is None:
            return True
        return draw < self.los_probability(float(np.hypot(*(a[:2] - b[:2]))))

    def _pair_state(self, a: int, b: int) -> PairState:
        key = pair_key(a, b)
        state = self._pairs.get(key)
        if state is None:
            draw = float(np.random.default_rng([self.seed, key[0], key[1], 0x105]).random())
            los = self._is_los(key, draw)
            moving = any(self.nodes[n].kind is NodeKind.UE for n in key)
            rng = np.random.default_rng([self.seed, key[0], key[1], 0xFAD])
            fading = create_fading_state(
                rng, los,
                k_factor_db=self.rician_k_db,
                doppler_hz=self.ue_doppler_hz if moving else 0.0,
                delay_spread_s=settings.DELAY_SPREAD_LOS_S if los else settings.DELAY_SPREAD_NLOS_S,
            )
            shadowing = ShadowingProcess(shadowing_rng(self.seed, key), self.shadowing_correlation_m)
            state = PairState(fading=fading, shadowing=shadowing, los=los, los_draw=draw)
            self._pairs[key] = state
        return state

    def update_positions(self, mobility: MobilityState) -> None:
        """
        Move UEs to their current positions and refresh the affected links.

        Shadowing advances by the distance each UE walked since the last
        refresh; LOS is re-evaluated and links are rebuilt lazily.
        """
        moved = set()
        for index, ue_id in enumerate(mobility.ue_ids):
            travelled = float(mobility.travelled[index])
            delta = travelled - self._travelled.get(ue_id, 0.0)
            self._travelled[ue_id] = travelled
            self.positions[ue_id] = np.asarray(mobility.positions[index], dtype=float).copy()
            moved.add(ue_id)
            if delta <= 0.0:
                continue
            for key, state in self._pairs.items():
                if ue_id in key:
                    state.shadowing.advance(delta)

        for key, state in self._pairs.items():
            if key[0] in moved or key[1] in moved:
                los = self._is_los(key, state.los_draw)
                if los != state.los:
                    state.fading = with_los_state(state.fading, los, self.rician_k_db)
                    state.los = los
                    state.version += 1

        self._links = {k: v for k, v in self._links.items()
                       if k[0] not in moved and k[2] not in moved}
        self.epoch += 1
        logger.debug(f"Channel geometry refreshed (epoch {self.epoch})")

    # ------------------------------------------------------------------ links

    def link(self, tx_id: int, tx_panel: Optional[int], rx_id: int,
             rx_panel: Optional[int]) -> ChannelLink:
        """
        Channel link from a tx panel to an rx panel (``None`` for a UE antenna).
        """
        key = (tx_id, tx_panel, rx_id, rx_panel)
        link = self._links.get(key)
        if link is not None:
            return link

        state = self._pair_state(tx_id, rx_id)
        tx_pos, rx_pos = self.positions[tx_id], self.positions[rx_id]
        direction = rx_pos - tx_pos
        distance = max(float(np.linalg.norm(direction)), 1.0)
        heights = (float(tx_pos[2]), float(rx_pos[2]))
        sigma = self.shadowing_std[0] if state.los else self.shadowing_std[1]
        large_scale = LargeScaleState(
            path_loss=self.path_loss(distance, self.fc_ghz, state.los, heights),
            shadowing=sigma * state.shadowing.value,
            los=state.los,
            distance_3d=distance,
        )

        tx_panel_obj = self.panel(tx_id, tx_panel)
        rx_panel_obj = self.panel(rx_id, rx_panel)
        tx_response = array_response(tx_panel_obj, direction)
        rx_response = array_response(rx_panel_obj, -direction)
        link = ChannelLink(
            tx_id=tx_id, rx_id=rx_id,
            tx_panel=tx_panel_obj, rx_panel=rx_panel_obj,
            large_scale=large_scale, fading=state.fading,
            tx_response=tx_response, rx_response=rx_response,
            tx_element_gain_db=panel_element_gain_db(tx_panel_obj, direction),
            rx_element_gain_db=panel_element_gain_db(rx_panel_obj, -direction),
            tx_panel_index=tx_panel, rx_panel_index=rx_panel,
            epoch=self.epoch,
        )
        link.tx_factors = (self.codebook(tx_id, tx_panel).weights @ tx_response
                           if tx_panel is not None else np.ones(1, dtype=complex))
        link.rx_factors = (self.codebook(rx_id, rx_panel).weights @ rx_response
                           if rx_panel is not None else np.ones(1, dtype=complex))
        self._links[key] = link
        return link

    def coefficients(self, link: ChannelLink, slot: int) -> np.ndarray:
        """Fading coefficients of the link's node pair over all RBs."""
        state = self._pair_state(link.tx_id, link.rx_id)
        key = (link.pair, slot, state.version)
        values = self.cache.get(key)
        if values is None:
            values = state.fading.coefficients(slot, np.arange(self.num_rbs))[0]
            self.cache.put(key, values)
        return values

    def gains(self, link: ChannelLink, slot: int, rbs, tx_beam: Optional[int],
              rx_beam: Optional[int]) -> np.ndarray:
        """
        Beamformed coefficients gamma on the given RBs.

        Equivalent to ``combined_gain(w_tx, channel_matrix(...), w_rx)`` with
        codebook weights, evaluated through the rank-one factorization.

        Args:
            link: Channel link
            slot: Slot index
            rbs: RB indices
            tx_beam: Tx codebook index (None for a UE antenna)
            rx_beam: Rx codebook index (None for a UE antenna)

        Returns:
            Complex array, one gamma per RB
        """
        tx_factor = link.tx_factors[0 if tx_beam is None else tx_beam]
        rx_factor = link.rx_factors[0 if rx_beam is None else rx_beam]
        n_r, n_t = link.shape
        scale = link.amplitude * math.sqrt(n_r * n_t) * tx_factor * rx_factor
        return scale * self.coefficients(link, slot)[np.asarray(rbs)]

    def gain_with_filters(self, link: ChannelLink, slot: int, rb: int,
                          tx_filter: np.ndarray, rx_filter: np.ndarray) -> complex:
        """gamma for arbitrary filters via the full channel matrix."""
        return combined_gain(tx_filter, channel_matrix(link, slot, rb), rx_filter)

    def beam_power_table(self, link: ChannelLink, slot: int) -> np.ndarray:
        """
        Band-averaged |gamma|^2 for every (tx beam, rx beam) pair.

        Returns:
            Array of shape (num tx beams, num rx beams)
        """
        h = self.coefficients(link, slot)
        n_r, n_t = link.shape
        base = link.large_scale_gain * n_r * n_t * float(np.mean(np.abs(h) ** 2))
        return base * np.outer(np.abs(link.tx_factors) ** 2, np.abs(link.rx_factors) ** 2)

    def trace_rows(self) -> List[dict]:
        """Large-scale values of every link built so far."""
        return [link.to_dict() for _, link in sorted(self._links.items(), key=lambda kv: str(kv[0]))]
