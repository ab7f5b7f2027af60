"""
Slot-level simulation engine.

One run realises a scenario for a seed: drop, sweeps at their periods and,
in every slot, traffic, scheduling, SINR evaluation on the scheduled RBs,
MCS selection, CRC draw and outer-loop update.
"""

import logging
import time
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from core import settings
from core.config_manager import SimulationConfig
from core.exceptions import ConfigurationError
from channel.channel_generator import ChannelGenerator
from geometry.geometry_models import NodeKind, ScenarioId
from geometry.madrid_grid import build_grid
from geometry.mobility import init_mobility, step_mobility
from geometry.scenario_builder import scenario_definition, place_nodes, drop_ues, nodes_by_kind
from geometry.scenario_file import load_scenario_file
from link.beam_management import sweep_backhaul, sweep_access, associate, reference_gain, GNB_PANEL
from link.link_models import Association, SweepSchedule
from metrics.metrics_models import MetricsBundle, SinrSample
from ncr.ncr_models import NcrNode, BACKHAUL_PANEL
from ncr.repeater import NcrController, set_gain
from phy.phy_models import Direction, LinkAdaptationState, RbChannelState
from phy.sinr_calculator import sinr, noise_power_per_rb
from phy.link_adaptation import (
    default_table, sinr_to_mcs, outer_loop_update, effective_sinr_db,
    transport_block_bits, draw_crc
)
from utils.helpers import dbm_to_watt, watt_to_dbm, format_duration
from .mac_models import TddPattern
from .scheduler import rr_schedule
from .traffic import create_sources, create_bearers, generate_traffic

logger = logging.getLogger(__name__)


@dataclass
class _UeLinks:
    """Per-RB link powers of one scheduled UE in one slot."""

    rbs: np.ndarray
    gnb_beam: int
    direct: np.ndarray
    backhaul: Dict[int, np.ndarray]
    access: Dict[int, np.ndarray]


class SlotEngine:
    """State and slot loop of one (scenario, seed) run."""

    def __init__(self, config: SimulationConfig, scenario: str, seed: int):
        self.config = config
        self.scenario = scenario
        self.seed = seed
        self.pattern = TddPattern()
        self.sweeps = SweepSchedule(config.t_backhaul_slots, config.t_access_slots)
        self.grid = build_grid(building_height=config.building_height_m)

        if scenario == ScenarioId.CUSTOM.value:
            definition = load_scenario_file(config.scenario_file)
        else:
            definition = scenario_definition(ScenarioId(scenario), self.grid)
        nodes = place_nodes(definition, self.grid, config.gnb_tx_power_dbm, config.ncr_tx_power_dbm)
        self.ues = drop_ues(config.num_ues, self.grid, seed, config.ue_tx_power_dbm)
        self.gnb = nodes_by_kind(nodes, NodeKind.GNB)[0]
        self.ncrs = [NcrNode(node=node, controlling_gnb=self.gnb.id,
                             max_gain_db=config.ncr_max_gain_db)
                     for node in nodes_by_kind(nodes, NodeKind.NCR)]

        self.channels = ChannelGenerator(
            nodes + self.ues, self.grid, seed,
            channel_scenario=config.channel_scenario,
            carrier_frequency_ghz=config.carrier_frequency_ghz,
            num_rbs=config.num_rbs,
            codebook_shape=(config.codebook_az_beams, config.codebook_el_beams),
            rician_k_db=config.rician_k_db,
            shadowing_correlation_m=config.shadowing_correlation_m,
            los_probability=config.los_probability,
        )
        centre_beam = (config.codebook_el_beams // 2) * config.codebook_az_beams + config.codebook_az_beams // 2
        self.controller = NcrController(self.ncrs, config.num_rbs,
                                        default_access_beam=centre_beam,
                                        force_off=config.ncr_force_off)
        self.mobility = init_mobility(self.ues, self.grid, seed)

        self.table = default_table(config.bler_curve_file)
        self.link_states: Dict[Tuple[int, Direction], LinkAdaptationState] = {
            (ue.id, d): LinkAdaptationState(ue_id=ue.id, target_bler=config.target_bler)
            for ue in self.ues for d in (Direction.DL, Direction.UL)
        }
        ue_ids = [ue.id for ue in self.ues]
        self.sources = create_sources(ue_ids, config.packet_period_slots, config.full_buffer)
        self.bearers = create_bearers(ue_ids)
        self.crc_rng = np.random.default_rng([seed, 0xC7C])
        self.noise = noise_power_per_rb(config.noise_figure_db)
        self.associations: Dict[int, Association] = {}

        self.bundle = MetricsBundle(scenario=scenario, seeds=[seed], num_slots=config.num_slots,
                                    warmup_slots=config.warmup_slots, num_ues=config.num_ues)
        self._groups = {ue.id: ue.block_group.value for ue in self.ues}

    # ------------------------------------------------------------------ sweeps

    def _sweep(self, slot: int) -> None:
        step = self.config.mobility_step_slots
        if slot > 0 and slot % step == 0:
            self.mobility = step_mobility(self.mobility, step * settings.SLOT_DURATION_S)
            self.channels.update_positions(self.mobility)

        if self.sweeps.is_backhaul_slot(slot):
            self.controller.set_backhaul(
                sweep_backhaul(self.channels, self.gnb, self.ncrs, slot, self.sweeps))

        if self.sweeps.is_access_slot(slot):
            self.controller.issue(slot, [None] * self.config.num_rbs, {}, measurement=True)
            for ncr in self.ncrs:
                reference_gain(self.channels, self.gnb, ncr, slot,
                               self.config.gnb_tx_power_dbm, self.config.num_rbs,
                               self.config.ncr_tx_power_dbm)
            reports = sweep_access(self.channels, self.gnb, self.ncrs, self.ues, slot, self.sweeps,
                                   self.config.gnb_tx_power_dbm, self.config.num_rbs)
            associations = associate(reports, slot)
            self.associations = {a.ue_id: a for a in associations}
            if slot >= self.config.warmup_slots:
                via = sum(1 for a in associations if not a.path.is_direct)
                self.bundle.via_ncr_fractions.append(via / len(associations))
            if self.config.association_trace:
                for a in associations:
                    row = {'scenario': self.scenario, 'seed': self.seed}
                    row.update(a.to_dict())
                    self.bundle.association_trace.append(row)

    # ------------------------------------------------------------------ links

    def _ue_links(self, ue_id: int, rbs: List[int], slot: int, direction: Direction,
                  side_control) -> _UeLinks:
        """|gamma|^2 of every path of a UE on its RBs, with the beams in force."""
        ch = self.channels
        gnb_id = self.gnb.id
        gnb_beam = self.associations[ue_id].gnb_beam
        rb_index = np.asarray(rbs)
        downlink = direction is Direction.DL

        if downlink:
            link = ch.link(gnb_id, GNB_PANEL, ue_id, None)
            direct = np.abs(ch.gains(link, slot, rb_index, gnb_beam, None)) ** 2
        else:
            link = ch.link(ue_id, None, gnb_id, GNB_PANEL)
            direct = np.abs(ch.gains(link, slot, rb_index, None, gnb_beam)) ** 2

        backhaul, access = {}, {}
        for ncr in self.ncrs:
            info = side_control[ncr.id]
            panel, beam = info.beam_on(rbs[0])
            if downlink:
                bh = ch.link(gnb_id, GNB_PANEL, ncr.id, BACKHAUL_PANEL)
                backhaul[ncr.id] = np.abs(ch.gains(bh, slot, rb_index, gnb_beam, info.backhaul_beam)) ** 2
                acc = ch.link(ncr.id, panel, ue_id, None)
                access[ncr.id] = np.abs(ch.gains(acc, slot, rb_index, beam, None)) ** 2
            else:
                bh = ch.link(ncr.id, BACKHAUL_PANEL, gnb_id, GNB_PANEL)
                backhaul[ncr.id] = np.abs(ch.gains(bh, slot, rb_index, info.backhaul_beam, gnb_beam)) ** 2
                acc = ch.link(ue_id, None, ncr.id, panel)
                access[ncr.id] = np.abs(ch.gains(acc, slot, rb_index, None, beam)) ** 2
        return _UeLinks(rbs=rb_index, gnb_beam=gnb_beam, direct=direct, backhaul=backhaul, access=access)

    def _tx_power_per_rb(self, direction: Direction, ue_rbs: int, total_rbs: int) -> float:
        if direction is Direction.DL:
            return float(dbm_to_watt(self.config.gnb_tx_power_dbm)) / total_rbs
        return float(dbm_to_watt(self.config.ue_tx_power_dbm)) / ue_rbs

    def _set_ncr_gains(self, links: Dict[int, _UeLinks], powers: Dict[int, float],
                       direction: Direction) -> Dict[int, float]:
        """Slot gain of every NCR from the power it receives on the occupied RBs."""
        gains = {}
        for ncr in self.ncrs:
            received = []
            for ue_id, ue_links in links.items():
                incoming = (ue_links.backhaul[ncr.id] if direction is Direction.DL
                            else ue_links.access[ncr.id])
                received.append(powers[ue_id] * incoming)
            input_dbm = watt_to_dbm(np.concatenate(received))
            gains[ncr.id] = set_gain(ncr, input_dbm, self.config.ncr_tx_power_dbm)
        return gains

    # ------------------------------------------------------------------ slot

    def run_slot(self, slot: int) -> None:
        self._sweep(slot)
        generate_traffic(self.sources, self.bearers, slot)

        direction = self.pattern.direction(slot)
        bits_per_rb = {ue.id: max(1, transport_block_bits(self.link_states[(ue.id, direction)].mcs, 1))
                       for ue in self.ues}
        schedule = rr_schedule(self.bearers.values(), slot, direction, self.config.num_rbs, bits_per_rb,
                               self.config.scheduler_max_wait_slots)
        scheduled = schedule.scheduled_ues
        if not scheduled:
            return

        access_beams = {ue_id: (a.path.ncr_id, a.path.panel, a.access_beam)
                        for ue_id, a in self.associations.items() if not a.path.is_direct}
        side_control = self.controller.issue(slot, schedule.allocation, access_beams)

        total_rbs = sum(1 for ue in schedule.allocation if ue is not None)
        ue_rbs = {ue_id: schedule.rbs_of(ue_id) for ue_id in scheduled}
        powers = {ue_id: self._tx_power_per_rb(direction, len(rbs), total_rbs)
                  for ue_id, rbs in ue_rbs.items()}
        links = {ue_id: self._ue_links(ue_id, rbs, slot, direction, side_control)
                 for ue_id, rbs in ue_rbs.items()}
        gains = self._set_ncr_gains(links, powers, direction) if self.ncrs else {}

        measured = slot >= self.config.warmup_slots
        for ue_id in scheduled:
            ue_links = links[ue_id]
            per_rb = []
            for i, rb in enumerate(ue_links.rbs):
                state = RbChannelState(
                    rb=int(rb), direction=direction,
                    scheduled={ue_id: powers[ue_id]},
                    direct={(ue_id, ue_id): float(ue_links.direct[i])},
                    access={(r, ue_id): float(v[i]) for r, v in ue_links.access.items()},
                    backhaul={(r, ue_id): float(v[i]) for r, v in ue_links.backhaul.items()},
                    ncr_gain=gains,
                    noise_per_rb=self.noise,
                )
                per_rb.append(sinr(state, ue_id).sinr)
            self._transmit(ue_id, direction, slot, effective_sinr_db(per_rb), len(ue_links.rbs), measured)

    def _transmit(self, ue_id: int, direction: Direction, slot: int, sinr_db: float,
                  num_rbs: int, measured: bool) -> None:
        """Link adaptation, CRC draw and bookkeeping of one transport block."""
        state = self.link_states[(ue_id, direction)]
        estimate = sinr_db if state.estimate_db is None else state.estimate_db
        mcs = sinr_to_mcs(state, estimate, self.table)
        crc_ok = draw_crc(self.crc_rng, self.table.bler(mcs, sinr_db))
        outer_loop_update(state, crc_ok)
        state.estimate_db = sinr_db

        delivered = 0
        if crc_ok:
            delivered = self.bearers[(ue_id, direction)].drain(transport_block_bits(mcs, num_rbs))

        if measured:
            key = direction.value
            self.bundle.transport_blocks[key] += 1
            self.bundle.block_errors[key] += 0 if crc_ok else 1
            self.bundle.delivered_bits[key] += delivered
            self.bundle.out_of_range_selections += int(state.out_of_range)
            self.bundle.samples.append(SinrSample(
                scenario=self.scenario, seed=self.seed, ue_id=ue_id,
                block_group=self._groups[ue_id], direction=direction,
                slot=slot, sinr_db=sinr_db,
            ))

    def run(self) -> MetricsBundle:
        start = time.time()
        for slot in range(self.config.num_slots):
            self.run_slot(slot)
        if self.config.channel_trace:
            for row in self.channels.trace_rows():
                row.update({'scenario': self.scenario, 'seed': self.seed})
                self.bundle.channel_trace.append(row)
        logger.info(f"{self.scenario} seed {self.seed}: {len(self.bundle.samples)} samples "
                    f"in {format_duration(time.time() - start)}")
        return self.bundle


def run_single(config: SimulationConfig, scenario: str, seed: int) -> MetricsBundle:
    """
    Run one scenario for one seed.

    Raises:
        ConfigurationError: If the configuration is invalid
    """
    config.check()
    return SlotEngine(config, scenario, seed).run()


def run_simulation(config: SimulationConfig) -> MetricsBundle:
    """
    Run the configured scenario over every seed, sequentially.

    Args:
        config: Configuration naming a single scenario

    Returns:
        MetricsBundle merged over the seeds

    Raises:
        ConfigurationError: If the configuration is invalid or selects several scenarios
    """
    config.check()
    if len(config.scenario_list) != 1:
        raise ConfigurationError("run_simulation expects a single scenario; use run_campaign")
    scenario = config.scenario_list[0]
    logger.info(f"Simulating {scenario} over {len(config.seeds)} seed(s)")
    bundle = None
    for seed in config.seeds:
        result = SlotEngine(config, scenario, seed).run()
        bundle = result if bundle is None else bundle.merge(result)
    return bundle


def run_campaign(config: SimulationConfig) -> Dict[str, MetricsBundle]:
    """Run every selected scenario; scenario name -> merged bundle."""
    config.check()
    return {scenario: run_simulation(config.for_scenario(scenario))
            for scenario in config.scenario_list}
