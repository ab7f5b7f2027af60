"""
Unit tests for beam sweeps, measurement reports and association.
"""

import unittest
import sys
import os
import math

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

try:
    import numpy as np
    from core import settings
    from core.exceptions import SweepScheduleError
    from geometry.geometry_models import NetworkNode, NodeKind, BlockGroup, ScenarioId
    from geometry.madrid_grid import build_grid
    from geometry.scenario_builder import scenario_definition, place_nodes, nodes_by_kind
    from channel.channel_generator import ChannelGenerator
    from ncr.ncr_models import NcrNode
    from link.link_models import (
        ServingPath, DIRECT, BeamCandidate, MeasurementReport, Association, SweepSchedule
    )
    from link.beam_management import sweep_backhaul, sweep_access, associate, reference_gain
    NUMPY_AVAILABLE = True
except ImportError as e:
    NUMPY_AVAILABLE = False
    print(f"Warning: numpy not available, skipping link management tests: {e}")


def _setup(scenario_id, ue_positions):
    grid = build_grid()
    nodes = place_nodes(scenario_definition(scenario_id, grid), grid)
    ues = [NetworkNode(id=1000 + i, kind=NodeKind.UE, position=np.array(position),
                       tx_power_dbm=settings.UE_TX_POWER_DBM, block_group=BlockGroup.CENTRAL)
           for i, position in enumerate(ue_positions)]
    channels = ChannelGenerator(nodes + ues, grid, seed=3)
    ncrs = [NcrNode(node=n, controlling_gnb=0) for n in nodes_by_kind(nodes, NodeKind.NCR)]
    return channels, nodes[0], ncrs, ues


@unittest.skipUnless(NUMPY_AVAILABLE, "numpy required for link management tests")
class TestLinkModels(unittest.TestCase):
    """Test candidates, reports and schedules."""

    def test_sweep_schedule_validation(self):
        with self.assertRaises(SweepScheduleError):
            SweepSchedule(t_backhaul=40, t_access=80)
        with self.assertRaises(SweepScheduleError):
            SweepSchedule(t_backhaul=4000, t_access=0)
        schedule = SweepSchedule(t_backhaul=400, t_access=80)
        self.assertTrue(schedule.is_backhaul_slot(800))
        self.assertTrue(schedule.is_access_slot(160))
        self.assertFalse(schedule.is_access_slot(170))

    def test_report_requires_candidates(self):
        with self.assertRaises(ValueError):
            MeasurementReport(ue_id=1000, slot=0, candidates=[])

    def test_report_rejects_non_finite(self):
        with self.assertRaises(ValueError):
            MeasurementReport(ue_id=1000, slot=0,
                              candidates=[BeamCandidate(DIRECT, 0, None, float('nan'))])

    def test_rank_prefers_strongest_then_direct(self):
        via = BeamCandidate(ServingPath(1, 1), 4, 2, -60.0)
        direct = BeamCandidate(DIRECT, 9, None, -60.0)
        weaker = BeamCandidate(DIRECT, 0, None, -61.0)
        report = MeasurementReport(1000, 0, [weaker, via, direct])
        self.assertIs(report.best(), direct)
        self.assertIs(report.best_direct(), direct)

    def test_rank_lowest_ncr_on_tie(self):
        first = BeamCandidate(ServingPath(1, 1), 0, 5, -70.0)
        second = BeamCandidate(ServingPath(2, 1), 0, 5, -70.0)
        self.assertIs(MeasurementReport(1000, 0, [second, first]).best(), first)

    def test_path_labels(self):
        self.assertTrue(DIRECT.is_direct)
        self.assertEqual(DIRECT.label, "direct")
        self.assertEqual(ServingPath(2, 1).label, "ncr2/p1")

    def test_association_row(self):
        row = Association(1003, ServingPath(1, 2), 7, 11, valid_from=160, rsrp_dbm=-55.0).to_dict()
        self.assertEqual(row['path'], 'ncr')
        self.assertEqual((row['ncr'], row['panel'], row['access_beam']), (1, 2, 11))
        direct = Association(1003, DIRECT, 7, None, valid_from=0).to_dict()
        self.assertEqual((direct['ncr'], direct['access_beam']), ('', ''))


@unittest.skipUnless(NUMPY_AVAILABLE, "numpy required for link management tests")
class TestBackhaulSweep(unittest.TestCase):
    """Test backhaul beam pair selection."""

    def setUp(self):
        self.channels, self.gnb, self.ncrs, self.ues = _setup(
            ScenarioId.S4_TWO_NCR_CORNERS, [(200.0, 418.0, 1.5)])

    def test_exhaustive_maximum(self):
        pairs = sweep_backhaul(self.channels, self.gnb, self.ncrs, slot=0)
        self.assertEqual(set(pairs), {1, 2})
        for ncr in self.ncrs:
            link = self.channels.link(0, 0, ncr.id, 0)
            table = self.channels.beam_power_table(link, 0)
            self.assertEqual(table[pairs[ncr.id]], table.max())

    def test_off_schedule_rejected(self):
        with self.assertRaises(SweepScheduleError):
            sweep_backhaul(self.channels, self.gnb, self.ncrs, slot=5,
                           schedule=SweepSchedule(t_backhaul=4000, t_access=80))

    def test_reference_gain(self):
        ncr = self.ncrs[0]
        ncr.backhaul_pair = sweep_backhaul(self.channels, self.gnb, [ncr], slot=0)[ncr.id]
        gain = reference_gain(self.channels, self.gnb, ncr, slot=0)
        self.assertGreater(gain, 0.0)
        self.assertLessEqual(ncr.gain_db, settings.NCR_MAX_GAIN_DB)


@unittest.skipUnless(NUMPY_AVAILABLE, "numpy required for link management tests")
class TestAccessSweep(unittest.TestCase):
    """Test access measurements and association."""

    def setUp(self):
        self.channels, self.gnb, self.ncrs, self.ues = _setup(
            ScenarioId.S2_ONE_NCR_ONE_PANEL, [(200.0, 418.0, 1.5), (200.0, 401.5, 1.5)])
        ncr = self.ncrs[0]
        ncr.backhaul_pair = sweep_backhaul(self.channels, self.gnb, self.ncrs, slot=0)[ncr.id]
        reference_gain(self.channels, self.gnb, ncr, slot=0)

    def test_candidate_counts(self):
        reports = sweep_access(self.channels, self.gnb, self.ncrs, self.ues, slot=0)
        self.assertEqual([r.ue_id for r in reports], [1000, 1001])
        direct = [c for c in reports[0].candidates if c.path.is_direct]
        via = [c for c in reports[0].candidates if not c.path.is_direct]
        self.assertEqual(len(direct), 32)
        self.assertEqual(len(via), 32)

    def test_blocked_ue_served_by_ncr(self):
        reports = sweep_access(self.channels, self.gnb, self.ncrs, self.ues, slot=0)
        best = reports[0].best()
        self.assertFalse(best.path.is_direct)
        self.assertGreater(best.rsrp_dbm - reports[0].best_direct().rsrp_dbm, 10.0)

    def test_ncr_candidate_end_to_end(self):
        ncr = self.ncrs[0]
        rbs = np.arange(settings.NUM_RBS)
        report = sweep_access(self.channels, self.gnb, self.ncrs, self.ues[:1], slot=0)[0]
        candidate = next(c for c in report.candidates
                         if not c.path.is_direct and c.access_beam == 5)

        backhaul = self.channels.link(0, 0, ncr.id, 0)
        access = self.channels.link(ncr.id, 1, 1000, None)
        power = (np.abs(self.channels.gains(backhaul, 0, rbs, *ncr.backhaul_pair)) ** 2 *
                 np.abs(self.channels.gains(access, 0, rbs, 5, None)) ** 2)
        expected = (settings.GNB_TX_POWER_DBM - 10.0 * math.log10(settings.NUM_RBS)
                    + 10.0 * math.log10(ncr.gain * float(np.mean(power))))
        self.assertAlmostEqual(candidate.rsrp_dbm, expected, places=6)
        self.assertEqual(candidate.gnb_beam, ncr.backhaul_pair[0])

    def test_ncr_without_gain_not_measured(self):
        self.ncrs[0].gain_db = float('-inf')
        report = sweep_access(self.channels, self.gnb, self.ncrs, self.ues, slot=0)[0]
        self.assertTrue(all(c.path.is_direct for c in report.candidates))

    def test_off_schedule_rejected(self):
        with self.assertRaises(SweepScheduleError):
            sweep_access(self.channels, self.gnb, self.ncrs, self.ues, slot=3,
                         schedule=SweepSchedule())

    def test_associate(self):
        reports = sweep_access(self.channels, self.gnb, self.ncrs, self.ues, slot=0)
        associations = associate(reports, slot=1)
        self.assertEqual(len(associations), 2)
        self.assertEqual(associations[0].valid_from, 1)
        self.assertEqual(associations[0].path, reports[0].best().path)
        self.assertEqual(associations[0].rsrp_dbm, reports[0].best().rsrp_dbm)

    def test_associate_requires_reports(self):
        with self.assertRaises(ValueError):
            associate([])


def run_tests():
    """Run all link management tests."""
    if not NUMPY_AVAILABLE:
        print("numpy not available. Please install: pip install numpy")
        return False

    suite = unittest.TestLoader().loadTestsFromModule(sys.modules[__name__])
    runner = unittest.TextTestRunner(verbosity=2)
    result = runner.run(suite)

    return result.wasSuccessful()


if __name__ == '__main__':
    unittest.main()
