"""
Unit tests for path loss, fading, shadowing and the channel generator.
"""

import unittest
import sys
import os
import math

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

try:
    import numpy as np
    from scipy import special
    from core import settings
    from core.exceptions import ChannelError
    from geometry.geometry_models import NetworkNode, NodeKind, BlockGroup, ScenarioId
    from geometry.madrid_grid import build_grid
    from geometry.scenario_builder import scenario_definition, place_nodes
    from geometry.mobility import init_mobility, step_mobility
    from channel.pathloss import path_loss_umi, path_loss_uma, los_probability_umi, los_probability_uma
    from geometry.madrid_grid import los_blocked
    from channel.fading import (
        create_fading_state, doppler_frequency, fading_sample, shadowing_sample, ShadowingProcess
    )
    from channel.channel_generator import ChannelGenerator, channel_matrix
    SCIPY_AVAILABLE = True
except ImportError as e:
    SCIPY_AVAILABLE = False
    print(f"Warning: numpy/scipy not available, skipping channel tests: {e}")


UE_ID = 1000


def _s2_nodes(grid, ue_position=(200.0, 415.0, 1.5), with_ncr=True):
    scenario_id = ScenarioId.S2_ONE_NCR_ONE_PANEL if with_ncr else ScenarioId.S1_BASELINE
    nodes = place_nodes(scenario_definition(scenario_id, grid), grid)
    nodes.append(NetworkNode(id=UE_ID, kind=NodeKind.UE, position=np.array(ue_position),
                             tx_power_dbm=settings.UE_TX_POWER_DBM,
                             block_group=BlockGroup.CENTRAL))
    return nodes


@unittest.skipUnless(SCIPY_AVAILABLE, "numpy and scipy required for channel tests")
class TestPathLoss(unittest.TestCase):
    """Test the street-canyon and macro path-loss models."""

    def test_umi_los_value(self):
        expected = 32.4 + 21.0 * 2.0 + 20.0 * math.log10(28.0)
        self.assertAlmostEqual(path_loss_umi(100.0, 28.0, True, (10.0, 1.5)), expected, places=9)

    def test_umi_nlos_value(self):
        expected = 35.3 * 2.0 + 22.4 + 21.3 * math.log10(28.0)
        self.assertAlmostEqual(path_loss_umi(100.0, 28.0, False, (10.0, 1.5)), expected, places=9)

    def test_uma_los_value(self):
        expected = 28.0 + 22.0 * 2.0 + 20.0 * math.log10(28.0)
        self.assertAlmostEqual(path_loss_uma(100.0, 28.0, True, (25.0, 1.5)), expected, places=9)

    def test_height_order_irrelevant(self):
        self.assertEqual(path_loss_umi(250.0, 28.0, False, (25.0, 1.5)),
                         path_loss_umi(250.0, 28.0, False, (1.5, 25.0)))

    def test_nlos_not_below_los(self):
        for model in (path_loss_umi, path_loss_uma):
            for distance in np.linspace(1.0, 2000.0, 200):
                self.assertGreaterEqual(model(distance, 28.0, False),
                                        model(distance, 28.0, True))

    def test_monotone_in_distance(self):
        losses = [path_loss_umi(d, 28.0, True, (25.0, 1.5)) for d in np.linspace(30.0, 3000.0, 300)]
        self.assertTrue(all(b > a for a, b in zip(losses, losses[1:])))

    def test_los_probability(self):
        self.assertEqual(los_probability_umi(12.0), 1.0)
        expected = 18.0 / 100.0 + math.exp(-100.0 / 36.0) * (1.0 - 18.0 / 100.0)
        self.assertAlmostEqual(los_probability_umi(100.0), expected, places=12)
        distances = np.linspace(19.0, 500.0, 50)
        umi = [los_probability_umi(d) for d in distances]
        self.assertTrue(all(b < a for a, b in zip(umi, umi[1:])))
        # macro cells keep LOS further out
        self.assertGreater(los_probability_uma(100.0), los_probability_umi(100.0))

    def test_below_one_metre_rejected(self):
        with self.assertRaises(ChannelError):
            path_loss_umi(0.5)
        with self.assertRaises(ChannelError):
            path_loss_uma(float('nan'))


@unittest.skipUnless(SCIPY_AVAILABLE, "numpy and scipy required for channel tests")
class TestFastFading(unittest.TestCase):
    """Ensemble statistics of the sum-of-sinusoids process."""

    REALIZATIONS = 20000
    LAGS = (1, 10, 40)

    @classmethod
    def setUpClass(cls):
        rng = np.random.default_rng(123)
        cls.doppler = doppler_frequency(settings.UE_SPEED_KMH / 3.6)
        slots = np.array([0] + list(cls.LAGS))
        samples = np.empty((cls.REALIZATIONS, slots.size), dtype=complex)
        for i in range(cls.REALIZATIONS):
            state = create_fading_state(rng, los=False, doppler_hz=cls.doppler)
            samples[i] = state.coefficients(slots, 0)[:, 0]
        cls.samples = samples

    def test_doppler_value(self):
        self.assertAlmostEqual(self.doppler, 77.84, delta=0.05)

    def test_unit_power(self):
        power = np.mean(np.abs(self.samples[:, 0]) ** 2)
        self.assertAlmostEqual(power, 1.0, delta=0.03)

    def test_time_autocorrelation_follows_bessel(self):
        for column, lag in enumerate(self.LAGS, start=1):
            correlation = np.mean(self.samples[:, column] * np.conj(self.samples[:, 0])).real
            expected = special.j0(2.0 * math.pi * self.doppler * lag * settings.SLOT_DURATION_S)
            self.assertAlmostEqual(correlation, expected, delta=0.03, msg=f"lag {lag}")

    def test_shape(self):
        state = create_fading_state(np.random.default_rng(0), los=True)
        self.assertEqual(state.coefficients(np.arange(5), np.arange(66)).shape, (5, 66))

    def test_rician_power_split(self):
        state = create_fading_state(np.random.default_rng(0), los=True, k_factor_db=10.0)
        self.assertAlmostEqual(state.specular_weight ** 2, 10.0 / 11.0)
        self.assertAlmostEqual(state.specular_weight ** 2 + state.diffuse_weight ** 2, 1.0)

    def test_pure_specular_constant_modulus(self):
        state = create_fading_state(np.random.default_rng(0), los=True, k_factor_db=math.inf,
                                    doppler_hz=self.doppler)
        np.testing.assert_allclose(np.abs(state.coefficients(np.arange(100), np.arange(66))), 1.0)

    def test_static_link_constant_in_time(self):
        state = create_fading_state(np.random.default_rng(5), los=False, doppler_hz=0.0)
        h = state.coefficients(np.arange(50), [3])
        np.testing.assert_allclose(h, h[0, 0])


@unittest.skipUnless(SCIPY_AVAILABLE, "numpy and scipy required for channel tests")
class TestShadowing(unittest.TestCase):
    """Test correlated log-normal shadowing."""

    def test_nlos_standard_deviation(self):
        values = np.array([shadowing_sample((0, i), rng_seed=7)[0] for i in range(1, 5001)])
        self.assertAlmostEqual(float(np.std(values)), 7.82, delta=0.25)
        self.assertAlmostEqual(float(np.mean(values)), 0.0, delta=0.35)

    def test_decorrelated_mean(self):
        values = shadowing_sample((1, 2), rng_seed=3, distances=np.arange(0.0, 5e6, 1000.0),
                                  sigma_db=1.0)
        self.assertAlmostEqual(float(np.mean(values)), 0.0, delta=0.05)

    def test_spatial_autocorrelation(self):
        values = shadowing_sample((1, 2), rng_seed=11, distances=np.arange(0.0, 200000.0, 1.0),
                                  sigma_db=1.0)
        lag = int(settings.SHADOWING_CORRELATION_M)
        correlation = np.corrcoef(values[:-lag], values[lag:])[0, 1]
        self.assertAlmostEqual(correlation, math.exp(-1.0), delta=0.05)

    def test_pair_order_irrelevant(self):
        np.testing.assert_array_equal(shadowing_sample((3, 9), 1, distances=(0.0, 5.0)),
                                      shadowing_sample((9, 3), 1, distances=(0.0, 5.0)))

    def test_decreasing_distances_rejected(self):
        with self.assertRaises(ValueError):
            shadowing_sample((1, 2), 1, distances=(5.0, 1.0))

    def test_zero_advance_keeps_value(self):
        process = ShadowingProcess(np.random.default_rng(0))
        before = process.value
        self.assertEqual(process.advance(0.0), before)


@unittest.skipUnless(SCIPY_AVAILABLE, "numpy and scipy required for channel tests")
class TestChannelGenerator(unittest.TestCase):
    """Test link construction and beamformed gains."""

    def setUp(self):
        self.grid = build_grid()
        self.nodes = _s2_nodes(self.grid)
        self.channels = ChannelGenerator(self.nodes, self.grid, seed=4)
        self.rbs = np.arange(settings.NUM_RBS)

    def test_los_states(self):
        self.assertTrue(self.channels.link(0, 0, 1, 0).large_scale.los)
        self.assertTrue(self.channels.link(1, 1, UE_ID, None).large_scale.los)
        self.assertFalse(self.channels.link(0, 0, UE_ID, None).large_scale.los)

    def test_backhaul_planned_los(self):
        """The gNB-NCR segment crosses buildings but the planned link stays LOS."""
        gnb, ncr = self.nodes[0], self.nodes[1]
        self.assertTrue(los_blocked(gnb.position, ncr.position, self.grid))
        self.assertTrue(self.channels.link(0, 0, 1, 0).large_scale.los)

    def test_street_los_probability(self):
        """An unobstructed 140 m access link is LOS with the street-canyon probability."""
        far = (60.0, 415.0, 1.5)
        geometric = ChannelGenerator(_s2_nodes(self.grid, far), self.grid, seed=1, los_probability=False)
        self.assertTrue(geometric.link(1, 1, UE_ID, None).large_scale.los)

        trials = 400
        hits = sum(ChannelGenerator(_s2_nodes(self.grid, far), self.grid, seed=s)
                   .link(1, 1, UE_ID, None).large_scale.los for s in range(trials))
        expected = los_probability_umi(float(np.hypot(200.0 - 60.0, 415.0 - 400.1)))
        self.assertAlmostEqual(hits / trials, expected, delta=0.06)

    def test_link_cached(self):
        self.assertIs(self.channels.link(0, 0, 1, 0), self.channels.link(0, 0, 1, 0))

    def test_reciprocity(self):
        downlink = self.channels.link(0, 0, UE_ID, None)
        uplink = self.channels.link(UE_ID, None, 0, 0)
        for beam in (0, 13, 31):
            np.testing.assert_allclose(self.channels.gains(downlink, 17, self.rbs, beam, None),
                                       self.channels.gains(uplink, 17, self.rbs, None, beam))

    def test_reverse_matrix_is_transpose(self):
        forward = channel_matrix(self.channels.link(0, 0, 1, 0), 3, 5)
        reverse = channel_matrix(self.channels.link(1, 0, 0, 0), 3, 5)
        np.testing.assert_allclose(reverse, forward.T, atol=1e-15)

    def test_fading_sample_structure(self):
        link = self.channels.link(0, 0, UE_ID, None)
        sample = fading_sample(link, 12, 30)
        self.assertEqual(sample.shape, link.shape)
        h = complex(link.fading.coefficients(12, 30)[0, 0])
        self.assertAlmostEqual(np.linalg.norm(sample) ** 2 / sample.size / abs(h) ** 2, 1.0, places=9)
        self.assertEqual(np.linalg.matrix_rank(sample), 1)
        np.testing.assert_allclose(channel_matrix(link, 12, 30), link.amplitude * sample)

    def test_factorized_gain_matches_full_matrix(self):
        link = self.channels.link(0, 0, 1, 0)
        tx_weights = self.channels.codebook(0, 0).beam(9).steering
        rx_weights = self.channels.codebook(1, 0).beam(22).steering
        fast = self.channels.gains(link, 8, [11], 9, 22)[0]
        full = self.channels.gain_with_filters(link, 8, 11, tx_weights, rx_weights)
        self.assertAlmostEqual(abs(fast - full) / abs(full), 0.0, places=9)

    def test_beam_power_table(self):
        link = self.channels.link(0, 0, 1, 0)
        table = self.channels.beam_power_table(link, 2)
        self.assertEqual(table.shape, (32, 32))
        expected = np.mean(np.abs(self.channels.gains(link, 2, self.rbs, 5, 7)) ** 2)
        self.assertAlmostEqual(table[5, 7] / expected, 1.0, places=9)

    def test_deterministic_per_seed(self):
        other = ChannelGenerator(_s2_nodes(self.grid), self.grid, seed=4)
        a = self.channels.gains(self.channels.link(0, 0, UE_ID, None), 40, self.rbs, 3, None)
        b = other.gains(other.link(0, 0, UE_ID, None), 40, self.rbs, 3, None)
        np.testing.assert_array_equal(a, b)

        different = ChannelGenerator(_s2_nodes(self.grid), self.grid, seed=5)
        c = different.gains(different.link(0, 0, UE_ID, None), 40, self.rbs, 3, None)
        self.assertFalse(np.allclose(a, c))

    def test_independent_of_other_nodes(self):
        """Removing the NCR leaves the gNB-UE channel untouched."""
        baseline = ChannelGenerator(_s2_nodes(self.grid, with_ncr=False), self.grid, seed=4)
        self.channels.link(0, 0, 1, 0)  # touch another pair first
        a = self.channels.gains(self.channels.link(0, 0, UE_ID, None), 77, self.rbs, 6, None)
        b = baseline.gains(baseline.link(0, 0, UE_ID, None), 77, self.rbs, 6, None)
        np.testing.assert_array_equal(a, b)

    def test_update_positions(self):
        ue = self.nodes[-1]
        mobility = init_mobility([ue], self.grid, rng_seed=1)
        before = self.channels.link(0, 0, UE_ID, None)
        backhaul = self.channels.link(0, 0, 1, 0)
        moved = step_mobility(mobility, 2.0)
        self.channels.update_positions(moved)

        self.assertEqual(self.channels.epoch, 1)
        after = self.channels.link(0, 0, UE_ID, None)
        self.assertIsNot(before, after)
        self.assertEqual(after.epoch, 1)
        self.assertIs(self.channels.link(0, 0, 1, 0), backhaul)
        self.assertNotEqual(before.large_scale.distance_3d, after.large_scale.distance_3d)

    def test_trace_rows(self):
        self.channels.link(0, 0, 1, 0)
        self.channels.link(1, 1, UE_ID, None)
        rows = self.channels.trace_rows()
        self.assertEqual(len(rows), 2)
        for row in rows:
            for column in ('tx', 'rx', 'path_loss_db', 'shadowing_db', 'los', 'distance_3d_m'):
                self.assertIn(column, row)


def run_tests():
    """Run all channel tests."""
    if not SCIPY_AVAILABLE:
        print("numpy/scipy not available. Please install: pip install numpy scipy")
        return False

    suite = unittest.TestLoader().loadTestsFromModule(sys.modules[__name__])
    runner = unittest.TextTestRunner(verbosity=2)
    result = runner.run(suite)

    return result.wasSuccessful()


if __name__ == '__main__':
    unittest.main()
