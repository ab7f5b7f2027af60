"""
Unit tests for configuration handling, helpers and the coefficient cache.
"""

import unittest
import sys
import os
import json
import math
import tempfile

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

try:
    import numpy as np
    from core import settings
    from core.config_manager import SimulationConfig, ConfigManager, PRESETS, parse_key_value_text
    from core.exceptions import ConfigurationError
    from core.performance_cache import CoefficientCache
    from utils.helpers import (
        db_to_linear, linear_to_db, dbm_to_watt, watt_to_dbm, wrap_angle_deg,
        direction_angles, unit_vector, angle_between_deg, parse_seed_range,
        ensure_output_dir, format_duration
    )
    NUMPY_AVAILABLE = True
except ImportError as e:
    NUMPY_AVAILABLE = False
    print(f"Warning: numpy not available, skipping config tests: {e}")


@unittest.skipUnless(NUMPY_AVAILABLE, "numpy required for config tests")
class TestSimulationConfig(unittest.TestCase):
    """Test defaults and validation."""

    def test_defaults_valid(self):
        config = SimulationConfig()
        self.assertEqual(config.validate(), [])
        self.assertEqual(config.num_slots, 4000)
        self.assertEqual(config.num_ues, 72)
        self.assertEqual(config.packet_period_slots, 6)
        self.assertAlmostEqual(config.simulated_time_s, 1.0)

    def test_all_problems_collected(self):
        config = SimulationConfig(scenario="s7", num_slots=0, num_ues=-1, seeds=[], target_bler=1.0)
        problems = config.validate()
        self.assertEqual(len(problems), 5)
        with self.assertRaises(ConfigurationError) as ctx:
            config.check()
        self.assertEqual(ctx.exception.problems, problems)

    def test_custom_needs_file(self):
        self.assertIn("scenario 'custom' requires scenario_file",
                      SimulationConfig(scenario="custom").validate())

    def test_sweep_periods(self):
        self.assertTrue(SimulationConfig(t_backhaul_slots=40, t_access_slots=80).validate())
        self.assertTrue(SimulationConfig(t_access_slots=0).validate())

    def test_mobility_and_scheduler_limits(self):
        self.assertIn("mobility_step_slots must be positive",
                      SimulationConfig(mobility_step_slots=0).validate())
        self.assertIn("scheduler_max_wait_slots must be non-negative",
                      SimulationConfig(scheduler_max_wait_slots=-1).validate())
        self.assertEqual(SimulationConfig(mobility_step_slots=1, scheduler_max_wait_slots=0).validate(), [])

    def test_warmup_shorter_than_run(self):
        self.assertTrue(SimulationConfig(num_slots=100, warmup_slots=100).validate())

    def test_scenario_list(self):
        self.assertEqual(SimulationConfig(scenario="all").scenario_list, settings.SCENARIO_NAMES)
        bound = SimulationConfig(scenario="all", seeds=[4]).for_scenario("s3")
        self.assertEqual((bound.scenario_list, bound.seeds), (["s3"], [4]))


@unittest.skipUnless(NUMPY_AVAILABLE, "numpy required for config tests")
class TestConfigManager(unittest.TestCase):
    """Test config files, presets and overrides."""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tmp.cleanup()

    def _write(self, name, text):
        path = os.path.join(self.tmp.name, name)
        with open(path, 'w') as f:
            f.write(text)
        return path

    def test_key_value_file(self):
        path = self._write("run.cfg", "# campaign\nscenario = all\nseeds = 1..3\n"
                                      "num_ues = 24   # per drop\nfull_buffer = yes\ntraffic_mbps = 4\n"
                                      "los_probability = off\nmobility_step_slots = 1\n")
        config = ConfigManager(path).get_config()
        self.assertEqual(config.scenario, "all")
        self.assertEqual(config.seeds, [1, 2, 3])
        self.assertEqual(config.num_ues, 24)
        self.assertTrue(config.full_buffer)
        self.assertEqual(config.traffic_mbps, 4.0)
        self.assertFalse(config.los_probability)
        self.assertEqual(config.mobility_step_slots, 1)

    def test_json_file(self):
        path = self._write("run.json", json.dumps({"num_slots": 1000, "seeds": [5, 6],
                                                   "ncr_max_gain_db": 80}))
        config = ConfigManager(path).get_config()
        self.assertEqual(config.num_slots, 1000)
        self.assertEqual(config.seeds, [5, 6])
        self.assertIsInstance(config.ncr_max_gain_db, float)

    def test_missing_file(self):
        with self.assertRaises(ConfigurationError):
            ConfigManager(os.path.join(self.tmp.name, "absent.cfg"))

    def test_malformed_line(self):
        with self.assertRaises(ConfigurationError):
            parse_key_value_text("num_slots = 10\nnum_ues 5\n")

    def test_bad_value(self):
        path = self._write("bad.cfg", "num_slots = many\n")
        with self.assertRaises(ConfigurationError):
            ConfigManager(path)

    def test_unknown_key_ignored(self):
        config = ConfigManager(self._write("extra.cfg", "colour = blue\n")).get_config()
        self.assertFalse(hasattr(config, "colour"))

    def test_presets(self):
        manager = ConfigManager()
        manager.apply_preset("reference")
        self.assertEqual(manager.get_config().seeds, list(range(1, 11)))
        manager.apply_preset("full_buffer")
        self.assertTrue(manager.get_config().full_buffer)
        self.assertEqual(manager.get_config().packet_period_slots, 1)
        with self.assertRaises(ConfigurationError):
            manager.apply_preset("overnight")
        self.assertEqual(PRESETS["quick"]["num_slots"], 800)

    def test_update_skips_none(self):
        manager = ConfigManager()
        manager.update_config(num_slots=None, seeds="2,4", output_dir="out")
        config = manager.get_config()
        self.assertEqual(config.num_slots, settings.DEFAULT_SLOTS)
        self.assertEqual(config.seeds, [2, 4])
        self.assertEqual(config.output_dir, "out")

    def test_save_and_reload(self):
        manager = ConfigManager()
        manager.update_config(scenario="s4", num_ues=12)
        path = os.path.join(self.tmp.name, "saved.json")
        self.assertTrue(manager.export_config(path))
        reloaded = ConfigManager(path).get_config()
        self.assertEqual((reloaded.scenario, reloaded.num_ues), ("s4", 12))
        self.assertFalse(ConfigManager().save_config())


@unittest.skipUnless(NUMPY_AVAILABLE, "numpy required for config tests")
class TestHelpers(unittest.TestCase):
    """Test unit conversions and small utilities."""

    def test_db_conversions(self):
        self.assertAlmostEqual(float(db_to_linear(30.0)), 1000.0)
        self.assertAlmostEqual(float(linear_to_db(0.01)), -20.0)
        self.assertEqual(float(linear_to_db(0.0)), float('-inf'))
        self.assertAlmostEqual(float(dbm_to_watt(30.0)), 1.0)
        self.assertAlmostEqual(float(watt_to_dbm(1e-3)), 0.0)

    def test_wrap_angle(self):
        self.assertEqual(wrap_angle_deg(190.0), -170.0)
        self.assertEqual(wrap_angle_deg(-180.0), 180.0)
        self.assertEqual(wrap_angle_deg(540.0), 180.0)
        self.assertEqual(wrap_angle_deg(-30.0), -30.0)

    def test_direction_angles(self):
        azimuth, elevation = direction_angles(unit_vector(-120.0, 35.0))
        self.assertAlmostEqual(azimuth, -120.0)
        self.assertAlmostEqual(elevation, 35.0)
        self.assertAlmostEqual(angle_between_deg(np.array([1.0, 0, 0]), np.array([0, 2.0, 0])), 90.0)

    def test_seed_range(self):
        self.assertEqual(parse_seed_range("1..4"), [1, 2, 3, 4])
        self.assertEqual(parse_seed_range("7, 3,3"), [3, 7])
        with self.assertRaises(ValueError):
            parse_seed_range("5..2")
        with self.assertRaises(ValueError):
            parse_seed_range(" , ")

    def test_output_dir(self):
        with tempfile.TemporaryDirectory() as tmp:
            target = ensure_output_dir(os.path.join(tmp, "a", "b"))
            self.assertTrue(target.is_dir())
            self.assertEqual(os.listdir(target), [])
            blocker = os.path.join(tmp, "file")
            open(blocker, 'w').close()
            with self.assertRaises(OSError):
                ensure_output_dir(os.path.join(blocker, "sub"))

    def test_format_duration(self):
        self.assertEqual(format_duration(12.34), "12.3 s")
        self.assertEqual(format_duration(125.0), "2 min 5 s")


@unittest.skipUnless(NUMPY_AVAILABLE, "numpy required for config tests")
class TestCoefficientCache(unittest.TestCase):
    """Test the LRU cache of fading coefficients."""

    def test_lru_eviction(self):
        cache = CoefficientCache(max_size=2)
        cache.put((0, 1, 5), "a")
        cache.put((0, 2, 5), "b")
        cache.get((0, 1, 5))
        cache.put((0, 3, 5), "c")
        self.assertIsNone(cache.get((0, 2, 5)))
        self.assertEqual(cache.get((0, 1, 5)), "a")

    def test_stats(self):
        cache = CoefficientCache()
        cache.put("k", 1)
        cache.get("k")
        cache.get("missing")
        stats = cache.get_stats()
        self.assertEqual((stats['hits'], stats['misses'], stats['size']), (1, 1, 1))
        self.assertTrue(math.isclose(stats['hit_rate'], 0.5))

    def test_invalidate(self):
        cache = CoefficientCache()
        for slot in range(4):
            cache.put((0, 1, slot), slot)
        self.assertEqual(cache.invalidate(lambda key: key[2] < 2), 2)
        self.assertEqual(cache.get_stats()['size'], 2)
        cache.clear()
        self.assertEqual(cache.get_stats()['size'], 0)


def run_tests():
    """Run all config tests."""
    if not NUMPY_AVAILABLE:
        print("numpy not available. Please install: pip install numpy")
        return False

    suite = unittest.TestLoader().loadTestsFromModule(sys.modules[__name__])
    runner = unittest.TextTestRunner(verbosity=2)
    result = runner.run(suite)

    return result.wasSuccessful()


if __name__ == '__main__':
    unittest.main()
