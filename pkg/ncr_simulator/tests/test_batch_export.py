"""
Unit tests for campaign batching and output files.
"""

import unittest
import sys
import os
import json
import math
import time
import tempfile

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

try:
    import pandas as pd
    from core.config_manager import SimulationConfig
    from phy.phy_models import Direction
    from metrics.metrics_models import SinrSample, MetricsBundle
    from metrics.statistics import build_percentile_report, OrderingCheck
    from batch.batch_processor import BatchProcessor
    from batch.batch_models import TaskStatus
    from export.csv_exporter import (
        CSVExporter, SAMPLE_COLUMNS, CDF_COLUMNS, ASSOCIATION_COLUMNS,
        RUN_LOG_COLUMNS,
    )
    from export.report_generator import ReportGenerator
    EXPORT_AVAILABLE = True
except ImportError as e:
    EXPORT_AVAILABLE = False
    print(f"Warning: pandas/reportlab not available, skipping export tests: {e}")


def _bundle(scenario, seed, offset=0.0):
    samples = [
        SinrSample(scenario, seed, 1000, "central", Direction.DL, 25, 1.0 / 3.0 + offset),
        SinrSample(scenario, seed, 1001, "side", Direction.UL, 27, -4.25 + offset),
        SinrSample(scenario, seed, 1001, "side", Direction.DL, 30, 7.5 + offset),
    ]
    bundle = MetricsBundle(scenario=scenario, seeds=[seed], samples=samples,
                           num_slots=200, warmup_slots=20, num_ues=2)
    bundle.delivered_bits['DL'] = 30720
    bundle.transport_blocks['DL'] = 4
    bundle.block_errors['DL'] = 1
    bundle.via_ncr_fractions = [0.5]
    return bundle


@unittest.skipUnless(EXPORT_AVAILABLE, "pandas and reportlab required for export tests")
class TestBatchProcessor(unittest.TestCase):
    """Test campaign execution on a thread pool."""

    def test_unknown_scenario_skipped(self):
        processor = BatchProcessor()
        added = processor.add_runs(["s1", "s9", "custom"], [1, 2])
        self.assertEqual([t.label for t in added],
                         ["s1/seed1", "s1/seed2", "custom/seed1", "custom/seed2"])
        self.assertEqual(processor.total_tasks, 4)

    def test_merge_in_seed_order(self):
        def run(scenario, seed):
            # later seeds finish first
            time.sleep(0.02 * (4 - seed))
            return _bundle(scenario, seed)

        processor = BatchProcessor(max_workers=3)
        processor.add_runs(["s2"], [3, 1, 2])
        progress = []
        result = processor.process_batch(run, callback=lambda c, t, label: progress.append((c, t)))

        self.assertEqual(result.successful_runs, 3)
        self.assertEqual(result.bundles["s2"].seeds, [1, 2, 3])
        self.assertEqual([s.seed for s in result.bundles["s2"].samples], [1] * 3 + [2] * 3 + [3] * 3)
        self.assertEqual(progress[-1], (3, 3))
        self.assertEqual(result.success_rate, 1.0)

    def test_failed_run_reported(self):
        def run(scenario, seed):
            if seed == 2:
                raise RuntimeError("diverged")
            return _bundle(scenario, seed)

        processor = BatchProcessor(max_workers=2)
        processor.add_runs(["s1"], [1, 2])
        result = processor.process_batch(run)

        self.assertEqual(result.failed_runs, 1)
        self.assertEqual([t.label for t in result.failures], ["s1/seed2"])
        self.assertIs(result.failures[0].status, TaskStatus.ERROR)
        self.assertEqual(result.failures[0].error_message, "diverged")
        self.assertEqual(result.bundles["s1"].seeds, [1])
        log = result.run_log()
        self.assertEqual([(row['seed'], row['status']) for row in log], [(1, "complete"), (2, "error")])
        self.assertEqual(log[1]['error'], "diverged")
        self.assertEqual(log[1]['samples'], 0)
        self.assertAlmostEqual(result.success_rate, 0.5)

    def test_run_log_order_and_counts(self):
        processor = BatchProcessor(max_workers=2)
        processor.add_runs(["s2", "s1"], [2, 1])
        log = processor.process_batch(_bundle).run_log()
        self.assertEqual([(row['scenario'], row['seed']) for row in log],
                         [("s1", 1), ("s1", 2), ("s2", 1), ("s2", 2)])
        for row in log:
            self.assertEqual((row['samples'], row['dl_blocks'], row['ul_blocks']), (3, 4, 0))
            self.assertAlmostEqual(row['via_ncr_share'], 0.5)


@unittest.skipUnless(EXPORT_AVAILABLE, "pandas and reportlab required for export tests")
class TestCSVExporter(unittest.TestCase):
    """Test CSV outputs."""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.exporter = CSVExporter()
        self.bundles = {"s1": _bundle("s1", 1), "s2": _bundle("s2", 1, offset=2.0)}

    def tearDown(self):
        self.tmp.cleanup()

    def _path(self, name):
        return os.path.join(self.tmp.name, name)

    def test_samples_read_back(self):
        path = self.exporter.export_samples(self.bundles["s1"], self._path("samples_s1.csv"))
        self.assertEqual(list(pd.read_csv(path).columns), SAMPLE_COLUMNS)
        self.assertEqual(self.exporter.read_samples(path), self.bundles["s1"].samples)

    def test_empty_samples_keep_header(self):
        path = self.exporter.export_samples(MetricsBundle(scenario="s3"), self._path("samples_s3.csv"))
        df = pd.read_csv(path)
        self.assertTrue(df.empty)
        self.assertEqual(list(df.columns), SAMPLE_COLUMNS)

    def test_run_log(self):
        processor = BatchProcessor(max_workers=1)
        processor.add_runs(["s1"], [1, 2])
        result = processor.process_batch(
            lambda scenario, seed: _bundle(scenario, seed) if seed == 1 else 1 / 0)
        df = pd.read_csv(self.exporter.export_run_log(result.run_log(), self._path("runs.csv")),
                         keep_default_na=False)
        self.assertEqual(list(df.columns), RUN_LOG_COLUMNS)
        self.assertEqual(list(df["status"]), ["complete", "error"])
        self.assertEqual(list(df["samples"]), [3, 0])
        self.assertEqual(df["error"][1], "division by zero")

    def test_cdf(self):
        samples = {s: b.samples for s, b in self.bundles.items()}
        df = pd.read_csv(self.exporter.export_cdf(samples, self._path("cdf.csv")))
        self.assertEqual(list(df.columns), CDF_COLUMNS)
        for _, group in df.groupby(['scenario', 'direction', 'group']):
            self.assertEqual(group['probability'].iloc[-1], 1.0)
            self.assertTrue(group['sinr_db'].is_monotonic_increasing)
        # no UL samples from central-block UEs
        self.assertTrue(df[(df.direction == 'UL') & (df.group == 'central')].empty)

    def test_percentile_table_read_back(self):
        samples = {"s2": self.bundles["s2"].samples}
        report = build_percentile_report(samples, baseline="s1")
        path = self.exporter.export_percentile_report(report, self._path("percentiles.csv"))
        restored = self.exporter.read_percentile_report(path)
        self.assertEqual(len(restored.entries), len(report.entries))
        entry = restored.get("s2", "DL", "all")
        self.assertAlmostEqual(entry.values[0.5], report.get("s2", "DL", "all").values[0.5])
        self.assertIsNone(entry.deltas[0.5])

    def test_association_trace(self):
        rows = [{'scenario': 's2', 'seed': 1, 'slot': 80, 'ue': 1000, 'path': 'ncr', 'ncr': 1,
                 'panel': 1, 'gnb_beam': 4, 'access_beam': 9, 'rsrp_dbm': -71.5}]
        df = pd.read_csv(self.exporter.export_association_trace(rows, self._path("associations.csv")))
        self.assertEqual(list(df.columns), ASSOCIATION_COLUMNS)
        self.assertEqual(df['access_beam'].iloc[0], 9)

    def test_channel_trace_leading_columns(self):
        rows = [{'pathloss_db': 98.0, 'rx': 1000, 'tx': 0, 'scenario': 's1', 'seed': 1,
                 'tx_panel': 0, 'rx_panel': None, 'los': True}]
        df = pd.read_csv(self.exporter.export_channel_trace(rows, self._path("channel_trace.csv")))
        self.assertEqual(list(df.columns)[:6], ['scenario', 'seed', 'tx', 'tx_panel', 'rx', 'rx_panel'])

    def test_summary_csv(self):
        df = pd.read_csv(self.exporter.export_summary_csv(self.bundles, self._path("summary.csv")))
        self.assertEqual(list(df['Scenario']), ["s1", "s2"])
        self.assertEqual(df['Served via NCR'].iloc[1], "50.0%")
        self.assertAlmostEqual(df['DL BLER'].iloc[0], 0.25)


@unittest.skipUnless(EXPORT_AVAILABLE, "pandas and reportlab required for export tests")
class TestReportGenerator(unittest.TestCase):
    """Test the JSON summary and the PDF report."""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.config = SimulationConfig(scenario="all", seeds=[1], num_slots=200, warmup_slots=20)
        self.bundles = {"s1": _bundle("s1", 1), "s2": _bundle("s2", 1, offset=2.0)}
        samples = {s: b.samples for s, b in self.bundles.items()}
        self.report = build_percentile_report(samples)
        self.orderings = [OrderingCheck("s2 DL median above baseline", 2.0, 1.0, True)]
        self.generator = ReportGenerator()

    def tearDown(self):
        self.tmp.cleanup()

    def test_summary_document(self):
        summary = self.generator.build_summary(self.config, self.bundles, self.report, self.orderings)
        self.assertEqual(summary['metadata']['num_slots'], 200)
        self.assertEqual(list(summary['scenarios']), ["s1", "s2"])
        self.assertEqual(summary['orderings'][0]['holds'], True)
        self.assertAlmostEqual(summary['percentiles']['entries'][0]['delta_db']['0.5'], 0.0)

    def test_json_written(self):
        summary = self.generator.build_summary(self.config, self.bundles, self.report)
        path = self.generator.write_json_summary(summary, os.path.join(self.tmp.name, "summary.json"))
        with open(path, encoding='utf-8') as f:
            loaded = json.load(f)
        self.assertEqual(loaded['scenarios']['s2']['num_samples'], 3)
        self.assertEqual(loaded['orderings'], [])
        self.assertTrue(math.isclose(loaded['scenarios']['s1']['bler']['DL'], 0.25))

    def test_pdf_report(self):
        summary = self.generator.build_summary(self.config, self.bundles, self.report, self.orderings)
        path = self.generator.generate_percentile_report(summary, self.report,
                                                         os.path.join(self.tmp.name, "report.pdf"))
        with open(path, 'rb') as f:
            self.assertEqual(f.read(4), b'%PDF')


def run_tests():
    """Run all batch and export tests."""
    if not EXPORT_AVAILABLE:
        print("pandas/reportlab not available. Please install: pip install pandas reportlab")
        return False

    suite = unittest.TestLoader().loadTestsFromModule(sys.modules[__name__])
    runner = unittest.TextTestRunner(verbosity=2)
    result = runner.run(suite)

    return result.wasSuccessful()


if __name__ == '__main__':
    unittest.main()
