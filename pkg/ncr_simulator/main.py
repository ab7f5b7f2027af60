"""
NCR mmWave System-Level Simulator
Main entry point: command-line front end.
"""

import sys
import os
import argparse
import logging
from typing import Dict, List, Optional

# Add current directory to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from core import settings
from core.config_manager import ConfigManager, SimulationConfig
from core.exceptions import ConfigurationError
from batch.batch_processor import BatchProcessor
from export.csv_exporter import CSVExporter
from export.report_generator import ReportGenerator
from mac.engine import run_single
from metrics.metrics_models import MetricsBundle
from metrics.statistics import build_percentile_report, check_orderings
from utils.helpers import ensure_output_dir, format_duration

logger = logging.getLogger("ncr_simulator")

EXIT_OK = 0
EXIT_RUN_FAILED = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    """Command-line parser."""
    parser = argparse.ArgumentParser(
        prog="ncr_simulator",
        description="Slot-level simulator of mmWave cells assisted by network-controlled repeaters.",
    )
    parser.add_argument('--scenario', choices=settings.SCENARIO_NAMES + ['all', 'custom'],
                        help='deployment scenario, or all to run s1 to s5')
    parser.add_argument('--seeds', help='seed list, e.g. 1..10 or 1,4,7')
    parser.add_argument('--slots', type=int, dest='num_slots', help='slots per run')
    parser.add_argument('--ues', type=int, dest='num_ues', help='UEs per drop')
    parser.add_argument('--traffic-mbps', type=float, dest='traffic_mbps',
                        help='CBR rate per UE and direction')
    parser.add_argument('--full-buffer', action='store_true', default=None, dest='full_buffer',
                        help='keep every bearer backlogged')
    parser.add_argument('--out', dest='output_dir', help='output directory')
    parser.add_argument('--config', help='JSON or key = value configuration file')
    parser.add_argument('--preset', choices=['quick', 'reference', 'full_buffer'],
                        help='named set of defaults applied before the other flags')
    parser.add_argument('--scenario-file', dest='scenario_file',
                        help='custom NCR deployment (used with --scenario custom)')
    parser.add_argument('--validate-config', nargs='?', const='only', choices=['only'],
                        help='validate the configuration and exit')
    parser.add_argument('--workers', type=int, dest='max_workers', help='parallel runs')
    parser.add_argument('--channel-trace', action='store_true', default=None, dest='channel_trace',
                        help='write large-scale parameters of every link')
    parser.add_argument('--association-trace', action='store_true', default=None,
                        dest='association_trace', help='write associations at every access sweep')
    parser.add_argument('--pdf-report', action='store_true', default=None, dest='pdf_report',
                        help='write a PDF percentile report')
    parser.add_argument('--log-level', default='INFO',
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'])
    return parser


def load_configuration(args: argparse.Namespace) -> SimulationConfig:
    """
    Merge config file, preset and flags into a validated configuration.

    Raises:
        ConfigurationError: If any source is invalid
    """
    manager = ConfigManager(args.config)
    if args.preset:
        manager.apply_preset(args.preset)
    manager.update_config(
        scenario=args.scenario,
        seeds=args.seeds,
        num_slots=args.num_slots,
        num_ues=args.num_ues,
        traffic_mbps=args.traffic_mbps,
        full_buffer=args.full_buffer,
        output_dir=args.output_dir,
        scenario_file=args.scenario_file,
        max_workers=args.max_workers,
        channel_trace=args.channel_trace,
        association_trace=args.association_trace,
        pdf_report=args.pdf_report,
    )
    return manager.get_config().check()


def write_outputs(config: SimulationConfig, bundles: Dict[str, MetricsBundle]) -> List[str]:
    """Write every output file of a campaign; returns the paths written."""
    out = config.output_dir
    exporter = CSVExporter()
    written = []

    for scenario in sorted(bundles):
        written.append(exporter.export_samples(bundles[scenario],
                                               os.path.join(out, f"samples_{scenario}.csv")))

    samples = {scenario: bundle.samples for scenario, bundle in bundles.items()}
    written.append(exporter.export_cdf(samples, os.path.join(out, "cdf.csv")))

    report = build_percentile_report(samples, baseline="s1")
    written.append(exporter.export_percentile_report(report, os.path.join(out, "percentiles.csv")))
    written.append(exporter.export_summary_csv(bundles, os.path.join(out, "summary.csv")))

    orderings = []
    if "s1" in bundles and len(bundles) > 1:
        orderings = check_orderings(samples, baseline="s1")
        for check in orderings:
            level = logging.INFO if check.holds else logging.WARNING
            logger.log(level, f"{check.name}: margin {check.margin_db:+.2f} dB, "
                              f"confidence {check.confidence:.2f}")

    if config.association_trace:
        rows = [row for s in sorted(bundles) for row in bundles[s].association_trace]
        written.append(exporter.export_association_trace(rows, os.path.join(out, "associations.csv")))
    if config.channel_trace:
        rows = [row for s in sorted(bundles) for row in bundles[s].channel_trace]
        written.append(exporter.export_channel_trace(rows, os.path.join(out, "channel_trace.csv")))

    generator = ReportGenerator()
    summary = generator.build_summary(config, bundles, report, orderings)
    written.append(generator.write_json_summary(summary, os.path.join(out, "summary.json")))
    if config.pdf_report:
        written.append(generator.generate_percentile_report(summary, report,
                                                            os.path.join(out, "report.pdf")))
    return written


def run_cli(argv: Optional[List[str]] = None) -> int:
    """
    Parse flags, run the campaign and write its outputs.

    Returns:
        0 on success, 2 on usage or configuration errors, 1 when a run fails
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    logging.basicConfig(level=getattr(logging, args.log_level),
                        format='%(asctime)s %(levelname)s %(name)s: %(message)s')

    try:
        config = load_configuration(args)
    except ConfigurationError as e:
        for problem in e.problems:
            logger.error(f"Configuration error: {problem}")
        return EXIT_USAGE

    if args.validate_config:
        logger.info(f"Configuration valid: {len(config.scenario_list)} scenario(s), "
                    f"{len(config.seeds)} seed(s), {config.num_slots} slots")
        return EXIT_OK

    try:
        ensure_output_dir(config.output_dir)
    except OSError as e:
        logger.error(f"Output directory not writable: {config.output_dir} ({e})")
        return EXIT_USAGE

    processor = BatchProcessor(max_workers=config.max_workers)
    processor.add_runs(config.scenario_list, config.seeds)

    def progress(current: int, total: int, label: str) -> None:
        logger.info(f"[{current}/{total}] {label}")

    result = processor.process_batch(
        lambda scenario, seed: run_single(config.for_scenario(scenario), scenario, seed),
        callback=progress,
    )
    try:
        CSVExporter().export_run_log(result.run_log(), os.path.join(config.output_dir, "runs.csv"))
    except OSError as e:
        logger.error(f"Cannot write the run log: {e}")
        return EXIT_USAGE

    if result.failed_runs or not result.bundles:
        for task in result.failures:
            logger.error(f"Run {task.label} failed: {task.error_message}")
        return EXIT_RUN_FAILED

    try:
        written = write_outputs(config, result.bundles)
    except OSError as e:
        logger.error(f"Cannot write outputs: {e}")
        return EXIT_USAGE

    logger.info(f"Wrote {len(written) + 1} file(s) to {config.output_dir} "
                f"in {format_duration(result.processing_time)}")
    return EXIT_OK


def main():
    """Console entry point."""
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
