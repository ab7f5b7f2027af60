"""
Export SINR samples, CDFs, percentile tables and traces to CSV.
"""

import logging
from typing import List, Dict, Any, Sequence

import pandas as pd

from core import settings
from phy.phy_models import Direction
from metrics.metrics_models import SinrSample, PercentileReport, MetricsBundle
from metrics.statistics import cdf
from core.exceptions import EmptySampleError

logger = logging.getLogger(__name__)

SAMPLE_COLUMNS = ['scenario', 'seed', 'ue', 'group', 'direction', 'slot', 'sinr_db']
CDF_COLUMNS = ['scenario', 'direction', 'group', 'sinr_db', 'probability']
ASSOCIATION_COLUMNS = ['scenario', 'seed', 'slot', 'ue', 'path', 'ncr', 'panel',
                       'gnb_beam', 'access_beam', 'rsrp_dbm']
RUN_LOG_COLUMNS = ['scenario', 'seed', 'status', 'samples', 'dl_blocks', 'ul_blocks',
                   'via_ncr_share', 'error']


class CSVExporter:
    """Write and read back the simulator's tabular outputs."""

    def _write(self, df: pd.DataFrame, output_path: str, what: str) -> str:
        try:
            df.to_csv(output_path, index=False, encoding='utf-8')
        except Exception as e:
            logger.error(f"Error exporting {what} to CSV: {str(e)}")
            raise
        logger.info(f"Exported {len(df)} {what} rows to CSV: {output_path}")
        return output_path

    def export_samples(self, bundle: MetricsBundle, output_path: str) -> str:
        """
        Export the SINR samples of a scenario, one sample per line.

        Args:
            bundle: Metrics of one scenario
            output_path: Path where CSV file should be saved

        Returns:
            Path to created CSV file
        """
        rows = [sample.to_dict() for sample in bundle.samples]
        if not rows:
            logger.warning(f"No samples to export for {bundle.scenario}")
        df = pd.DataFrame(rows, columns=SAMPLE_COLUMNS)
        return self._write(df, output_path, "sample")

    def read_samples(self, input_path: str) -> List[SinrSample]:
        """Read a sample CSV back into SinrSample objects."""
        df = pd.read_csv(input_path, float_precision='round_trip')
        return [
            SinrSample(scenario=str(row.scenario), seed=int(row.seed), ue_id=int(row.ue),
                       block_group=str(row.group), direction=Direction(row.direction),
                       slot=int(row.slot), sinr_db=float(row.sinr_db))
            for row in df.itertuples(index=False)
        ]

    def export_cdf(self, samples_by_scenario: Dict[str, List[SinrSample]], output_path: str) -> str:
        """
        Export empirical CDFs per (scenario, direction, block group).

        Empty combinations are skipped.
        """
        rows = []
        for scenario in sorted(samples_by_scenario):
            for direction in ('DL', 'UL'):
                for group in settings.BLOCK_GROUPS:
                    try:
                        steps = cdf(samples_by_scenario[scenario], group, direction)
                    except EmptySampleError:
                        continue
                    rows.extend({'scenario': scenario, 'direction': direction, 'group': group,
                                 'sinr_db': x, 'probability': p} for x, p in steps)
        return self._write(pd.DataFrame(rows, columns=CDF_COLUMNS), output_path, "CDF")

    def export_percentile_report(self, report: PercentileReport, output_path: str) -> str:
        """Export the percentile table; gains missing a baseline are left empty."""
        return self._write(pd.DataFrame(report.to_rows()), output_path, "percentile")

    def read_percentile_report(self, input_path: str,
                               percentiles: Sequence[float] = settings.PERCENTILES,
                               baseline: str = "s1") -> PercentileReport:
        """Read a percentile CSV back into a PercentileReport."""
        df = pd.read_csv(input_path, float_precision='round_trip')
        return PercentileReport.from_rows(df.to_dict(orient='records'), list(percentiles), baseline)

    def export_association_trace(self, rows: List[Dict[str, Any]], output_path: str) -> str:
        """Export association decisions taken at each access sweep."""
        return self._write(pd.DataFrame(rows, columns=ASSOCIATION_COLUMNS), output_path, "association")

    def export_channel_trace(self, rows: List[Dict[str, Any]], output_path: str) -> str:
        """Export large-scale parameters of every evaluated link."""
        df = pd.DataFrame(rows)
        if not df.empty:
            leading = [c for c in ('scenario', 'seed', 'tx', 'tx_panel', 'rx', 'rx_panel') if c in df.columns]
            df = df[leading + [c for c in df.columns if c not in leading]]
        return self._write(df, output_path, "channel trace")

    def export_run_log(self, rows: List[Dict[str, Any]], output_path: str) -> str:
        """Export one line per (scenario, seed) run of a campaign."""
        return self._write(pd.DataFrame(rows, columns=RUN_LOG_COLUMNS), output_path, "run log")

    def export_summary_csv(self, bundles: Dict[str, MetricsBundle], output_path: str) -> str:
        """
        Export key figures per scenario.

        Args:
            bundles: Scenario name -> MetricsBundle
            output_path: Path where CSV file should be saved

        Returns:
            Path to created CSV file
        """
        rows = []
        for scenario in sorted(bundles):
            bundle = bundles[scenario]
            rows.append({
                'Scenario': scenario,
                'Seeds': len(bundle.seeds),
                'Samples': len(bundle.samples),
                'DL Throughput (Mbps)': f"{bundle.throughput_mbps('DL'):.3f}",
                'UL Throughput (Mbps)': f"{bundle.throughput_mbps('UL'):.3f}",
                'DL BLER': f"{bundle.bler('DL'):.3f}",
                'UL BLER': f"{bundle.bler('UL'):.3f}",
                'Served via NCR': f"{bundle.via_ncr_share:.1%}",
            })
        return self._write(pd.DataFrame(rows), output_path, "summary")
