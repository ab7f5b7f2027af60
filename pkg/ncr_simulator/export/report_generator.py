"""
JSON summary and PDF percentile report of a simulation campaign.
"""

import json
import logging
from dataclasses import asdict
from typing import List, Dict, Any, Optional
from datetime import datetime
from reportlab.lib.pagesizes import letter
from reportlab.lib import colors
from reportlab.lib.styles import getSampleStyleSheet, ParagraphStyle
from reportlab.lib.enums import TA_CENTER
from reportlab.platypus import (
    SimpleDocTemplate, Paragraph, Spacer, PageBreak, Table, TableStyle
)
from reportlab.platypus.flowables import Flowable

from core import settings
from core.config_manager import SimulationConfig
from metrics.metrics_models import MetricsBundle, PercentileReport
from metrics.statistics import OrderingCheck

logger = logging.getLogger(__name__)


def _format_db(value: Optional[float]) -> str:
    return "-" if value is None else f"{value:+.2f}"


class ReportGenerator:
    """Generate the campaign summary (JSON) and an optional PDF report."""

    def __init__(self):
        self.styles = getSampleStyleSheet()
        self._setup_custom_styles()

    def _setup_custom_styles(self):
        """Setup custom paragraph styles for report."""
        self.styles.add(ParagraphStyle(
            name='CoverTitle',
            parent=self.styles['Title'],
            fontSize=24,
            spaceAfter=30,
            alignment=TA_CENTER,
            textColor=colors.HexColor('#2c3e50')
        ))

        self.styles.add(ParagraphStyle(
            name='CoverSubtitle',
            parent=self.styles['Normal'],
            fontSize=14,
            textColor=colors.HexColor('#7f8c8d'),
            alignment=TA_CENTER,
            spaceAfter=20
        ))

        self.styles.add(ParagraphStyle(
            name='SectionHeader',
            parent=self.styles['Heading2'],
            fontSize=16,
            spaceAfter=12,
            spaceBefore=12,
            textColor=colors.HexColor('#34495e')
        ))

    def build_summary(self, config: SimulationConfig, bundles: Dict[str, MetricsBundle],
                      report: Optional[PercentileReport] = None,
                      orderings: Optional[List[OrderingCheck]] = None) -> Dict[str, Any]:
        """
        Summary document of a campaign.

        Returns:
            Dictionary with run metadata, per-scenario figures, the
            percentile table and the ordering checks
        """
        return {
            'generated_at': datetime.now().isoformat(),
            'metadata': {
                'seeds': list(config.seeds),
                'num_slots': config.num_slots,
                'warmup_slots': config.warmup_slots,
                'num_ues': config.num_ues,
                'traffic_mbps': config.traffic_mbps,
                'full_buffer': config.full_buffer,
                't_access_slots': config.t_access_slots,
                't_backhaul_slots': config.t_backhaul_slots,
                'channel_scenario': config.channel_scenario,
                'ncr_max_gain_db': config.ncr_max_gain_db,
                'ncr_force_off': config.ncr_force_off,
            },
            'scenarios': {name: bundles[name].summary() for name in sorted(bundles)},
            'percentiles': report.to_dict() if report else None,
            'orderings': [asdict(check) for check in orderings] if orderings else [],
        }

    def write_json_summary(self, summary: Dict[str, Any], output_path: str) -> str:
        """Write a summary document as JSON."""
        try:
            with open(output_path, 'w', encoding='utf-8') as f:
                json.dump(summary, f, indent=2, allow_nan=True)
        except Exception as e:
            logger.error(f"Error writing summary: {str(e)}")
            raise
        logger.info(f"Wrote summary: {output_path}")
        return output_path

    def generate_percentile_report(self, summary: Dict[str, Any],
                                   report: PercentileReport, output_path: str) -> str:
        """
        Generate a PDF with the key figures and the percentile table.

        Args:
            summary: Document from ``build_summary``
            report: Percentile table
            output_path: Path where PDF should be saved

        Returns:
            Path to generated PDF
        """
        try:
            doc = SimpleDocTemplate(
                output_path,
                pagesize=letter,
                rightMargin=54,
                leftMargin=54,
                topMargin=72,
                bottomMargin=36
            )

            story = []
            story.extend(self._create_cover_page(summary))
            story.extend(self._create_percentile_section(report))
            if summary.get('orderings'):
                story.extend(self._create_ordering_section(summary['orderings']))

            doc.build(story)

            logger.info(f"Generated report: {output_path}")
            return output_path

        except Exception as e:
            logger.error(f"Error generating report: {str(e)}")
            raise

    def _create_cover_page(self, summary: Dict[str, Any]) -> List[Flowable]:
        """Cover page with campaign metadata and per-scenario figures."""
        elements = []
        meta = summary['metadata']

        elements.append(Spacer(1, 60))
        elements.append(Paragraph(settings.APP_TITLE, self.styles['CoverTitle']))
        elements.append(Paragraph(
            f"{len(meta['seeds'])} seed(s), {meta['num_slots']} slots, {meta['num_ues']} UEs",
            self.styles['CoverSubtitle']
        ))
        elements.append(Spacer(1, 30))

        data = [["Scenario", "DL Mbps", "UL Mbps", "DL BLER", "UL BLER", "Via NCR"]]
        for name, figures in summary['scenarios'].items():
            data.append([
                name,
                f"{figures['throughput_mbps']['DL']:.2f}",
                f"{figures['throughput_mbps']['UL']:.2f}",
                f"{figures['bler']['DL']:.3f}",
                f"{figures['bler']['UL']:.3f}",
                f"{figures['via_ncr_share']:.1%}",
            ])

        table = Table(data, colWidths=[70, 70, 70, 70, 70, 70])
        table.setStyle(self._grid_style())
        elements.append(table)
        elements.append(PageBreak())
        return elements

    def _create_percentile_section(self, report: PercentileReport) -> List[Flowable]:
        """SINR percentiles and gains over the baseline."""
        elements = [Paragraph(f"SINR gain over {report.baseline} (dB)", self.styles['SectionHeader'])]

        header = ["Scenario", "Dir", "Group"]
        header += [f"p{int(round(q * 100))}" for q in report.percentiles]
        header += [f"Δp{int(round(q * 100))}" for q in report.percentiles]
        data = [header]
        for entry in report.entries:
            row = [entry.scenario, entry.direction, entry.group]
            row += [f"{entry.values[q]:.2f}" for q in report.percentiles]
            row += [_format_db(entry.deltas.get(q)) for q in report.percentiles]
            data.append(row)

        table = Table(data)
        table.setStyle(self._grid_style())
        elements.append(table)
        elements.append(Spacer(1, 15))
        return elements

    def _create_ordering_section(self, orderings: List[Dict[str, Any]]) -> List[Flowable]:
        elements = [Paragraph("Scenario orderings", self.styles['SectionHeader'])]
        data = [["Ordering", "Margin (dB)", "Confidence", "Holds"]]
        for check in orderings:
            data.append([check['name'], f"{check['margin_db']:+.2f}",
                         f"{check['confidence']:.2f}", "✓" if check['holds'] else "✗"])
        table = Table(data, colWidths=[260, 80, 80, 50])
        table.setStyle(self._grid_style())
        elements.append(table)
        return elements

    def _grid_style(self) -> TableStyle:
        return TableStyle([
            ('ALIGN', (0, 0), (-1, -1), 'CENTER'),
            ('FONTNAME', (0, 0), (-1, 0), 'Helvetica-Bold'),
            ('FONTSIZE', (0, 0), (-1, -1), 8),
            ('GRID', (0, 0), (-1, -1), 0.5, colors.grey),
            ('BACKGROUND', (0, 0), (-1, 0), colors.HexColor('#34495e')),
            ('TEXTCOLOR', (0, 0), (-1, 0), colors.whitesmoke),
            ('VALIGN', (0, 0), (-1, -1), 'MIDDLE'),
            ('TOPPADDING', (0, 0), (-1, -1), 4),
            ('BOTTOMPADDING', (0, 0), (-1, -1), 4),
        ])
