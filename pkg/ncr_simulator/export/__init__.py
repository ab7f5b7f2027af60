"""
Export module for CSV tables, the JSON summary and the PDF report.
"""

from .report_generator import ReportGenerator
from .csv_exporter import CSVExporter

__all__ = [
    'ReportGenerator',
    'CSVExporter'
]
