"""
SINR samples, percentile reports and ordering checks.
"""

from .metrics_models import SinrSample, PercentileEntry, PercentileReport, MetricsBundle
from .statistics import (
    cdf, empirical_cdf, quantile, percentile_delta, build_percentile_report,
    bootstrap_ordering_confidence, check_orderings, sample_values, OrderingCheck
)

__all__ = [
    'SinrSample',
    'PercentileEntry',
    'PercentileReport',
    'MetricsBundle',
    'cdf',
    'empirical_cdf',
    'quantile',
    'percentile_delta',
    'build_percentile_report',
    'bootstrap_ordering_confidence',
    'check_orderings',
    'sample_values',
    'OrderingCheck'
]
