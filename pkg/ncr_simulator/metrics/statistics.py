"""
Empirical statistics of SINR samples: CDFs, percentiles, gains over the
baseline scenario and bootstrap confidence of scenario orderings.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import stats

from core import settings
from core.exceptions import EmptySampleError
from .metrics_models import SinrSample, PercentileEntry, PercentileReport

logger = logging.getLogger(__name__)

BOOTSTRAP_MAX_SAMPLES = 2000


def sample_values(samples: Iterable[SinrSample], group: str = "all",
                  direction: Optional[str] = None) -> np.ndarray:
    """SINR values (dB) of the samples matching a block group and direction."""
    return np.array([s.sinr_db for s in samples
                     if (group == "all" or s.block_group == group)
                     and (direction is None or s.direction.value == direction)], dtype=float)


def cdf(samples: Iterable[SinrSample], group: str = "all",
        direction: Optional[str] = None) -> List[Tuple[float, float]]:
    """
    Empirical, right-continuous CDF of the filtered samples.

    Returns:
        (sinr_db, cumulative probability) at each distinct value, ascending

    Raises:
        EmptySampleError: If no sample matches the filters
    """
    return empirical_cdf(sample_values(samples, group, direction))


def empirical_cdf(values: Sequence[float]) -> List[Tuple[float, float]]:
    """CDF steps of raw values."""
    data = np.sort(np.asarray(values, dtype=float))
    if data.size == 0:
        raise EmptySampleError("Cannot build a CDF from an empty sample set")
    distinct, counts = np.unique(data, return_counts=True)
    cumulative = np.cumsum(counts) / data.size
    cumulative[-1] = 1.0
    return [(float(x), float(p)) for x, p in zip(distinct, cumulative)]


def quantile(values: Sequence[float], q: float) -> float:
    """
    Quantile with linear interpolation between order statistics.

    Raises:
        EmptySampleError: If ``values`` is empty
        ValueError: If q lies outside [0, 1]
    """
    data = np.asarray(values, dtype=float)
    if data.size == 0:
        raise EmptySampleError("Cannot take a quantile of an empty sample set")
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"Quantile level must lie in [0, 1], got {q}")
    return float(np.quantile(data, q, method="linear"))


def percentile_delta(scenario_values: Sequence[float], baseline_values: Sequence[float],
                     q: float) -> float:
    """
    Gain of a scenario over the baseline at quantile q, in dB.

    Raises:
        EmptySampleError: If either set is empty
        ValueError: If q is not strictly between 0 and 1
    """
    if not 0.0 < q < 1.0:
        raise ValueError(f"Quantile level must lie in (0, 1), got {q}")
    return quantile(scenario_values, q) - quantile(baseline_values, q)


def build_percentile_report(samples_by_scenario: Dict[str, List[SinrSample]],
                            baseline: str = "s1",
                            percentiles: Sequence[float] = settings.PERCENTILES) -> PercentileReport:
    """
    Percentile table of every scenario, direction and block group.

    Entries whose sample set is empty are left out; gains are None when the
    baseline lacks the matching set.
    """
    report = PercentileReport(percentiles=list(percentiles), baseline=baseline)
    baseline_samples = samples_by_scenario.get(baseline, [])
    for scenario in sorted(samples_by_scenario):
        for direction in ("DL", "UL"):
            for group in settings.BLOCK_GROUPS:
                values = sample_values(samples_by_scenario[scenario], group, direction)
                if values.size == 0:
                    logger.warning(f"No {direction} samples for {scenario}/{group}")
                    continue
                reference = sample_values(baseline_samples, group, direction)
                entry = PercentileEntry(
                    scenario=scenario, direction=direction, group=group,
                    values={q: quantile(values, q) for q in percentiles},
                    deltas={q: (percentile_delta(values, reference, q) if reference.size else None)
                            for q in percentiles},
                )
                report.entries.append(entry)
    return report


def _subsample(values: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    if values.size <= BOOTSTRAP_MAX_SAMPLES:
        return values
    return rng.choice(values, size=BOOTSTRAP_MAX_SAMPLES, replace=False)


def bootstrap_ordering_confidence(left: Sequence[float], left_baseline: Sequence[float],
                                  right: Optional[Sequence[float]] = None,
                                  right_baseline: Optional[Sequence[float]] = None,
                                  q: float = 0.5, n_resamples: int = 999,
                                  rng_seed: int = 0) -> float:
    """
    Bootstrap probability that one percentile gain is at least another.

    The left gain is ``Q(left, q) - Q(left_baseline, q)``; the right gain is
    built the same way, or taken as zero when ``right`` is omitted. Large
    sets are subsampled before resampling.

    Returns:
        Share of bootstrap replicates in which left gain >= right gain
    """
    rng = np.random.default_rng([rng_seed, 0xB007])
    data = [_subsample(np.asarray(left, dtype=float), rng),
            _subsample(np.asarray(left_baseline, dtype=float), rng)]
    if right is not None:
        data += [_subsample(np.asarray(right, dtype=float), rng),
                 _subsample(np.asarray(right_baseline, dtype=float), rng)]
    if any(d.size == 0 for d in data):
        raise EmptySampleError("Bootstrap needs non-empty sample sets")

    def margin(*sets, axis=-1):
        gain = np.quantile(sets[0], q, axis=axis) - np.quantile(sets[1], q, axis=axis)
        if len(sets) == 4:
            gain = gain - (np.quantile(sets[2], q, axis=axis) - np.quantile(sets[3], q, axis=axis))
        return gain

    result = stats.bootstrap(tuple(data), margin, n_resamples=n_resamples, paired=False,
                             vectorized=True, method="percentile", random_state=rng)
    return float(np.mean(result.bootstrap_distribution >= 0.0))


@dataclass
class OrderingCheck:
    """Outcome of one expected scenario ordering."""

    name: str
    margin_db: float
    confidence: float
    holds: bool


def check_orderings(samples_by_scenario: Dict[str, List[SinrSample]], baseline: str = "s1",
                    required_confidence: float = 0.9, n_resamples: int = 999,
                    rng_seed: int = 0) -> List[OrderingCheck]:
    """
    Check the expected effect of NCR deployments on the SINR percentiles.

    Covered orderings, each with bootstrap confidence:

    * every NCR scenario raises the median SINR in DL and UL
    * the median gain in UL is at least the one in DL
    * s5 gives side-block UEs the largest median gain
    * s4 gives the largest 10th-percentile gain over all UEs
    * s3 beats s2 for central-block UEs at the 10th percentile

    Scenarios without samples are skipped.
    """
    def values(scenario, direction, group):
        return sample_values(samples_by_scenario.get(scenario, []), group, direction)

    def gain(scenario, direction, group, q):
        return percentile_delta(values(scenario, direction, group),
                                values(baseline, direction, group), q)

    comparisons = []
    present = [s for s in settings.SCENARIO_NAMES if s != baseline and s in samples_by_scenario]
    for scenario in present:
        for direction in ("DL", "UL"):
            comparisons.append((f"{scenario} {direction} median above baseline",
                                (scenario, direction, "all"), None, 0.5))
        comparisons.append((f"{scenario} UL median gain >= DL median gain",
                            (scenario, "UL", "all"), (scenario, "DL", "all"), 0.5))
    for direction in ("DL", "UL"):
        for leader, group, q in (("s5", "side", 0.5), ("s4", "all", 0.1)):
            if leader not in present:
                continue
            for other in present:
                if other != leader:
                    comparisons.append((f"{leader} {group} p{int(q * 100)} {direction} gain >= {other}",
                                        (leader, direction, group), (other, direction, group), q))
        if "s3" in present and "s2" in present:
            comparisons.append((f"s3 central p10 {direction} gain >= s2",
                                ("s3", direction, "central"), ("s2", direction, "central"), 0.1))

    checks = []
    for name, left, right, q in comparisons:
        try:
            margin = gain(*left, q) - (gain(*right, q) if right else 0.0)
            confidence = bootstrap_ordering_confidence(
                values(*left), values(baseline, left[1], left[2]),
                values(*right) if right else None,
                values(baseline, right[1], right[2]) if right else None,
                q=q, n_resamples=n_resamples, rng_seed=rng_seed)
        except EmptySampleError:
            logger.warning(f"Ordering '{name}' skipped: missing samples")
            continue
        checks.append(OrderingCheck(name=name, margin_db=margin, confidence=confidence,
                                    holds=confidence >= required_confidence))
    return checks
