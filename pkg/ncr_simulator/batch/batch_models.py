"""
Runs of a simulation campaign and their outcome.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

from metrics.metrics_models import MetricsBundle


class TaskStatus(Enum):
    """Lifecycle of one (scenario, seed) run."""
    PENDING = "pending"
    RUNNING = "running"
    COMPLETE = "complete"
    ERROR = "error"


@dataclass
class BatchTask:
    """One (scenario, seed) run of a campaign."""

    scenario: str
    seed: int
    status: TaskStatus = TaskStatus.PENDING
    error_message: Optional[str] = None
    result: Optional[MetricsBundle] = None

    @property
    def label(self) -> str:
        return f"{self.scenario}/seed{self.seed}"

    @property
    def done(self) -> bool:
        return self.status is TaskStatus.COMPLETE and self.result is not None

    def log_row(self) -> Dict[str, Any]:
        """
        Run-log entry; wall-clock time is left out so that repeated
        campaigns write identical logs.
        """
        bundle = self.result if self.done else None
        return {
            'scenario': self.scenario,
            'seed': self.seed,
            'status': self.status.value,
            'samples': len(bundle.samples) if bundle else 0,
            'dl_blocks': bundle.transport_blocks['DL'] if bundle else 0,
            'ul_blocks': bundle.transport_blocks['UL'] if bundle else 0,
            'via_ncr_share': round(bundle.via_ncr_share, 6) if bundle else '',
            'error': self.error_message or '',
        }


@dataclass
class BatchResult:
    """Outcome of a campaign: per-scenario bundles merged in seed order."""

    tasks: List[BatchTask]
    processing_time: float
    bundles: Dict[str, MetricsBundle] = field(default_factory=dict)

    @property
    def total_runs(self) -> int:
        return len(self.tasks)

    @property
    def successful_runs(self) -> int:
        return sum(1 for t in self.tasks if t.done)

    @property
    def failures(self) -> List[BatchTask]:
        return [t for t in self.tasks if t.status is TaskStatus.ERROR]

    @property
    def failed_runs(self) -> int:
        return len(self.failures)

    @property
    def success_rate(self) -> float:
        finished = self.successful_runs + self.failed_runs
        return self.successful_runs / finished if finished else 0.0

    def run_log(self) -> List[Dict[str, Any]]:
        """One row per run, ordered by scenario then seed."""
        ordered = sorted(self.tasks, key=lambda t: (t.scenario, t.seed))
        return [task.log_row() for task in ordered]
