"""
Parallel execution of (scenario, seed) runs with progress tracking.
"""

import time
import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Callable, Dict, List, Optional, Sequence

from core import settings
from metrics.metrics_models import MetricsBundle
from .batch_models import BatchTask, BatchResult, TaskStatus

logger = logging.getLogger(__name__)

RunFunction = Callable[[str, int], MetricsBundle]
ProgressCallback = Callable[[int, int, str], None]


class BatchProcessor:
    """
    Runs a simulation campaign.

    Runs share no mutable state, so they execute on a thread pool; results
    are merged per scenario in seed order, independent of completion order.
    """

    def __init__(self, max_workers: int = 2):
        """
        Initialize the processor.

        Args:
            max_workers: Maximum number of parallel worker threads
        """
        self.max_workers = max_workers
        self.completed = 0
        self.tasks: List[BatchTask] = []

    @property
    def total_tasks(self) -> int:
        return len(self.tasks)

    def add_runs(self, scenarios: Sequence[str], seeds: Sequence[int]) -> List[BatchTask]:
        """
        Queue one task per (scenario, seed); unknown scenarios are skipped.

        Returns:
            Tasks that were added
        """
        added = []
        for scenario in scenarios:
            if scenario not in settings.SCENARIO_NAMES and scenario != "custom":
                logger.warning(f"Unknown scenario skipped: {scenario}")
                continue
            for seed in seeds:
                added.append(BatchTask(scenario=scenario, seed=int(seed)))
        self.tasks.extend(added)
        logger.info(f"Added {len(added)} runs to the campaign")
        return added

    def process_batch(self, run_func: RunFunction,
                      callback: Optional[ProgressCallback] = None) -> BatchResult:
        """
        Execute all queued runs.

        Args:
            run_func: Function (scenario, seed) -> MetricsBundle
            callback: Optional progress callback (current, total, label)

        Returns:
            BatchResult with merged bundles; failed runs keep their error
        """
        start = time.time()
        self.completed = 0

        with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            futures = {executor.submit(self._run_task, task, run_func): task for task in self.tasks}
            for future in as_completed(futures):
                task = futures[future]
                try:
                    task.result = future.result()
                    label = task.label
                except Exception as e:
                    logger.error(f"Run {task.label} failed: {e}")
                    label = "Error"
                self.completed += 1
                if callback:
                    callback(self.completed, self.total_tasks, label)

        result = BatchResult(tasks=list(self.tasks), processing_time=time.time() - start,
                             bundles=self._merge_results())
        logger.info(f"Campaign complete: {result.successful_runs}/{result.total_runs} runs successful")
        return result

    def _run_task(self, task: BatchTask, run_func: RunFunction) -> MetricsBundle:
        task.status = TaskStatus.RUNNING
        started = time.perf_counter()
        try:
            logger.info(f"Running {task.label}")
            bundle = run_func(task.scenario, task.seed)
            task.status = TaskStatus.COMPLETE
            return bundle
        except Exception as e:
            task.status = TaskStatus.ERROR
            task.error_message = str(e)
            raise
        finally:
            logger.debug(f"{task.label}: {time.perf_counter() - started:.1f} s")

    def _merge_results(self) -> Dict[str, MetricsBundle]:
        """Merge completed runs per scenario, seeds in ascending order."""
        bundles: Dict[str, MetricsBundle] = {}
        for task in sorted((t for t in self.tasks if t.done), key=lambda t: (t.scenario, t.seed)):
            if task.scenario not in bundles:
                bundles[task.scenario] = MetricsBundle(scenario=task.scenario)
            bundles[task.scenario].merge(task.result)
        return bundles

