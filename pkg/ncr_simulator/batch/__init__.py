"""
Batch execution of simulation campaigns.
"""

from .batch_processor import BatchProcessor
from .batch_models import BatchTask, BatchResult, TaskStatus

__all__ = [
    'BatchProcessor',
    'BatchTask',
    'BatchResult',
    'TaskStatus'
]
