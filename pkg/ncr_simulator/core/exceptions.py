"""
Exception hierarchy for the simulator.
"""

from typing import List, Optional


class SimulatorError(Exception):
    """Base class for all simulator errors."""


class ConfigurationError(SimulatorError):
    """Raised when a run configuration fails validation."""

    def __init__(self, message: str, problems: Optional[List[str]] = None):
        self.problems = problems or [message]
        super().__init__(message)


class GeometryError(SimulatorError):
    """Invalid geometric input (zero UEs, degenerate segment, ...)."""


class ChannelError(SimulatorError):
    """Channel model evaluated outside its validity range."""


class DimensionMismatchError(SimulatorError):
    """Filters and channel matrix are not conformable."""


class SweepScheduleError(SimulatorError):
    """A beam sweep was requested at a slot outside its period."""


class UeNotScheduledError(SimulatorError):
    """SINR requested for a UE that holds no resources on the RB."""


class EmptySampleError(SimulatorError):
    """A statistic was requested over an empty sample set."""
