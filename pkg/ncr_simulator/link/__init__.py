"""
Beam sweeping, measurement reporting and UE association.
"""

from .link_models import (
    ServingPath, DIRECT, BeamCandidate, MeasurementReport, Association, SweepSchedule
)
from .beam_management import sweep_backhaul, sweep_access, associate, reference_gain

__all__ = [
    'ServingPath',
    'DIRECT',
    'BeamCandidate',
    'MeasurementReport',
    'Association',
    'SweepSchedule',
    'sweep_backhaul',
    'sweep_access',
    'associate',
    'reference_gain'
]
