"""Utility functions shared across the simulator."""

import math
from pathlib import Path
from typing import List

import numpy as np


def db_to_linear(value_db):
    """
    Convert a power ratio in dB to linear scale.

    Args:
        value_db: Scalar or array in dB

    Returns:
        Linear power ratio
    """
    return np.power(10.0, np.asarray(value_db, dtype=float) / 10.0)


def linear_to_db(value):
    """Convert a linear power ratio to dB (zero maps to -inf)."""
    with np.errstate(divide='ignore'):
        return 10.0 * np.log10(np.asarray(value, dtype=float))


def dbm_to_watt(value_dbm):
    """Convert dBm to watts."""
    return db_to_linear(value_dbm) * 1e-3


def watt_to_dbm(value_w):
    """Convert watts to dBm."""
    return linear_to_db(value_w) + 30.0


def wrap_angle_deg(angle: float) -> float:
    """Wrap an angle to (-180, 180] degrees."""
    wrapped = math.fmod(angle + 180.0, 360.0)
    if wrapped <= 0.0:
        wrapped += 360.0
    return wrapped - 180.0


def direction_angles(vector) -> tuple:
    """
    Azimuth and elevation (degrees) of a 3D direction vector.

    Args:
        vector: Sequence (dx, dy, dz)

    Returns:
        (azimuth, elevation) with azimuth measured from +x towards +y
    """
    dx, dy, dz = float(vector[0]), float(vector[1]), float(vector[2])
    azimuth = math.degrees(math.atan2(dy, dx))
    elevation = math.degrees(math.atan2(dz, math.hypot(dx, dy)))
    return azimuth, elevation


def unit_vector(azimuth_deg: float, elevation_deg: float) -> np.ndarray:
    """Unit vector pointing at (azimuth, elevation)."""
    az = math.radians(azimuth_deg)
    el = math.radians(elevation_deg)
    return np.array([math.cos(el) * math.cos(az), math.cos(el) * math.sin(az), math.sin(el)])


def angle_between_deg(a: np.ndarray, b: np.ndarray) -> float:
    """Angle in degrees between two 3D vectors."""
    cos_angle = float(np.dot(a, b) / (np.linalg.norm(a) * np.linalg.norm(b)))
    return math.degrees(math.acos(max(-1.0, min(1.0, cos_angle))))


def parse_seed_range(text: str) -> List[int]:
    """
    Parse a seed list such as "1..10", "3", or "1,4,7".

    Args:
        text: Seed list

    Returns:
        Sorted list of unique seeds

    Raises:
        ValueError: On malformed input or an empty range
    """
    seeds = set()
    for part in text.split(','):
        part = part.strip()
        if not part:
            continue
        if '..' in part:
            start_text, end_text = part.split('..', 1)
            start, end = int(start_text), int(end_text)
            if end < start:
                raise ValueError(f"Empty seed range: {part}")
            seeds.update(range(start, end + 1))
        else:
            seeds.add(int(part))
    if not seeds:
        raise ValueError(f"No seeds given: {text!r}")
    return sorted(seeds)


def ensure_output_dir(path: str) -> Path:
    """
    Create the output directory if needed and check that it is writable.

    Args:
        path: Directory path

    Returns:
        Path object for the directory

    Raises:
        OSError: If the directory cannot be created or written
    """
    directory = Path(path)
    directory.mkdir(parents=True, exist_ok=True)
    marker = directory / ".write_check"
    marker.write_text("")
    marker.unlink()
    return directory


def format_duration(seconds: float) -> str:
    """Format a duration for log messages."""
    if seconds < 60.0:
        return f"{seconds:.1f} s"
    minutes, secs = divmod(seconds, 60.0)
    return f"{int(minutes)} min {secs:.0f} s"
