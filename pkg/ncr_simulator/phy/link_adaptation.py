"""
MCS selection, outer-loop link adaptation and the transport-block error model.
"""

import math
import logging
from functools import lru_cache
from pathlib import Path
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from core import settings
from core.exceptions import ConfigurationError
from .phy_models import LinkAdaptationState

logger = logging.getLogger(__name__)

DEFAULT_CURVE_FILE = Path(__file__).parent / "data" / "bler_curves.txt"
MIN_TABULATED_BLER = 1e-12

# bits per resource element of each MCS in the curve file
SPECTRAL_EFFICIENCY: Tuple[float, ...] = (
    0.1523, 0.2344, 0.3770, 0.6016, 0.8770, 1.1758, 1.4766, 1.9141,
    2.4063, 2.7305, 3.3223, 3.9023, 4.5234, 5.1152, 5.5547,
)


class BlerTable:
    """SINR-to-BLER curves, one per MCS, interpolated in log10(BLER) against dB."""

    def __init__(self, curves: Dict[int, Tuple[np.ndarray, np.ndarray]]):
        if not curves:
            raise ConfigurationError("BLER table holds no curves")
        self.curves = curves
        self.num_mcs = max(curves) + 1

    @classmethod
    def load(cls, path: Optional[str] = None) -> "BlerTable":
        """
        Load curves from a text table of ``mcs sinr_db bler`` rows.

        Raises:
            ConfigurationError: If the file is missing or malformed
        """
        path = Path(path) if path else DEFAULT_CURVE_FILE
        try:
            rows = np.loadtxt(path, comments="#", ndmin=2)
        except (OSError, ValueError) as e:
            raise ConfigurationError(f"Cannot read BLER curves from {path}: {e}")
        if rows.shape[1] != 3:
            raise ConfigurationError(f"BLER curve file {path} must have three columns")

        curves = {}
        for mcs in np.unique(rows[:, 0]).astype(int):
            block = rows[rows[:, 0] == mcs]
            order = np.argsort(block[:, 1])
            curves[int(mcs)] = (block[order, 1], block[order, 2])
        if sorted(curves) != list(range(len(curves))):
            raise ConfigurationError(f"BLER curve file {path} skips MCS indices")
        logger.debug(f"Loaded {len(curves)} BLER curves from {path}")
        return cls(curves)

    def bler(self, mcs: int, sinr_db: float) -> float:
        """BLER of an MCS at an SINR; 1 below the curve, 0 above it."""
        sinrs, blers = self.curves[mcs]
        if sinr_db < sinrs[0]:
            return 1.0
        if sinr_db > sinrs[-1]:
            return 0.0
        log_blers = np.log10(np.clip(blers, MIN_TABULATED_BLER, 1.0))
        return float(10.0 ** np.interp(sinr_db, sinrs, log_blers))

    def spectral_efficiency(self, mcs: int) -> float:
        return SPECTRAL_EFFICIENCY[mcs]


@lru_cache(maxsize=4)
def default_table(path: Optional[str] = None) -> BlerTable:
    """Shared table instance per curve file."""
    return BlerTable.load(path)


def sinr_to_mcs(state: LinkAdaptationState, sinr_db: float,
                table: Optional[BlerTable] = None) -> int:
    """
    Highest MCS meeting the BLER target at the offset-corrected SINR.

    Below the lowest curve MCS 0 is used and the state is flagged out of range.

    Args:
        state: Link adaptation state of the UE (updated in place)
        sinr_db: Estimated SINR in dB
        table: BLER curves (defaults to the packaged table)

    Returns:
        Selected MCS index
    """
    table = table or default_table()
    corrected = sinr_db + state.offset_db
    selected = None
    for mcs in range(table.num_mcs):
        if table.bler(mcs, corrected) <= state.target_bler:
            selected = mcs
    state.out_of_range = selected is None
    state.mcs = 0 if selected is None else selected
    state.cqi = 0 if selected is None else selected + 1
    if state.out_of_range:
        logger.debug(f"UE {state.ue_id}: SINR {corrected:.1f} dB below the lowest MCS")
    return state.mcs


def outer_loop_update(state: LinkAdaptationState, crc_ok: bool) -> LinkAdaptationState:
    """Lower the SINR offset by 1 dB on an error, raise it by 0.1 dB on a success."""
    if crc_ok:
        state.offset_db += settings.OLLA_STEP_UP_DB
        state.successes += 1
    else:
        state.offset_db -= settings.OLLA_STEP_DOWN_DB
        state.errors += 1
    return state


def effective_sinr_db(sinrs: Sequence[float]) -> float:
    """Geometric mean of linear per-RB SINRs, in dB."""
    values = np.asarray(sinrs, dtype=float)
    if values.size == 0:
        raise ValueError("No SINR values to combine")
    with np.errstate(divide='ignore'):
        return float(np.mean(10.0 * np.log10(values)))


def transport_block_bits(mcs: int, num_rbs: int,
                         overhead: float = settings.TB_OVERHEAD) -> int:
    """Transport block size for an allocation, after control and reference overhead."""
    resource_elements = num_rbs * settings.SUBCARRIERS_PER_RB * settings.SYMBOLS_PER_SLOT
    return int(math.floor(SPECTRAL_EFFICIENCY[mcs] * resource_elements * (1.0 - overhead)))


def draw_crc(rng: np.random.Generator, bler: float) -> bool:
    """Bernoulli CRC outcome; True when the block is received correctly."""
    return bool(rng.random() >= bler)
