"""
Small-scale fading and spatially correlated shadowing.
"""

import math
from dataclasses import replace
import logging
from typing import Sequence, Tuple

import numpy as np

from core import settings
from .channel_models import FastFadingState, ChannelLink, pair_key

logger = logging.getLogger(__name__)


def doppler_frequency(speed_mps: float, fc_ghz: float = settings.CARRIER_FREQUENCY_GHZ) -> float:
    """Maximum Doppler shift f_D = v * fc / c."""
    return speed_mps * fc_ghz * 1e9 / settings.SPEED_OF_LIGHT


def create_fading_state(rng: np.random.Generator, los: bool,
                        k_factor_db: float = settings.RICIAN_K_DB,
                        doppler_hz: float = 0.0,
                        delay_spread_s: float = settings.DELAY_SPREAD_NLOS_S,
                        n_sinusoids: int = settings.FADING_SINUSOIDS) -> FastFadingState:
    """
    Draw the parameters of a fading process.

    Args:
        rng: Random generator dedicated to the node pair
        los: Rician when True, Rayleigh otherwise
        k_factor_db: Rician K in dB (``inf`` gives a pure specular channel)
        doppler_hz: Maximum Doppler shift
        delay_spread_s: Mean excess delay of the scatterers
        n_sinusoids: Number of scatterers

    Returns:
        FastFadingState
    """
    k_factor = 10.0 ** (k_factor_db / 10.0) if los else 0.0
    return FastFadingState(
        k_factor=k_factor,
        doppler_hz=doppler_hz,
        specular_cos=math.cos(rng.uniform(0.0, 2.0 * math.pi)),
        specular_phase=rng.uniform(0.0, 2.0 * math.pi),
        scatter_cos=np.cos(rng.uniform(0.0, 2.0 * math.pi, n_sinusoids)),
        scatter_phase=rng.uniform(0.0, 2.0 * math.pi, n_sinusoids),
        scatter_delay=rng.exponential(delay_spread_s, n_sinusoids),
    )


def with_los_state(state: FastFadingState, los: bool,
                   k_factor_db: float = settings.RICIAN_K_DB) -> FastFadingState:
    """Same scatterers, K-factor switched to the given LOS state."""
    return replace(state, k_factor=10.0 ** (k_factor_db / 10.0) if los else 0.0)


def fading_sample(link: ChannelLink, slot: int, rb: int) -> np.ndarray:
    """
    Small-scale channel matrix of a link.

    The matrix is the fading coefficient times the rank-one array
    structure ``sqrt(N_r N_t) a_rx a_tx^T``, so that its mean squared
    Frobenius norm per antenna pair is E[|h|^2] = 1.

    Args:
        link: Channel link
        slot: Slot index
        rb: RB index

    Returns:
        Complex matrix of shape (N_r, N_t)
    """
    h = complex(link.fading.coefficients(slot, rb)[0, 0])
    n_r, n_t = link.shape
    return h * math.sqrt(n_r * n_t) * np.outer(link.rx_response, link.tx_response)


class ShadowingProcess:
    """
    Unit-variance Gauss-Markov process along a trajectory.

    Consecutive values separated by a distance d have correlation
    exp(-d / correlation_distance); scale by the LOS/NLOS sigma to get dB.
    """

    def __init__(self, rng: np.random.Generator,
                 correlation_distance: float = settings.SHADOWING_CORRELATION_M):
        self.rng = rng
        self.correlation_distance = correlation_distance
        self.value = float(rng.standard_normal())

    def advance(self, distance: float) -> float:
        """Move along the trajectory and return the new unit-variance value."""
        if distance <= 0.0:
            return self.value
        rho = math.exp(-distance / self.correlation_distance)
        self.value = rho * self.value + math.sqrt(1.0 - rho * rho) * float(self.rng.standard_normal())
        return self.value


def shadowing_rng(rng_seed: int, link: Tuple[int, int]) -> np.random.Generator:
    """Random stream of a node pair's shadowing."""
    a, b = pair_key(*link)
    return np.random.default_rng([rng_seed, a, b, 0x5AD])


def shadowing_sample(link: Tuple[int, int], rng_seed: int,
                     correlation_distance: float = settings.SHADOWING_CORRELATION_M,
                     distances: Sequence[float] = (0.0,),
                     sigma_db: float = settings.SHADOWING_STD_NLOS_DB) -> np.ndarray:
    """
    Shadowing in dB along a trajectory.

    Args:
        link: Node pair (order irrelevant)
        rng_seed: Seed of the run
        correlation_distance: Exponential decorrelation distance in metres
        distances: Non-decreasing cumulative distances travelled
        sigma_db: Standard deviation in dB

    Returns:
        Array of shadowing values, one per distance
    """
    process = ShadowingProcess(shadowing_rng(rng_seed, link), correlation_distance)
    values = []
    previous = None
    for distance in distances:
        if previous is not None:
            if distance < previous:
                raise ValueError("distances must be non-decreasing")
            process.advance(distance - previous)
        values.append(sigma_db * process.value)
        previous = distance
    return np.array(values)
