"""Physical and system constants for the NCR simulator."""

from typing import List, Tuple

# Application
APP_TITLE: str = "NCR mmWave System-Level Simulator"
SPEED_OF_LIGHT: float = 299_792_458.0

# Carrier and numerology
CARRIER_FREQUENCY_GHZ: float = 28.0
BANDWIDTH_MHZ: float = 50.0
SUBCARRIER_SPACING_HZ: float = 60_000.0
SUBCARRIERS_PER_RB: int = 12
NUM_RBS: int = 66
SLOT_DURATION_S: float = 0.25e-3
SYMBOLS_PER_SLOT: int = 14

# Noise
THERMAL_NOISE_DBM_PER_HZ: float = -174.0
NOISE_FIGURE_DB: float = 9.0

# Entities: height (m), transmit power (dBm)
GNB_HEIGHT_M: float = 25.0
NCR_HEIGHT_M: float = 10.0
UE_HEIGHT_M: float = 1.5
GNB_TX_POWER_DBM: float = 35.0
NCR_TX_POWER_DBM: float = 33.0
UE_TX_POWER_DBM: float = 24.0
UE_SPEED_KMH: float = 3.0

# Antennas
PANEL_ROWS: int = 8
PANEL_COLS: int = 8
ELEMENT_SPACING_WAVELENGTHS: float = 0.5
MAX_ELEMENT_GAIN_DBI: float = 8.0
ELEMENT_BEAMWIDTH_DEG: float = 65.0
FRONT_TO_BACK_DB: float = 30.0
SIDE_LOBE_LEVEL_DB: float = 30.0
DOWNTILT_DEG: float = 12.0
CODEBOOK_AZ_BEAMS: int = 8
CODEBOOK_EL_BEAMS: int = 4
# Sector covered by the codebook in panel-local angles
CODEBOOK_AZ_SPAN_DEG: Tuple[float, float] = (-60.0, 60.0)
CODEBOOK_EL_SPAN_DEG: Tuple[float, float] = (-25.0, 10.0)
MIN_PANEL_SEPARATION_DEG: float = 120.0

# Madrid grid
BLOCK_SIZE_M: float = 120.0
SIDEWALK_WIDTH_M: float = 3.0
STREET_WIDTH_M: float = 14.0
BUILDING_HEIGHT_M: float = 30.0
# Small outward offset keeping mounted nodes outside block volumes
FACADE_OFFSET_M: float = 0.1
# Distance of the side-block NCRs from the inner ends of their blocks
SIDE_BLOCK_NCR_INSET_M: float = 20.0

# Channel
SHADOWING_STD_LOS_DB: float = 4.0
SHADOWING_STD_NLOS_DB: float = 7.82
SHADOWING_CORRELATION_M: float = 13.0
RICIAN_K_DB: float = 10.0
DELAY_SPREAD_LOS_S: float = 32e-9
DELAY_SPREAD_NLOS_S: float = 65e-9
FADING_SINUSOIDS: int = 20

# NCR amplifier
NCR_MAX_GAIN_DB: float = 90.0

# TDD pattern (S slots count as DL)
TDD_PATTERN: List[str] = ["DL", "S", "UL", "UL", "UL", "DL", "S", "UL", "UL", "DL"]

# Traffic
CBR_PACKET_BITS: int = 3072
DEFAULT_TRAFFIC_MBPS: float = 2.0

# Link adaptation
TARGET_BLER: float = 0.10
OLLA_STEP_DOWN_DB: float = 1.0
OLLA_STEP_UP_DB: float = 0.1
TB_OVERHEAD: float = 0.20

# Engine
DEFAULT_UE_COUNT: int = 72
DEFAULT_SLOTS: int = 4000
WARMUP_SLOTS: int = 100
T_ACCESS_SLOTS: int = 80
T_BACKHAUL_SLOTS: int = 4000
# Head-of-line wait beyond which bearers share the carrier round robin
SCHEDULER_MAX_WAIT_SLOTS: int = 20
# UE positions advance in steps of this many slots
MOBILITY_STEP_SLOTS: int = 80

# Reporting
PERCENTILES: List[float] = [0.10, 0.50, 0.90]
BLOCK_GROUPS: List[str] = ["all", "central", "side"]
SCENARIO_NAMES: List[str] = ["s1", "s2", "s3", "s4", "s5"]
