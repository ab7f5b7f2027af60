"""
Configuration manager for simulation runs.

Run configurations are read from JSON or from plain-text ``key = value``
files and validated before any simulation starts.
"""

import json
import os
import logging
from dataclasses import dataclass, asdict, field, fields, replace
from typing import Dict, Any, List, Optional

from . import settings
from .exceptions import ConfigurationError
from utils.helpers import parse_seed_range

logger = logging.getLogger(__name__)


@dataclass
class SimulationConfig:
    """Configuration for one simulation campaign."""

    # Scenario selection
    scenario: str = "s1"  # s1..s5, "all", or "custom" with scenario_file
    scenario_file: Optional[str] = None
    seeds: List[int] = field(default_factory=lambda: [1])

    # Duration and population
    num_slots: int = settings.DEFAULT_SLOTS
    num_ues: int = settings.DEFAULT_UE_COUNT
    warmup_slots: int = settings.WARMUP_SLOTS

    # Traffic
    traffic_mbps: float = settings.DEFAULT_TRAFFIC_MBPS
    full_buffer: bool = False

    # Beam sweeping periods (slots)
    t_access_slots: int = settings.T_ACCESS_SLOTS
    t_backhaul_slots: int = settings.T_BACKHAUL_SLOTS
    mobility_step_slots: int = settings.MOBILITY_STEP_SLOTS

    # Radio
    carrier_frequency_ghz: float = settings.CARRIER_FREQUENCY_GHZ
    num_rbs: int = settings.NUM_RBS
    noise_figure_db: float = settings.NOISE_FIGURE_DB
    gnb_tx_power_dbm: float = settings.GNB_TX_POWER_DBM
    ue_tx_power_dbm: float = settings.UE_TX_POWER_DBM

    # Antennas
    codebook_az_beams: int = settings.CODEBOOK_AZ_BEAMS
    codebook_el_beams: int = settings.CODEBOOK_EL_BEAMS

    # Channel
    channel_scenario: str = "umi"  # umi or uma
    building_height_m: float = settings.BUILDING_HEIGHT_M
    shadowing_correlation_m: float = settings.SHADOWING_CORRELATION_M
    rician_k_db: float = settings.RICIAN_K_DB
    los_probability: bool = True  # street-canyon LOS probability on unobstructed UE links

    # NCR
    ncr_max_gain_db: float = settings.NCR_MAX_GAIN_DB
    ncr_tx_power_dbm: float = settings.NCR_TX_POWER_DBM
    ncr_force_off: bool = False

    # Scheduler
    scheduler_max_wait_slots: int = settings.SCHEDULER_MAX_WAIT_SLOTS

    # Link adaptation
    target_bler: float = settings.TARGET_BLER
    bler_curve_file: Optional[str] = None

    # Output
    output_dir: str = "results"
    channel_trace: bool = False
    association_trace: bool = False
    pdf_report: bool = False

    # Batch
    max_workers: int = 1

    @property
    def slot_duration_s(self) -> float:
        """Slot duration in seconds."""
        return settings.SLOT_DURATION_S

    @property
    def simulated_time_s(self) -> float:
        """Simulated time covered by one run."""
        return self.num_slots * settings.SLOT_DURATION_S

    @property
    def packet_period_slots(self) -> int:
        """CBR inter-arrival period in slots derived from the traffic rate."""
        if self.full_buffer:
            return 1
        period_s = settings.CBR_PACKET_BITS / (self.traffic_mbps * 1e6)
        return max(1, int(round(period_s / settings.SLOT_DURATION_S)))

    @property
    def scenario_list(self) -> List[str]:
        """Scenarios selected by the ``scenario`` field."""
        if self.scenario == "all":
            return list(settings.SCENARIO_NAMES)
        return [self.scenario]

    def validate(self) -> List[str]:
        """
        Collect every validation problem of this configuration.

        Returns:
            List of human-readable problems (empty when valid)
        """
        problems = []
        known = set(settings.SCENARIO_NAMES) | {"all", "custom"}
        if self.scenario not in known:
            problems.append(f"unknown scenario: {self.scenario}")
        if self.scenario == "custom" and not self.scenario_file:
            problems.append("scenario 'custom' requires scenario_file")
        if self.num_slots <= 0:
            problems.append("num_slots must be positive")
        if self.num_ues <= 0:
            problems.append("num_ues must be positive")
        if not self.seeds:
            problems.append("at least one seed is required")
        if self.warmup_slots < 0:
            problems.append("warmup_slots must be non-negative")
        if self.warmup_slots >= self.num_slots > 0:
            problems.append("warmup_slots must be shorter than num_slots")
        if self.traffic_mbps <= 0:
            problems.append("traffic_mbps must be positive")
        if self.t_access_slots <= 0 or self.t_backhaul_slots <= 0:
            problems.append("sweep periods must be positive")
        elif self.t_backhaul_slots < self.t_access_slots:
            problems.append("t_backhaul_slots must be >= t_access_slots")
        if self.mobility_step_slots <= 0:
            problems.append("mobility_step_slots must be positive")
        if self.scheduler_max_wait_slots < 0:
            problems.append("scheduler_max_wait_slots must be non-negative")
        if self.num_rbs <= 0:
            problems.append("num_rbs must be positive")
        if self.codebook_az_beams < 1 or self.codebook_el_beams < 1:
            problems.append("codebook dimensions must be >= 1")
        if self.channel_scenario not in ("umi", "uma"):
            problems.append(f"unknown channel_scenario: {self.channel_scenario}")
        if not 0.0 < self.target_bler < 1.0:
            problems.append("target_bler must lie in (0, 1)")
        if self.max_workers < 1:
            problems.append("max_workers must be >= 1")
        return problems

    def check(self) -> "SimulationConfig":
        """Raise ConfigurationError listing all problems, else return self."""
        problems = self.validate()
        if problems:
            raise ConfigurationError("; ".join(problems), problems)
        return self

    def for_scenario(self, scenario: str) -> "SimulationConfig":
        """Copy of this config bound to a single scenario."""
        return replace(self, scenario=scenario)


PRESETS: Dict[str, Dict[str, Any]] = {
    "quick": {
        "num_slots": 800,
        "num_ues": 24,
        "seeds": [1, 2],
    },
    "reference": {
        "num_slots": 4000,
        "num_ues": 72,
        "seeds": list(range(1, 11)),
    },
    "full_buffer": {
        "full_buffer": True,
        "num_slots": 4000,
    },
}


def _coerce(value: Any, current: Any, name: str) -> Any:
    """Coerce a raw value (possibly a string) to the type of the current value."""
    if name == "seeds":
        if isinstance(value, str):
            return parse_seed_range(value)
        return [int(v) for v in value]
    if not isinstance(value, str):
        if isinstance(current, float) and isinstance(value, int):
            return float(value)
        return value
    text = value.strip()
    if isinstance(current, bool):
        return text.lower() in ("1", "true", "yes", "on")
    if isinstance(current, int):
        return int(text)
    if isinstance(current, float):
        return float(text)
    if current is None and text.lower() in ("", "none", "null"):
        return None
    return text


def parse_key_value_text(text: str) -> Dict[str, str]:
    """
    Parse ``key = value`` lines; ``#`` starts a comment.

    Args:
        text: File contents

    Returns:
        Ordered mapping of keys to raw string values
    """
    entries: Dict[str, str] = {}
    for line_number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise ConfigurationError(f"line {line_number}: expected 'key = value'")
        key, value = line.split('=', 1)
        entries[key.strip()] = value.strip()
    return entries


class ConfigManager:
    """Loads, updates and persists simulation configurations."""

    def __init__(self, config_file: Optional[str] = None):
        """
        Initialize config manager.

        Args:
            config_file: Optional path to a JSON or key-value configuration file
        """
        self.config_file = config_file
        self.config = SimulationConfig()

        if config_file:
            self.load_config()

    def load_config(self) -> SimulationConfig:
        """
        Load configuration from file.

        Returns:
            SimulationConfig object

        Raises:
            ConfigurationError: If the file is missing or unparsable
        """
        if not self.config_file or not os.path.exists(self.config_file):
            raise ConfigurationError(f"Config file not found: {self.config_file}")

        try:
            with open(self.config_file, 'r', encoding='utf-8') as f:
                text = f.read()
            if self.config_file.lower().endswith('.json'):
                config_dict = json.loads(text)
            else:
                config_dict = parse_key_value_text(text)
        except (OSError, ValueError) as e:
            logger.error(f"Error loading config: {str(e)}")
            raise ConfigurationError(f"Cannot read config {self.config_file}: {e}") from e

        self._apply(config_dict)
        logger.info(f"Loaded configuration from {self.config_file}")
        return self.config

    def _apply(self, config_dict: Dict[str, Any]) -> None:
        """Apply known keys to the current config, warning on unknown ones."""
        for key, value in config_dict.items():
            if hasattr(self.config, key) and key in {f.name for f in fields(SimulationConfig)}:
                try:
                    setattr(self.config, key, _coerce(value, getattr(self.config, key), key))
                except (TypeError, ValueError) as e:
                    raise ConfigurationError(f"Invalid value for {key}: {value!r}") from e
                logger.debug(f"Config: {key} = {getattr(self.config, key)!r}")
            else:
                logger.warning(f"Unknown config parameter: {key}")

    def save_config(self, filepath: Optional[str] = None) -> bool:
        """
        Save configuration as JSON.

        Args:
            filepath: Destination (defaults to the loaded config file)

        Returns:
            True if successful
        """
        target = filepath or self.config_file
        if not target:
            logger.warning("No config file to save to")
            return False

        try:
            with open(target, 'w', encoding='utf-8') as f:
                json.dump(asdict(self.config), f, indent=4)
            logger.info(f"Saved configuration to {target}")
            return True
        except OSError as e:
            logger.error(f"Error saving config: {str(e)}")
            return False

    def get_config(self) -> SimulationConfig:
        """Get current configuration."""
        return self.config

    def update_config(self, **kwargs) -> SimulationConfig:
        """
        Update configuration with new values; ``None`` values are skipped.

        Args:
            **kwargs: Configuration parameters to update

        Returns:
            Updated configuration
        """
        self._apply({k: v for k, v in kwargs.items() if v is not None})
        return self.config

    def apply_preset(self, name: str) -> SimulationConfig:
        """Apply one of the named presets."""
        if name not in PRESETS:
            raise ConfigurationError(f"Unknown preset: {name}. Available: {sorted(PRESETS)}")
        return self.update_config(**self.get_preset_settings(name))

    def export_config(self, filepath: str) -> bool:
        """
        Export configuration to a JSON file.

        Args:
            filepath: Path to export file

        Returns:
            True if successful
        """
        return self.save_config(filepath)

    @staticmethod
    def get_preset_settings(name: str) -> Dict[str, Any]:
        """
        Get settings for a named preset.

        Args:
            name: Preset name (quick, reference, full_buffer)

        Returns:
            Dictionary of settings for the preset
        """
        return dict(PRESETS.get(name, {}))
