""" Describes Config, a simple namespace for config values, and the loader
that merges config.toml sections.

For description of all config values, refer to config.toml.
"""

from dataclasses import dataclass, fields
import logging
import os

import toml


MAX_N_ENV = "WEIGHTDEC_MAX_N"

logger = logging.getLogger(__name__)


@dataclass
class Config:  # pylint: disable=too-many-instance-attributes
    """ Contains values needed to run bounds, simulations and sweeps. """
    section: str = "DEFAULT"

    device: str = "cpu"
    max_full_n: int = 12

    lp_max_n: int = 300
    lp_method: str = "highs"
    lp_feasibility_tolerance: float = 1e-7
    lp_recheck_tolerance: float = 1e-6

    sweep_resolution: int = 400
    sweep_workers: int = 1
    csv_decimals: int = 9

    progress_bar: bool = True
    log_level: str = "WARNING"


def load_config(config_path: str = "config.toml",
                section: str = "DEFAULT") -> Config:
    """ Reads the DEFAULT section of the toml file, overlays the requested
    section on it and applies the environment override of max_full_n.

    Raises:
        ValueError: if the section is missing or names keys that DEFAULT
            does not have
    """
    if os.path.exists(config_path):
        config = toml.load(config_path)
        default_section = config.get("DEFAULT", {})
        if section not in config:
            raise ValueError(f"No section '{section}' in {config_path}")
        current_section = config[section]
        unknown_keys = (set(current_section.keys())
                        - set(default_section.keys()))
        if unknown_keys:
            raise ValueError(f"Unexpected config keys: {unknown_keys}")
        known = {f.name for f in fields(Config)}
        unknown_keys = set(default_section.keys()) - known
        if unknown_keys:
            raise ValueError(f"Unexpected config keys: {unknown_keys}")
        result = Config(section, **{**default_section, **current_section})
    else:
        logger.warning("%s not found, using built-in defaults", config_path)
        result = Config(section)

    max_n = os.environ.get(MAX_N_ENV)
    if max_n:
        try:
            result.max_full_n = int(max_n)
        except ValueError as err:
            raise ValueError(f"{MAX_N_ENV} must be an integer,"
                             f" got {max_n!r}") from err
    return result
