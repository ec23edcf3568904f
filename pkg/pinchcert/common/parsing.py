# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""Common parsing related functionality"""
import logging
import os
from configparser import ConfigParser
from pathlib import Path
from typing import List, Tuple

logger = logging.getLogger(__name__)

PINCHCERT_DIR_ENV_VAR = "PINCHCERT_DIR"
PINCHCERT_CONFIG_FILENAME: str = "pinchcert.conf"


def default_locations(filename: str) -> List[Path]:
    """
    Look for pinchcert files in the default locations with descending priorities:
    - File: $PINCHCERT_DIR/filename
    - File: ~/.pinchcert/filename
    - File: ~/.config/pinchcert/filename
    - File: /etc/pinchcert/filename
    """

    pinchcert_dir_env_var = os.getenv(PINCHCERT_DIR_ENV_VAR)
    home_dir_file = Path.home() / ".pinchcert" / filename
    home_dir_config_file = Path.home() / ".config/pinchcert" / filename
    etc_dir_file = Path("/etc/pinchcert") / filename

    file_locations: List[Path] = []

    # $PINCHCERT_DIR/filename
    if pinchcert_dir_env_var:
        file_locations.append(Path(pinchcert_dir_env_var) / filename)

    # ~/.pinchcert/filename
    if home_dir_file.exists():
        file_locations.append(home_dir_file)

    # ~/.config/pinchcert/filename
    if home_dir_config_file.exists():
        file_locations.append(home_dir_config_file)

    # /etc/pinchcert/filename
    if etc_dir_file.exists():
        file_locations.append(etc_dir_file)

    return file_locations


def parse_configs(filepaths: List[Path]) -> Tuple[List[str], ConfigParser]:
    """Parse all available configs from filepaths in descending priority."""
    cfg: ConfigParser = ConfigParser()
    parsed_files: List[str] = cfg.read(filepaths[::-1])  # invert list to preserve priority
    logger.debug("Parsed config files: %s", parsed_files)
    return parsed_files, cfg
