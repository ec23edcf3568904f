# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""Tests regarding the common parsing module of pinchcert."""
from pathlib import Path

import pytest

from pinchcert.common.parsing import (
    PINCHCERT_CONFIG_FILENAME,
    PINCHCERT_DIR_ENV_VAR,
    default_locations,
    parse_configs,
)


class TestParsing:
    """Tests for common/parsing.py"""

    def test_env_dir_has_highest_priority(self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch):
        monkeypatch.setenv(PINCHCERT_DIR_ENV_VAR, str(tmp_path))

        assert default_locations(PINCHCERT_CONFIG_FILENAME)[0] == tmp_path / PINCHCERT_CONFIG_FILENAME

    def test_parse_configs_priority(self, tmp_path: Path):
        high = tmp_path / "high.conf"
        low = tmp_path / "low.conf"
        high.write_text("[pinchcert]\njobs=8\n")
        low.write_text("[pinchcert]\njobs=2\nseed=5\n")

        files, cfg = parse_configs([high, low, tmp_path / "missing.conf"])

        assert files == [str(low), str(high)]
        assert cfg["pinchcert"].getint("jobs") == 8
        assert cfg["pinchcert"].getint("seed") == 5
