# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""Tests for the pinchcert package metadata"""
from pathlib import Path

SETUP_PY: Path = Path(__file__).parents[1] / "setup.py"


class TestSetup:
    """Tests for setup.py"""

    def test_metadata_names_only_pinchcert(self):
        setup_call = SETUP_PY.read_text().split("setup(", 1)[1]

        assert 'name="pinchcert"' in setup_call
        assert "url=" not in setup_call
        assert "homcc" not in setup_call
