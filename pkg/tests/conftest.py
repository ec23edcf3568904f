# Copyright (c) 2023 Celonis SE
# Covered under the included MIT License:
#   https://github.com/celonis/homcc/blob/main/LICENSE

"""
Configure pytest:
- provide markers:
  - slow: enable tests that sweep the full ranges of the acceptance suite
- add option --runslow to enable "slow" marked tests and otherwise skip them on default
"""
from typing import List

import pytest


def pytest_addoption(parser: pytest.Parser):
    parser.addoption(
        "--runslow",
        action="store_true",
        default=False,
        help="run sweeps over the full acceptance ranges",
    )


def pytest_configure(config: pytest.Config):
    config.addinivalue_line("markers", "slow: mark tests that sweep the full acceptance ranges")


def pytest_collection_modifyitems(config: pytest.Config, items: List[pytest.Item]):
    if config.getoption("--runslow"):
        return

    slow_marker = pytest.mark.skip(reason="specify --runslow to execute")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(slow_marker)
