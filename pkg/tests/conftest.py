"""
Shared fixtures. Puts src/ on sys.path the same way main.py does.
"""

import sys
from pathlib import Path

import pytest

SRC = Path(__file__).resolve().parent.parent / 'src'
sys.path.insert(0, str(SRC))

from utils.config import AppConfig, reset_config  # noqa: E402
from trees.newick import parse_newick  # noqa: E402

BAL4 = "((1:1,2:1):1,(3:1,4:1):1);"
FIG1 = "(((1:1,2:1):3,(3:2,(4:1,5:1):1):2):5,(((6:1,7:1):2,(8:1,9:1):2):1,10:4):5);"
CHERRY = "(1:1,2:1);"

# Reduction derived from FIG1_ALPHA, in application order
FIG1_REDUCTION = [(1, 2), (4, 5), (6, 7), (8, 9), (3, 5), (7, 9), (2, 5), (9, 10), (5, 10)]
FIG1_ALPHA = [1, 4, 6, 8, 3, 7, 2, 9, 5]


@pytest.fixture
def bal4():
    return parse_newick(BAL4)


@pytest.fixture
def fig1():
    return parse_newick(FIG1)


@pytest.fixture
def cherry():
    return parse_newick(CHERRY)


@pytest.fixture(autouse=True)
def isolated_config(tmp_path):
    """Every test sees defaults, never the user's ~/.tropdissim/config.json."""
    config = AppConfig(tmp_path / 'config.json')
    config.set('ledger.path', str(tmp_path / 'ledger.db'), persist=False)
    reset_config(config)
    yield config
    reset_config()
