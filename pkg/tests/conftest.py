import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

# the hard 21-given puzzle used throughout (unique solution)
HARD_PUZZLE = (
    "........8"
    "9....57.."
    ".81....3."
    ".5.1...6."
    "....4.9.."
    "....57..."
    "4...7.2.."
    ".163....."
    "..8......"
)

# sliding-tile start position solvable in exactly 15 moves
HARD_BOARD_15 = (5, 1, 7, 3, 9, 2, 11, 4, 13, 6, 15, 8, 16, 10, 14, 12)

BENCH_DIR = Path(__file__).resolve().parents[1] / "benchmarks"


def extended_enabled() -> bool:
    return os.environ.get("SATKIT_EXTENDED", "") not in ("", "0")


def pytest_collection_modifyitems(config, items):
    skip = pytest.mark.skip(reason="extended suite: set SATKIT_EXTENDED=1")
    if not extended_enabled():
        for item in items:
            if "extended" in item.keywords:
                item.add_marker(skip)


@pytest.fixture(scope="session")
def hard_puzzle():
    from satkit.sudoku import Grid

    return Grid.from_text(HARD_PUZZLE)
