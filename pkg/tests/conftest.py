import os
import random
import sys

import pytest

# Add parent directory to path for imports
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from config import TSPLIB_DIR  # noqa: E402
from instance_generator import InstanceGenerator  # noqa: E402
from tsp_instance import Instance, build_neighbor_lists  # noqa: E402


@pytest.fixture
def square() -> Instance:
    """Side-10 square: perimeter 40, each diagonal rounds to 14."""
    return InstanceGenerator().square_instance(10)


@pytest.fixture
def triangle() -> Instance:
    """The 3-4-5 triangle; its only tour has length 12."""
    return Instance.from_coords("tri", [(0, 0), (3, 0), (0, 4)])


@pytest.fixture
def generator(tmp_path) -> InstanceGenerator:
    return InstanceGenerator(output_dir=str(tmp_path), seed=7)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(12345)


@pytest.fixture
def nbrs_of():
    """Build candidate lists for an instance."""
    def build(inst, k=10):
        return build_neighbor_lists(inst, k)
    return build


def tsplib_file(name: str) -> str:
    """Path of a TSPLIB file under TSPLIB_DIR, skipping the test when it is absent."""
    path = os.path.join(TSPLIB_DIR, name)
    if not os.path.exists(path):
        pytest.skip(f"{name} not found in {TSPLIB_DIR} (set TSPLIB_DIR)")
    return path
