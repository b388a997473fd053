import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pathclear.geometry import SimplePolygon, validate_scene


def square(polygon_id, x0, y0, side=1.0):
    return SimplePolygon.from_coords(
        polygon_id,
        [(x0, y0), (x0 + side, y0), (x0 + side, y0 + side), (x0, y0 + side)],
    )


@pytest.fixture
def unit_square_scene():
    """One square covering [2,3] x [2,3]."""
    return validate_scene([square(0, 2.0, 2.0)])


@pytest.fixture
def two_squares_scene():
    """Squares [2,3]^2 and [6,7] x [2,3]; demo scene of the explorer."""
    return validate_scene([square(0, 2.0, 2.0), square(1, 6.0, 2.0)])


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
