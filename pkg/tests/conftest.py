import time

import numpy as np
import pytest

from ballpark.filtration import FilteringFunction
from ballpark.geometry import BallCover, PointCloud
from ballpark.oracle import raster_ball_union_persistence
from ballpark.scenarios import circle_points, near96_points, run_circle64


@pytest.fixture(scope="session")
def circle64_cover():
    return BallCover(PointCloud(circle_points(4.0, 64)), 0.5, tau=4.0)


@pytest.fixture(scope="session")
def circle64_union_diagram(circle64_cover):
    f = FilteringFunction.abs_coordinate(1)
    return raster_ball_union_persistence(circle64_cover, f, 0.01)


@pytest.fixture(scope="session")
def near96_cover():
    return BallCover(PointCloud(near96_points()), 0.55, tau=4.0, offset=0.25)


@pytest.fixture(scope="session")
def near96_union_diagram(near96_cover):
    f = FilteringFunction.abs_coordinate(1)
    return raster_ball_union_persistence(near96_cover, f, 0.01)


@pytest.fixture(scope="session")
def circle64_scenario_timed():
    t0 = time.monotonic()
    result = run_circle64()
    return result, time.monotonic() - t0
