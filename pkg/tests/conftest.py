import os
import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from algext.field import field_parse

settings.register_profile(
    "default", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

DATA = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "data")
SMALL_FIELDS = ["GF(2)", "GF(3)", "GF(4)", "GF(5)"]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(params=["GF(2)", "GF(3)"])
def small_field(request):
    return field_parse(request.param)


@pytest.fixture
def data_dir():
    return DATA
