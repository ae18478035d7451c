"""Shared field fixtures."""

import pytest
from hypothesis import settings

from glmaps import make_field

# timing-heavy exhaustive checks run inside some properties
settings.register_profile("glmaps", deadline=None)
settings.load_profile("glmaps")


@pytest.fixture
def gf2():
    return make_field(2)


@pytest.fixture
def gf3():
    return make_field(3)


@pytest.fixture
def gf4():
    return make_field(2, 2)


@pytest.fixture
def gf9():
    return make_field(3, 2)
