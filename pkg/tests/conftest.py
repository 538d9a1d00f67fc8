import pytest

from app.config import get_settings
from app.modules.exactalg import IMat2, IVec2


@pytest.fixture(autouse=True)
def fresh_settings():
    """Settings are cached; tests that patch SPECTRAL_* variables need a clean read."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


# Two matrices sharing one digit set: the first measure is spectral, the second is not
@pytest.fixture
def spectral_pair():
    return IMat2.from_rows([[8, -5], [4, -1]]), (IVec2(0, 0), IVec2(2, 1), IVec2(2, 4))


@pytest.fixture
def nonspectral_pair():
    return IMat2.from_rows([[5, -1], [2, 2]]), (IVec2(0, 0), IVec2(2, 1), IVec2(2, 4))


@pytest.fixture
def unit_digits():
    return IVec2(0, 0), IVec2(1, 0), IVec2(0, 1)


@pytest.fixture
def lower_triangular():
    """[[4,0],[1,3]] with {0, e1, e2} admits S = {0, (2,2), (3,1)}."""
    return IMat2.from_rows([[4, 0], [1, 3]])
