"""
Shared fixtures for dp3geo tests
"""

import pytest

from dp3geo.scroll import standard_to_matrix
from dp3geo.shared.models import FamilyParams, StandardScroll
from dp3geo.shared.validators import validate_profile


@pytest.fixture
def francia_family():
    """(-2;1,2,2): the first move is the Francia antiflip."""
    return FamilyParams(n=-2, a=1, b=2, c=2)


@pytest.fixture
def special_family():
    """(-1;1,1,2): nonrigid for special members only."""
    return FamilyParams(n=-1, a=1, b=1, c=2)


@pytest.fixture
def unstable_family():
    """(-4;2,2,4): unstable members restabilize to (-1;1,1,1)."""
    return FamilyParams(n=-4, a=2, b=2, c=4)


@pytest.fixture
def scroll_0122():
    return StandardScroll(base_dim=1, twists=(0, 1, 2, 2))


@pytest.fixture
def matrix_0122(scroll_0122):
    return standard_to_matrix(scroll_0122)


@pytest.fixture
def unstable_profile():
    """u-power profile of the special member of (-4;2,2,4)."""
    return validate_profile(
        {
            "xyt": 1,
            "xzt": 1,
            "y^2t": 2,
            "yzt": 2,
            "z^2t": 2,
            "xt^2": 3,
            "yt^2": 4,
            "zt^2": 4,
            "t^3": 6,
        }
    )
