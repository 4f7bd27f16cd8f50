import pytest

from ccsurf.ambient import H2R, S2R
from ccsurf.revolution import immersion_from_profile, profile


@pytest.fixture(scope="session")
def sphere_chart_h2r_k2():
    return immersion_from_profile(H2R, profile(H2R, 2.0))


@pytest.fixture(scope="session")
def sphere_chart_s2r_k4():
    return immersion_from_profile(S2R, profile(S2R, 4.0))
