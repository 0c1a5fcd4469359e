import pytest

from g2forge.aw import standard_aw_frame
from g2forge.g2 import standard_frame


@pytest.fixture(scope="session")
def g2frame():
    return standard_frame()


@pytest.fixture(scope="session")
def awframe():
    return standard_aw_frame()
