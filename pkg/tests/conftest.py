import pytest

from mobius3.lattice import lattice_of
from mobius3.pgl.group import group


@pytest.fixture(scope="session")
def psl32_model():
    return lattice_of(group(2), q=2, kind="psl3")


@pytest.fixture(scope="session")
def stream8():
    from mobius3.pgl.scan import full_stream
    return full_stream(8)
