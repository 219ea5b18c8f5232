import pytest

from tripoise.generate import zigzag


@pytest.fixture
def tri():
    """The reference triangle (0,0), (1,2), (2,0)."""
    from tripoise.geometry import pt

    return (pt(0, 0), pt(1, 2), pt(2, 0))


@pytest.fixture
def zig1():
    return zigzag(1)


@pytest.fixture
def zig2():
    return zigzag(2)


@pytest.fixture
def zig3():
    return zigzag(3)
