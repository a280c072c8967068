import pytest

from markoff_lucas import validate_params

GRID = [(6, 1), (1, -2), (2, -1), (3, 1), (3, 2), (4, 3)]


@pytest.fixture(scope="session")
def balancing():
    return validate_params(6, 1, "U")


@pytest.fixture(scope="session")
def jacobsthal():
    return validate_params(1, -2, "U")


@pytest.fixture(scope="session")
def jacobsthal_v():
    return validate_params(1, -2, "V")


def grid_params(kinds=("U", "V")):
    out = []
    for p, q in GRID:
        for kind in kinds:
            out.append(validate_params(p, q, kind))
    return out
