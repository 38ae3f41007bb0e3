import pytest

from entrank import parse_spec, place_spec


@pytest.fixture(scope="session")
def x2x3_spec():
    return parse_spec({
        "d": 2,
        "components": [
            {"multiplicity": 1, "char": 0, "min_poly": [0, 1],
             "xi": [[2, 1], [3, 1]]},
        ],
    })


@pytest.fixture(scope="session")
def x2x3(x2x3_spec):
    return place_spec(x2x3_spec)


@pytest.fixture(scope="session")
def ledrappier_spec():
    return parse_spec({
        "d": 2,
        "components": [
            {"multiplicity": 1, "char": 2,
             "generators": [{"terms": [{"exp": [0, 0], "coeff": 1},
                                       {"exp": [1, 0], "coeff": 1},
                                       {"exp": [0, 1], "coeff": 1}]}]},
        ],
    })


@pytest.fixture(scope="session")
def ledrappier(ledrappier_spec):
    return place_spec(ledrappier_spec)


@pytest.fixture(scope="session")
def golden_mean_spec():
    return parse_spec({
        "d": 2,
        "components": [
            {"multiplicity": 1, "char": 0, "min_poly": [-1, -1, 1],
             "xi": [[0, 1, 1, 1], [2, 1, 0, 1]]},
        ],
    })


def ratio_shift_spec(k: int):
    """d = 2 spec with xi = (2, 3 / 2^k); entropy log 3 along (k, 1)."""
    return parse_spec({
        "d": 2,
        "components": [
            {"multiplicity": 1, "char": 0, "min_poly": [0, 1],
             "xi": [[2, 1], [3, 2**k]]},
        ],
    })
