import pytest

from weightsys.diagrams import hopf
from weightsys.diagrams import perm
from weightsys.diagrams.perm import parse_permutation
from weightsys.diagrams.wgl import GL_MEMO
from weightsys.diagrams.wso import SO_MEMO


def _clear():
    GL_MEMO.clear()
    SO_MEMO.clear()
    perm.interval_decomposition.cache_clear()
    perm.canonical_cyclic_class.cache_clear()
    perm.canonical_rotational_class.cache_clear()
    hopf.diagram_space.cache_clear()


@pytest.fixture(autouse=True)
def clear_caches():
    """Clear the memo stores before each test so no value leaks between tests."""
    _clear()
    yield
    _clear()


@pytest.fixture
def alpha_1():
    """Three cycles on eight legs, the start of the two-hyper-arc worked example."""
    return parse_permutation('(1,8)(2,7,4)(3,6,5)')


@pytest.fixture
def two_arc_terms():
    """Leg 1 of alpha_1 moved around the cycle (2,7,4), with alternating signs."""
    return [
        (1, parse_permutation('(1,8)(2,7,4)(3,6,5)')),
        (-1, parse_permutation('(1,7,4)(2,8)(3,6,5)')),
        (1, parse_permutation('(1,7,4)(2,6,5)(3,8)')),
        (-1, parse_permutation('(1,7,3)(2,6,5)(4,8)')),
        (1, parse_permutation('(1,7,3)(2,5,4)(6,8)')),
        (-1, parse_permutation('(1,6,3)(2,5,4)(7,8)')),
    ]


def pytest_configure(config):
    """Configure pytest with custom markers."""
    config.addinivalue_line('markers', 'unit: unit tests')
    config.addinivalue_line('markers', 'slow: exhaustive sweeps taking more than a few seconds')
    config.addinivalue_line('markers', 'cache: tests that involve the persistent memo cache')
