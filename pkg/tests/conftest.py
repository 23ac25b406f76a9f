import pytest
from hypothesis import settings

from odakit.poset import FinitePoset
from odakit.relations import FullRelationAlgebra, full_algebra

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def brute_up_sets(P: FinitePoset) -> set[int]:
    """Oracle: scan every subset mask and keep the up-closed ones."""
    n = len(P)
    return {
        m
        for m in range(1 << n)
        if all(P.up_mask(P.elements[i]) & ~m == 0 for i in range(n) if m >> i & 1)
    }


@pytest.fixture(scope="session")
def full2():
    return full_algebra(2)


@pytest.fixture(scope="session")
def virtual2():
    return FullRelationAlgebra(2)


@pytest.fixture
def diamond():
    # bottom < l, r < top
    return FinitePoset.from_pairs(
        ["bot", "l", "r", "top"],
        [(0, 0), (1, 1), (2, 2), (3, 3), (0, 1), (0, 2), (0, 3), (1, 3), (2, 3)],
    )
