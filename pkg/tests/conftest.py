import pytest

from ptakkit.families import random_family
from ptakkit.game import delta_exact

CORPUS_SIZE = 500


@pytest.fixture(scope="session")
def corpus():
    """The seeded 500-family corpus (n <= 12, at most 40 maximal sets)."""
    return [random_family(seed, n=None, max_sets=40) for seed in range(CORPUS_SIZE)]


@pytest.fixture(scope="session")
def corpus_values(corpus):
    """Exact game value results, computed once for the whole session."""
    return [delta_exact(f) for f in corpus]
