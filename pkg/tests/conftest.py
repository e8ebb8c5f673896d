import pytest

from coverlab.colorings import enumerate_proper
from coverlab.graphs import m_for_average_degree, sample_gnm

# Shared random-graph corpus: 200 sparse graphs at average degree 3.8
# with 3 colors. Seeds are fixed so every run sees the same instances.
CORPUS_K = 3
CORPUS_SIZE = 200
CORPUS_DEGREE = 3.8
_CORPUS_NS = (7, 8, 9, 10, 11, 12)


def corpus_specs():
    return [
        (
            _CORPUS_NS[i % len(_CORPUS_NS)],
            m_for_average_degree(_CORPUS_NS[i % len(_CORPUS_NS)], CORPUS_DEGREE),
            1000 + i,
        )
        for i in range(CORPUS_SIZE)
    ]


@pytest.fixture(scope="session")
def corpus():
    return [sample_gnm(n, m, seed) for n, m, seed in corpus_specs()]


@pytest.fixture(scope="session")
def corpus_colorings(corpus):
    """All proper 3-colorings of every corpus graph (empty for the
    uncolorable ones)."""
    return [tuple(enumerate_proper(g, CORPUS_K)) for g in corpus]
