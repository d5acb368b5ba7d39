import random

import pytest
from hypothesis import strategies as st

from rank_consensus import Ranking, RankingSet

# Small universe keeps brute-force comparisons fast while still exercising
# absent items, ties and truncation.
TOKENS = "abcdefgh"


@pytest.fixture
def example_set() -> RankingSet:
    """Four strict rankings over overlapping universes; the worked example
    used throughout the unit tests, with hand-checked scores."""
    return RankingSet([
        Ranking.strict("abcdef"),
        Ranking.strict("bcdefa"),
        Ranking.strict("bdaghf"),
        Ranking.strict("bacdfe"),
    ])


def random_ranking(rng: random.Random, universe=TOKENS, allow_ties=True) -> Ranking:
    items = rng.sample(list(universe), rng.randint(1, len(universe)))
    blocks = []
    i = 0
    while i < len(items):
        width = 1
        if allow_ties and len(items) - i >= 2 and rng.random() < 0.3:
            width = rng.randint(2, min(3, len(items) - i))
        blocks.append(items[i:i + width])
        i += width
    return Ranking(blocks)


def random_ranking_set(rng: random.Random, n_min=2, n_max=6,
                       universe=TOKENS, allow_ties=True) -> RankingSet:
    n = rng.randint(n_min, n_max)
    return RankingSet(
        [random_ranking(rng, universe, allow_ties) for _ in range(n)]
    )


@st.composite
def rankings_st(draw, universe=TOKENS, min_size=1, allow_ties=True):
    perm = draw(st.permutations(list(universe)))
    size = draw(st.integers(min_value=min_size, max_value=len(universe)))
    items = list(perm[:size])
    blocks = [[items[0]]]
    for token in items[1:]:
        if allow_ties and draw(st.booleans()):
            blocks[-1].append(token)
        else:
            blocks.append([token])
    return Ranking(blocks)


@st.composite
def ranking_sets_st(draw, min_n=2, max_n=5, universe=TOKENS,
                    min_size=1, allow_ties=True):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    return RankingSet([
        draw(rankings_st(universe=universe, min_size=min_size, allow_ties=allow_ties))
        for _ in range(n)
    ])
