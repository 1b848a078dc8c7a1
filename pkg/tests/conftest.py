import random

import pytest
from hypothesis import assume, settings
from hypothesis import strategies as st

from knotadj.braid import BraidWord

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=20241018, help="seed for randomized suites")


@pytest.fixture
def rng(request):
    return random.Random(request.config.getoption("--seed"))


def random_word(rng, max_syllables=5, max_exp=3, max_crossings=12, odd=None):
    """Alternating word starting on sigma_1 with nonzero exponents."""
    while True:
        L = rng.randint(1, max_syllables)
        if odd is True and L % 2 == 0:
            continue
        if odd is False and L % 2 == 1:
            continue
        exps = [rng.choice([e for e in range(-max_exp, max_exp + 1) if e]) for _ in range(L)]
        w = BraidWord.from_exponents(exps)
        if w.crossing_count <= max_crossings:
            return w


nonzero = st.integers(-3, 3).filter(bool)


@st.composite
def words(draw, max_syllables=5, odd=None, max_crossings=12):
    L = draw(st.integers(1, max_syllables))
    if odd is True and L % 2 == 0:
        L -= 1 if L > 1 else -1
    if odd is False and L % 2 == 1:
        L += 1
    exps = draw(st.lists(nonzero, min_size=L, max_size=L))
    w = BraidWord.from_exponents(exps)
    assume(w.crossing_count <= max_crossings)
    return w
