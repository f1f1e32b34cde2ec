import random

import pytest

from apnforge import UniPoly, make_field


@pytest.fixture(scope="session")
def g2():
    return make_field(1)


@pytest.fixture(scope="session")
def g4():
    return make_field(2)


@pytest.fixture(scope="session")
def g8():
    return make_field(3)


@pytest.fixture(scope="session")
def g16():
    return make_field(4)


@pytest.fixture(scope="session")
def g64():
    return make_field(6)


def random_poly(rng: random.Random, ctx, max_deg: int, min_deg: int = 3) -> UniPoly:
    """Random polynomial with unit leading coefficient and ~40% term density."""
    deg = rng.randrange(min_deg, max_deg + 1)
    pairs = {deg: 1}
    for e in range(deg):
        if rng.random() < 0.4:
            pairs[e] = rng.randrange(1, ctx.order)
    return UniPoly.from_pairs(ctx, pairs)


def random_q_affine(rng: random.Random, ctx, max_deg: int = 8) -> UniPoly:
    pairs = {}
    e = 1
    while e <= max_deg:
        if rng.random() < 0.5:
            pairs[e] = rng.randrange(1, ctx.order)
        e *= 2
    if rng.random() < 0.5:
        pairs[0] = rng.randrange(1, ctx.order)
    return UniPoly.from_pairs(ctx, pairs)


@pytest.fixture
def rand_poly():
    return random_poly


@pytest.fixture
def rand_q_affine():
    return random_q_affine
