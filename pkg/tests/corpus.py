"""Seeded instance families shared by the acceptance tests."""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from quatjordan.gen import (
    adjoint_cond,
    gen,
    random_integer_hmatrix,
    random_spec,
    thin_product,
)

ROUND_TRIP_SIZES = range(2, 9)
ROUND_TRIP_PER_SIZE = 200


def round_trip_seed(n: int, k: int) -> int:
    return 100_000 + 1000 * n + k


@lru_cache(maxsize=1)
def round_trip_corpus():
    """(seed, GenResult) for 200 instances per n in 2..8, eigenvalues on the grid, cond <= 1e3."""
    out = []
    for n in ROUND_TRIP_SIZES:
        for k in range(ROUND_TRIP_PER_SIZE):
            seed = round_trip_seed(n, k)
            spec = random_spec(n, np.random.default_rng(seed))
            out.append((seed, gen(spec, seed, cond_bound=1e3)))
    return tuple(out)


@lru_cache(maxsize=1)
def integer_corpus(count: int = 500, seed: int = 20240501):
    """Random integer quaternion matrices, n uniform in 1..6, components in [-3, 3]."""
    rng = np.random.default_rng(seed)
    return tuple(random_integer_hmatrix(int(rng.integers(1, 7)), rng, 3) for _ in range(count))


@lru_cache(maxsize=1)
def rank_corpus(count: int = 500, seed: int = 777):
    """Half full random matrices, half products of thin n x r and r x n factors."""
    rng = np.random.default_rng(seed)
    out = []
    for t in range(count):
        n = int(rng.integers(1, 9))
        if t % 2:
            out.append(random_integer_hmatrix(n, rng, 2))
        else:
            out.append(thin_product(n, int(rng.integers(0, n + 1)), rng))
    return tuple(out)


@lru_cache(maxsize=1)
def invertible_corpus(count: int = 100, seed: int = 99):
    """Random integer matrices (n <= 6) whose adjoint has condition number <= 1e3."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        A = random_integer_hmatrix(int(rng.integers(1, 7)), rng, 3)
        if adjoint_cond(A) <= 1e3:
            out.append(A)
    return tuple(out)
