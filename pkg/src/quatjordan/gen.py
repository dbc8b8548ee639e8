"""Seeded test instances with known Jordan structure."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GenerationFailed
from .hmat import HMatrix, complex_adjoint, hinverse
from .jordan import jordan_matrix, make_spec
from .quat import qmul_arr

GRID = (0j, 1 + 0j, -1 + 0j, 1j, 1 + 1j, 2 + 0j)


def random_integer_hmatrix(n: int, rng: np.random.Generator, bound: int = 2) -> HMatrix:
    return HMatrix.from_components(rng.integers(-bound, bound + 1, size=(n, n, 4)).astype(float))


def hprod_components(B: np.ndarray, C: np.ndarray) -> np.ndarray:
    """Product of rectangular quaternion matrices given as (p, q, 4) and (q, r, 4) arrays."""
    return qmul_arr(B[:, :, None, :], C[None, :, :, :]).sum(axis=1)


def thin_product(n: int, r: int, rng: np.random.Generator, bound: int = 2) -> HMatrix:
    """n x n product of n x r and r x n integer quaternion factors (rank at most r)."""
    B = rng.integers(-bound, bound + 1, size=(n, r, 4)).astype(float)
    C = rng.integers(-bound, bound + 1, size=(r, n, 4)).astype(float)
    return HMatrix.from_components(hprod_components(B, C))


def adjoint_cond(P: HMatrix) -> float:
    return float(np.linalg.cond(complex_adjoint(P)))


def random_spec(n: int, rng: np.random.Generator, grid=GRID):
    """Random block sizes summing to n, each block with an eigenvalue drawn from grid."""
    sizes = []
    left = n
    while left:
        m = int(rng.integers(1, left + 1))
        sizes.append(m)
        left -= m
    return make_spec((grid[int(rng.integers(len(grid)))], m) for m in sizes)


@dataclass(frozen=True)
class GenResult:
    A: HMatrix
    spec: tuple
    P: HMatrix
    seed: int | None = None

    def to_json(self, pretty: bool = False) -> dict:
        from .io import hmatrix_to_json

        return {
            "A": hmatrix_to_json(self.A, pretty),
            "spec": [b.to_json() for b in self.spec],
            "P": hmatrix_to_json(self.P, pretty),
            "seed": self.seed,
        }


def gen(spec, seed: int | None = None, cond_bound: float = 1e3, P: HMatrix | None = None,
        max_tries: int = 200, bound: int = 2) -> GenResult:
    """A = P Jordan(spec) P^-1 with a random integer quaternion P (or the given P).

    P is redrawn until the condition number of its adjoint is at most
    cond_bound; GenerationFailed after max_tries draws.
    """
    spec = make_spec(spec)
    J = jordan_matrix(spec)
    n = J.n
    if P is None:
        rng = np.random.default_rng(seed)
        for _ in range(max_tries):
            cand = random_integer_hmatrix(n, rng, bound)
            if adjoint_cond(cand) <= cond_bound:
                P = cand
                break
        else:
            raise GenerationFailed(f"no P with condition <= {cond_bound:g} in {max_tries} draws")
    elif P.n != n:
        raise ValueError(f"P is {P.n}x{P.n} but the Jordan blocks sum to {n}")
    A = P @ J @ hinverse(P)
    return GenResult(A, spec, P, seed)
