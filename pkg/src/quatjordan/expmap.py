"""Exponential and logarithm of quaternion matrices."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import Singular, VerificationFailed
from .hmat import HMatrix, complex_adjoint, from_complex_adjoint, hinverse
from .jcd import additive_jcd, multiplicative_jcd
from .jordan import jordan_form
from .tolerances import DEFAULT, Tolerances

TAYLOR_TERMS = 18


def expm_complex(M: np.ndarray) -> np.ndarray:
    """Scaling and squaring: scale until the 1-norm is at most 1/2, 18 Taylor terms, square back."""
    M = np.asarray(M, dtype=complex)
    norm1 = float(np.max(np.sum(np.abs(M), axis=0), initial=0.0))
    s = max(0, math.ceil(math.log2(norm1 / 0.5))) if norm1 > 0.5 else 0
    X = M / 2.0**s
    eye = np.eye(M.shape[0], dtype=complex)
    # Horner form of sum X^k / k!
    E = eye.copy()
    for k in range(TAYLOR_TERMS, 0, -1):
        E = eye + (X @ E) / k
    for _ in range(s):
        E = E @ E
    return E


def hexp(A: HMatrix, tol: Tolerances = DEFAULT) -> HMatrix:
    return from_complex_adjoint(expm_complex(complex_adjoint(A)), tol)


def block_log(lam: complex, m: int) -> np.ndarray:
    """Principal logarithm of the Jordan block J_m(lam), lam != 0."""
    L = np.zeros((m, m), dtype=complex)
    np.fill_diagonal(L, cmath.log(lam))
    for t in range(1, m):
        c = (-1) ** (t + 1) / (t * lam**t)
        idx = np.arange(m - t)
        L[idx, idx + t] = c
    return L


def hlog(A: HMatrix, tol: Tolerances = DEFAULT) -> HMatrix:
    """A logarithm of an invertible A through its Jordan form; hexp(hlog(A)) = A.

    Each block J_m(lam) gets the principal logarithm of lam (lam has Im >= 0,
    so negative reals map to log|lam| + i pi) plus the finite series in N/lam.
    """
    hinverse(A, tol)  # raises Singular
    jr = jordan_form(A, tol)
    n = A.n
    L = np.zeros((n, n), dtype=complex)
    i = 0
    for b in jr.spec:
        if b.value == 0:
            raise Singular("0 is an eigenvalue")
        L[i : i + b.size, i : i + b.size] = block_log(b.value, b.size)
        i += b.size
    logA = jr.P @ HMatrix(L) @ hinverse(jr.P, tol)
    resid = (hexp(logA, tol) - A).norm()
    bound = tol.residual * (1.0 + A.norm())
    if resid > bound:
        raise VerificationFailed(f"exp(log A) residual {resid:.3e} exceeds {bound:.3e}")
    return logA


@dataclass(frozen=True)
class ExpJcdReport:
    A: HMatrix
    expA: HMatrix
    S: HMatrix
    N: HMatrix
    S_exp: HMatrix
    U_exp: HMatrix
    semisimple_residual: float
    unipotent_residual: float

    def residuals(self) -> dict:
        return {"exp_S": self.semisimple_residual, "exp_N": self.unipotent_residual}


def exp_jcd_relation(A: HMatrix, tol: Tolerances = DEFAULT) -> ExpJcdReport:
    """Compare exp of the additive parts of A with the multiplicative parts of exp A."""
    E = hexp(A, tol)
    add = additive_jcd(A, tol)
    mul = multiplicative_jcd(E, tol)
    rs = (hexp(add.S, tol) - mul.S).norm()
    ru = (hexp(add.N, tol) - mul.U).norm()
    return ExpJcdReport(A, E, add.S, add.N, mul.S, mul.U, rs, ru)
