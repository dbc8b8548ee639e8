"""Additive and multiplicative Jordan-Chevalley decompositions with their polynomials."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import Singular, VerificationFailed
from .hmat import HMatrix, complex_adjoint, hinverse, jmap, project_to_hmatrix
from .poly import (
    PAIR,
    CongruenceSystem,
    eval_newton_at_matrix,
    hermite_newton,
    newton_eval_bound,
    newton_to_monomial,
    pcompose,
    pmul,
    realify,
    trim,
)
from .spectral import Spectrum, nested_kernels, spectrum
from .tolerances import DEFAULT, Tolerances


@dataclass(frozen=True)
class AdditiveJCD:
    S: HMatrix
    N: HMatrix
    f: np.ndarray
    g: np.ndarray
    residuals: dict = field(default_factory=dict)


@dataclass(frozen=True)
class MultiplicativeJCD:
    S: HMatrix
    U: HMatrix
    f: np.ndarray
    h: np.ndarray
    residuals: dict = field(default_factory=dict)


def hpow(A: HMatrix, k: int) -> HMatrix:
    out = HMatrix.identity(A.n)
    for _ in range(k):
        out = out @ A
    return out


def _members(spec: Spectrum):
    """(eigenvalue, exponent) for every complex eigenvalue, conjugates included."""
    for e in spec:
        k = e.index if e.index is not None else e.mult
        yield e.value, k
        if e.kind == PAIR:
            yield e.value.conjugate(), k


def congruence_system(spec: Spectrum) -> CongruenceSystem:
    """h = lam (mod (x - lam)^k) for every eigenvalue, plus h = 0 (mod x).

    The exponent k is the nilpotency index of (M - lam) on the generalized
    eigenspace, which is the exponent of (x - lam) in the minimal polynomial.
    """
    system = CongruenceSystem(mod_x=True)
    for lam, k in _members(spec):
        system.add(lam, lam, k)
    return system


EPS = np.finfo(float).eps


def _poly_gate(newton, A: HMatrix, target: HMatrix) -> tuple[float, float]:
    """Distance from target to p(A) (Newton form on the adjoint) and the rounding allowance."""
    M = complex_adjoint(A)
    val = project_to_hmatrix(eval_newton_at_matrix(*newton, M))
    return (val - target).norm(), 16 * M.shape[0] * EPS * newton_eval_bound(*newton, M)


def spectral_semisimple(A: HMatrix, spec: Spectrum, tol: Tolerances = DEFAULT) -> HMatrix:
    """X diag(lam) X^-1 where the columns of X span the generalized eigenspaces.

    This is the matrix f(A) for the interpolating f, but built from the
    eigenspace decomposition: evaluating a high-degree f at A directly loses
    accuracy roughly like eps * prod |A - z_k|.  The bases for conj(lam) are
    the J-images of those for lam, so the result commutes with J.
    """
    M = complex_adjoint(A)
    thresh = tol.eig * (1.0 + float(np.linalg.norm(M, 2)))
    cols, vals = [], []
    for e in spec:
        Q = nested_kernels(M, e.value, thresh)[-1]
        cols.append(Q)
        vals += [e.value] * Q.shape[1]
        if e.kind == PAIR:
            cols.append(jmap(Q))
            vals += [e.value.conjugate()] * Q.shape[1]
    X = np.column_stack(cols)
    if X.shape[1] != M.shape[0]:
        raise VerificationFailed(f"generalized eigenspaces span {X.shape[1]} of {M.shape[0]} dimensions")
    XD = X * np.array(vals)[None, :]
    return project_to_hmatrix(np.linalg.solve(X.T, XD.T).T)


def exact_split(A: HMatrix, S: HMatrix) -> tuple[HMatrix, HMatrix]:
    """Nudge S by at most an ulp of A per component so that S + N == A bitwise, N = A - S.

    Where a component of A is exactly S' + (A - S') for a nearby float S' this
    finds it; components with |S| > |A| usually have no such S' (the low bits
    of A fall below the spacing of floats near S) and keep S unchanged.
    """
    a = np.stack([A.y.real, A.y.imag, A.z.real, A.z.imag])
    s = np.stack([S.y.real, S.y.imag, S.z.real, S.z.imag])
    for _ in range(3):
        miss = (s + (a - s)) != a
        if not miss.any():
            break
        s = np.where(miss, a - (a - s), s)
    bad = (s + (a - s)) != a
    s = np.where(bad, np.stack([S.y.real, S.y.imag, S.z.real, S.z.imag]), s)
    S = HMatrix(s[0] + 1j * s[1], s[2] + 1j * s[3])
    return S, A - S


def additive_jcd(A: HMatrix, tol: Tolerances = DEFAULT, spec: Spectrum | None = None) -> AdditiveJCD:
    """A = S + N with S semisimple, N nilpotent, S = f(A), N = g(A), f(0) = g(0) = 0."""
    spec = spectrum(A, tol) if spec is None else spec
    nodes, coeffs = hermite_newton(congruence_system(spec))
    f = realify(newton_to_monomial(nodes, coeffs))
    if len(f) < 2:
        f = np.zeros(2)
    f[0] = 0.0
    g = -f
    g[1] += 1.0
    g[0] = 0.0
    S, N = exact_split(A, spectral_semisimple(A, spec, tol))
    n = A.n
    f_of_A, allowance = _poly_gate((nodes, coeffs), A, S)
    res = {
        "commutator": (S @ N - N @ S).norm(),
        "nilpotent": hpow(N, n).norm(),
        "f_of_A": f_of_A,
    }
    bounds = {
        "commutator": tol.residual * (1.0 + S.norm()) * (1.0 + N.norm()),
        "nilpotent": tol.residual * (1.0 + N.norm()) ** n,
        "f_of_A": tol.residual * (1.0 + S.norm()) + allowance,
    }
    _enforce(res, bounds)
    return AdditiveJCD(S, N, trim(f), trim(g), res)


def _enforce(res: dict, bounds: dict) -> None:
    for key, val in res.items():
        if val > bounds[key]:
            raise VerificationFailed(f"{key} residual {val:.3e} exceeds {bounds[key]:.3e}")


def is_semisimple(A: HMatrix, tol: Tolerances = DEFAULT, spec: Spectrum | None = None) -> bool:
    """True when every eigenspace of the adjoint equals the generalized eigenspace."""
    M = complex_adjoint(A)
    spec = spectrum(A, tol) if spec is None else spec
    N = M.shape[0]
    thresh = tol.eig * (1.0 + float(np.linalg.norm(M, 2)))
    for e in spec:
        s = np.linalg.svd(M - e.value * np.eye(N), compute_uv=False)
        if int(np.sum(s > thresh)) != N - e.mult:
            return False
    return True


def inverse_poly(k) -> np.ndarray:
    """q with x q(x) = 1 (mod k) for a polynomial k with k(0) != 0."""
    k = np.asarray(k, dtype=float)
    if k[0] == 0.0:
        raise Singular("characteristic polynomial has zero constant term")
    return -k[1:] / k[0]


def composite_h(f, g, k) -> np.ndarray:
    """1 + q(f(x)) g(x) with q = inverse_poly(k), unreduced."""
    q = inverse_poly(k)
    out = pmul(pcompose(q, f), g)
    out = np.asarray(out, dtype=float)
    out[0] += 1.0
    return out


def unipotent_system(spec: Spectrum) -> CongruenceSystem:
    """h = x / lam (mod (x - lam)^k) for every eigenvalue, plus h(0) = 1.

    On the generalized eigenspace of lam the semisimple part acts as lam, so
    S^-1 A acts as A / lam there; h(A) = S^-1 A = U follows.
    """
    system = CongruenceSystem()
    for lam, k in _members(spec):
        system.add([1.0, 1.0 / lam], lam, k)
    system.add(1.0, 0.0, 1)
    return system


def multiplicative_jcd(A: HMatrix, tol: Tolerances = DEFAULT, spec: Spectrum | None = None) -> MultiplicativeJCD:
    """A = S U with S semisimple, U unipotent, S = f(A), U = h(A), f(0) = 0, h(0) = 1."""
    spec = spectrum(A, tol) if spec is None else spec
    if any(e.value == 0 for e in spec):
        raise Singular("0 is an eigenvalue; no multiplicative decomposition")
    add = additive_jcd(A, tol, spec)
    S, N = add.S, add.N
    U = HMatrix.identity(A.n) + hinverse(S, tol) @ N
    hn = hermite_newton(unipotent_system(spec))
    h = realify(newton_to_monomial(*hn))
    h[0] = 1.0
    n = A.n
    E = U - HMatrix.identity(A.n)
    h_of_A, allowance = _poly_gate(hn, A, U)
    res = {
        "product": (S @ U - A).norm(),
        "commutator": (S @ U - U @ S).norm(),
        "unipotent": hpow(E, n).norm(),
        "h_of_A": h_of_A,
    }
    bounds = {
        "product": tol.residual * (1.0 + A.norm()),
        "commutator": tol.residual * (1.0 + S.norm()) * (1.0 + U.norm()),
        "unipotent": tol.residual * (1.0 + E.norm()) ** n,
        "h_of_A": tol.residual * (1.0 + U.norm()) + allowance,
    }
    _enforce(res, bounds)
    return MultiplicativeJCD(S, U, add.f, trim(h), res)


__all__ = [
    "AdditiveJCD",
    "MultiplicativeJCD",
    "additive_jcd",
    "composite_h",
    "congruence_system",
    "exact_split",
    "inverse_poly",
    "is_semisimple",
    "multiplicative_jcd",
    "unipotent_system",
]
