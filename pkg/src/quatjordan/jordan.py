"""Quaternionic Jordan form via J-paired Jordan chains of the complex adjoint.

Chains are stored as complex arrays whose columns are v_1, ..., v_m with
(M - lam) v_1 = 0 and (M - lam) v_{t+1} = v_t.  The J-image of a chain is a
chain for conj(lam); picking one chain from every J-pair and pulling the
vectors back to H^n gives the columns of the transition matrix P.
"""
from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from .errors import (
    NotAnEigenvalue,
    NotJCommuting,
    NotNilpotent,
    Singular,
    StructureViolation,
    VerificationFailed,
)
from .hmat import (
    HMatrix,
    columns_to_hmatrix,
    complex_adjoint,
    hinverse,
    j_residual,
    jmap,
    xi,
)
from .quat import canonical_complex
from .spectral import Spectrum, nested_kernels, spectrum
from .tolerances import DEFAULT, Tolerances

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class JordanBlock:
    value: complex
    size: int

    def to_json(self) -> dict:
        return {"re": float(self.value.real) + 0.0, "im": float(self.value.imag) + 0.0, "size": self.size}


JordanSpec = tuple  # tuple[JordanBlock, ...] in canonical order


def block_key(b: JordanBlock):
    return (b.value.real, b.value.imag, -b.size)


def make_spec(blocks: Iterable) -> tuple[JordanBlock, ...]:
    """Canonical spec from JordanBlock objects or (value, size) pairs."""
    out = []
    for b in blocks:
        if not isinstance(b, JordanBlock):
            lam, m = b
            b = JordanBlock(complex(lam), int(m))
        if b.size < 1:
            raise ValueError("Jordan block sizes must be positive")
        out.append(JordanBlock(canonical_complex(b.value), b.size))
    return tuple(sorted(out, key=block_key))


def spec_size(spec) -> int:
    return sum(b.size for b in make_spec(spec))


def jordan_matrix(spec) -> HMatrix:
    """Block-diagonal complex Jordan matrix, blocks in the given order."""
    blocks = [b if isinstance(b, JordanBlock) else JordanBlock(complex(b[0]), int(b[1])) for b in spec]
    n = sum(b.size for b in blocks)
    if n < 1:
        raise ValueError("empty Jordan spec")
    Y = np.zeros((n, n), dtype=complex)
    i = 0
    for b in blocks:
        for t in range(b.size):
            Y[i + t, i + t] = b.value
            if t + 1 < b.size:
                Y[i + t, i + t + 1] = 1.0
        i += b.size
    return HMatrix(Y)


def spec_equivalent(s1, s2, tol: float = 1e-9) -> bool:
    """Equal as multisets of (canonical eigenvalue, size), eigenvalues within tol."""
    a, b = list(make_spec(s1)), list(make_spec(s2))
    if len(a) != len(b):
        return False
    left = list(b)
    for blk in a:
        best, bd = None, None
        for k, other in enumerate(left):
            if other.size != blk.size:
                continue
            d = abs(other.value - blk.value)
            if d <= tol and (bd is None or d < bd):
                best, bd = k, d
        if best is None:
            return False
        left.pop(best)
    return True


@dataclass(frozen=True)
class PairedChain:
    """A Jordan chain for `eigenvalue` together with its J-mirror."""

    eigenvalue: complex
    chain: np.ndarray

    @property
    def size(self) -> int:
        return self.chain.shape[1]

    @property
    def mirror(self) -> np.ndarray:
        return jmap(self.chain)

    @property
    def mirror_eigenvalue(self) -> complex:
        return complex(self.eigenvalue).conjugate()


@dataclass(frozen=True)
class JordanResult:
    P: HMatrix
    spec: tuple[JordanBlock, ...]
    residual: float

    def jordan_matrix(self) -> HMatrix:
        return jordan_matrix(self.spec)

    def to_json(self) -> dict:
        from .io import hmatrix_to_json

        return {
            "spec": [b.to_json() for b in self.spec],
            "P": hmatrix_to_json(self.P),
            "residual": self.residual,
        }


# -- linear algebra helpers ----------------------------------------------------


def _orth(W: np.ndarray, thresh: float = 1e-12) -> np.ndarray:
    if W.shape[1] == 0:
        return W
    u, s, _ = np.linalg.svd(W, full_matrices=False)
    return u[:, s > thresh * max(1.0, s[0])]


def j_adapted_basis(Q: np.ndarray) -> np.ndarray:
    """Orthonormal basis [u_1..u_k, J u_1..J u_k] of the J-invariant span of Q.

    In these coordinates J acts as c -> S conj(c), the same standard form as on C^2n.
    """
    d = Q.shape[1]
    if d % 2:
        raise StructureViolation(f"J-invariant subspace cannot have odd dimension {d}")
    us: list[np.ndarray] = []
    jus: list[np.ndarray] = []
    for _ in range(d // 2):
        B = np.column_stack(us + jus) if us else np.zeros((Q.shape[0], 0), dtype=complex)
        R = Q - B @ (B.conj().T @ Q)
        u_, _, _ = np.linalg.svd(R, full_matrices=False)
        u = u_[:, 0]
        u = u - B @ (B.conj().T @ u)
        u = u / np.linalg.norm(u)
        ju = jmap(u)
        ju = ju - B @ (B.conj().T @ ju) - u * (u.conj() @ ju)
        ju = ju / np.linalg.norm(ju)
        us.append(u)
        jus.append(ju)
    return np.column_stack(us + jus)


def _symmetrize(T: np.ndarray) -> np.ndarray:
    return (T + xi(T)) / 2


# -- chains for a real eigenvalue: the paired recursion ---------------------------


def paired_nilpotent_jordan(T: np.ndarray, tol: Tolerances = DEFAULT, thresh: float | None = None):
    """J-paired Jordan chains of a nilpotent J-commuting matrix.

    Returns one PairedChain per J-pair (eigenvalue 0); together with their
    mirrors the chain vectors form a basis.  The recursion passes to the image
    of T, lifts every chain top there by a minimal-norm preimage, and completes
    with kernel vectors u added in pairs (u, J u).
    """
    T = np.asarray(T, dtype=complex)
    N = T.shape[0]
    if T.ndim != 2 or N != T.shape[1] or N % 2:
        raise StructureViolation(f"expected an even square matrix, got {T.shape}")
    norm2 = float(np.linalg.norm(T, 2))
    if j_residual(T) > tol.residual * (1.0 + float(np.max(np.abs(T), initial=0.0))):
        raise NotJCommuting("operator does not commute with J")
    power = np.linalg.matrix_power(T, N)
    if np.max(np.abs(power), initial=0.0) > tol.residual * (1.0 + norm2) ** N:
        raise NotNilpotent("operator is not nilpotent")
    thresh = tol.eig * (1.0 + norm2) if thresh is None else thresh
    chains = _paired_rec(_symmetrize(T), thresh)
    return [PairedChain(0j, c) for c in chains]


def _paired_rec(T: np.ndarray, thresh: float) -> list[np.ndarray]:
    N = T.shape[0]
    k = N // 2
    U, s, Vh = np.linalg.svd(T)
    r = int(np.sum(s > thresh))
    if r == 0:
        eye = np.eye(N, dtype=complex)
        return [eye[:, [i]] for i in range(k)]
    if r % 2:
        raise StructureViolation(f"image of a J-commuting operator has odd rank {r}")
    if r == N:
        raise NotNilpotent("operator restricted to its generalized eigenspace is invertible")

    B1 = j_adapted_basis(U[:, :r])
    T1 = _symmetrize(B1.conj().T @ T @ B1)
    pinv = (Vh[:r].conj().T / s[:r]) @ U[:, :r].conj().T
    chains = []
    for C in _paired_rec(T1, thresh):
        full = B1 @ C
        w = pinv @ full[:, -1]
        chains.append(np.column_stack([full, w]))

    vecs = [c for ch in chains for c in (ch, jmap(ch))]
    Y = _orth(np.column_stack(vecs))
    K = Vh[r:].conj().T
    count = sum(ch.shape[1] for ch in chains) * 2
    while count < N:
        R = K - Y @ (Y.conj().T @ K)
        _, _, wh = np.linalg.svd(R)
        u = K @ wh[0].conj()
        u = u / np.linalg.norm(u)
        chains.append(u[:, None])
        Y = _orth(np.column_stack([Y, u, jmap(u)]))
        count += 2
    return chains


# -- chains for a non-real eigenvalue --------------------------------------------


def nilpotent_chains(T: np.ndarray, thresh: float) -> list[np.ndarray]:
    """Jordan chains of a nilpotent matrix, longest first, tops chosen orthogonally."""
    m = T.shape[0]
    kernels = nested_kernels(T, 0.0, thresh)
    dims = [0] + [K.shape[1] for K in kernels]
    if dims[-1] != m:
        raise NotNilpotent(f"generalized kernel has dimension {dims[-1]} of {m}")
    s = len(kernels)
    dims.append(dims[-1])
    chains: list[np.ndarray] = []
    for t in range(s, 0, -1):
        n_new = (dims[t] - dims[t - 1]) - (dims[t + 1] - dims[t])
        if n_new <= 0:
            continue
        parts = [kernels[t - 2]] if t >= 2 else []
        parts += [ch[:, [t - 1]] for ch in chains if ch.shape[1] > t]
        W = _orth(np.column_stack(parts)) if parts else np.zeros((m, 0), dtype=complex)
        Kt = kernels[t - 1]
        R = Kt - W @ (W.conj().T @ Kt)
        u_, _, _ = np.linalg.svd(R, full_matrices=False)
        for q in range(n_new):
            v = u_[:, q]
            cols = [v]
            for _ in range(t - 1):
                cols.append(T @ cols[-1])
            chains.append(np.column_stack(cols[::-1]))
    return chains


def complex_chains_for(
    M: np.ndarray, lam: complex, tol: Tolerances = DEFAULT, thresh: float | None = None
) -> list[PairedChain]:
    """Jordan chains of M at a non-real eigenvalue lam (Im lam > 0), each with its J-mirror."""
    lam = complex(lam)
    if lam.imag <= 0:
        raise ValueError("complex_chains_for needs Im(lam) > 0")
    thresh = tol.eig * (1.0 + float(np.linalg.norm(M, 2))) if thresh is None else thresh
    bases = nested_kernels(M, lam, thresh)
    if not bases:
        raise NotAnEigenvalue(f"{lam} is not an eigenvalue")
    Q = bases[-1]
    T = Q.conj().T @ (M - lam * np.eye(M.shape[0])) @ Q
    return [PairedChain(lam, Q @ c) for c in nilpotent_chains(T, thresh)]


def real_chains_for(M: np.ndarray, mu: float, tol: Tolerances = DEFAULT, thresh: float | None = None):
    """One chain per J-pair of Jordan chains at a real eigenvalue mu."""
    mu = float(np.real(mu))
    thresh = tol.eig * (1.0 + float(np.linalg.norm(M, 2))) if thresh is None else thresh
    bases = nested_kernels(M, mu, thresh)
    if not bases:
        raise NotAnEigenvalue(f"{mu} is not an eigenvalue")
    B = j_adapted_basis(bases[-1])
    T = _symmetrize(B.conj().T @ (M - mu * np.eye(M.shape[0])) @ B)
    return [PairedChain(complex(mu), B @ pc.chain) for pc in paired_nilpotent_jordan(T, tol, thresh)]


# -- assembly ----------------------------------------------------------------------


def _normalize_chain(C: np.ndarray, real: bool) -> np.ndarray:
    """Rescale a chain so its longest vector has norm 1 and its top's largest entry is positive.

    For a real eigenvalue the chain may be multiplied on the right by any
    quaternion, so the largest quaternion entry of the top becomes real; for a
    non-real eigenvalue only complex phases keep the eigenvalue fixed.
    """
    C = C / np.max(np.linalg.norm(C, axis=0))
    n = C.shape[0] // 2
    top = C[:, -1]
    if real:
        alpha, beta = top[:n], top[n:].conj()
        mags = np.sqrt(np.abs(alpha) ** 2 + np.abs(beta) ** 2)
        p = int(np.argmax(mags))
        a, b = alpha[p].conj() / mags[p], -beta[p] / mags[p]
        # right multiplication by a + b j in C^2n coordinates
        return C * a + jmap(C) * np.conj(b)
    p = int(np.argmax(np.abs(top)))
    return C * (top[p].conj() / abs(top[p]))


def jordan_form(A: HMatrix, tol: Tolerances = DEFAULT, spec: Spectrum | None = None) -> JordanResult:
    """Transition matrix P and Jordan spec with P^-1 A P = Jordan(spec)."""
    M = complex_adjoint(A)
    spec = spectrum(A, tol) if spec is None else spec
    thresh = tol.eig * (1.0 + float(np.linalg.norm(M, 2)))
    picked: list[tuple[complex, np.ndarray]] = []
    for e in spec:
        if e.kind == "pair":
            chains = complex_chains_for(M, e.value, tol, thresh)
        else:
            chains = real_chains_for(M, e.value.real, tol, thresh)
        for pc in chains:
            picked.append((pc.eigenvalue, _normalize_chain(pc.chain, e.kind != "pair")))
    picked.sort(key=lambda vc: (vc[0].real, vc[0].imag, -vc[1].shape[1]))
    blocks = tuple(JordanBlock(v, c.shape[1]) for v, c in picked)
    V = np.column_stack([c for _, c in picked])
    if V.shape[1] != A.n:
        raise VerificationFailed(f"collected {V.shape[1]} chain vectors for dimension {A.n}")
    P = columns_to_hmatrix(V)
    try:
        Pinv = hinverse(P, tol)
    except Singular as exc:
        raise VerificationFailed(f"chain vectors are dependent: {exc}") from None
    residual = (Pinv @ A @ P - jordan_matrix(blocks)).norm()
    bound = tol.residual * (1.0 + A.norm())
    log.debug("jordan residual %.3e (bound %.3e)", residual, bound)
    if residual > bound:
        raise VerificationFailed(f"Jordan residual {residual:.3e} exceeds {bound:.3e}")
    return JordanResult(P, blocks, residual)
