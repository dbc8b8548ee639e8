"""Characteristic polynomial, spectrum and generalized eigenspaces of the adjoint."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonRealCoefficients, NotAnEigenvalue, StructureViolation
from .hmat import HMatrix, complex_adjoint
from .poly import (
    REAL,
    SpectralEntry,
    Spectrum,
    cluster_radius,
    cluster_values,
    eval_at_hmatrix,
    pair_clusters,
)
from .tolerances import DEFAULT, Tolerances

__all__ = [
    "GeneralizedEigenspace",
    "SpectralEntry",
    "Spectrum",
    "char_poly",
    "determinant",
    "generalized_eigenspace",
    "nested_kernels",
    "spectrum",
    "trace",
    "verify_cayley_hamilton",
]


def char_poly(A: HMatrix, tol: Tolerances = DEFAULT) -> np.ndarray:
    """det(xI - M) for M = complex_adjoint(A), ascending real coefficients (Faddeev-LeVerrier)."""
    M = complex_adjoint(A)
    N = M.shape[0]
    c = np.zeros(N + 1, dtype=complex)
    c[N] = 1.0
    Mk = np.zeros_like(M)
    eye = np.eye(N)
    for k in range(1, N + 1):
        Mk = M @ Mk + c[N - k + 1] * eye
        c[N - k] = -np.trace(M @ Mk) / k
    resid = float(np.max(np.abs(c.imag)))
    if resid > tol.residual * (1.0 + float(np.max(np.abs(c)))):
        raise NonRealCoefficients(f"imaginary residue {resid:.3e} in characteristic polynomial")
    return c.real.copy()


def trace(A: HMatrix) -> float:
    """Trace of the adjoint; minus the x^(2n-1) coefficient of char_poly."""
    return float(np.trace(complex_adjoint(A)).real)


def determinant(A: HMatrix, tol: Tolerances = DEFAULT) -> float:
    """Determinant of the adjoint (constant coefficient of char_poly); always real and >= 0."""
    return float(char_poly(A, tol)[0])


def verify_cayley_hamilton(A: HMatrix, tol: Tolerances = DEFAULT) -> float:
    return eval_at_hmatrix(char_poly(A, tol), A).norm()


def nested_kernels(M: np.ndarray, lam: complex, thresh: float, max_steps: int | None = None):
    """Orthonormal bases of ker (M - lam)^t for t = 1, 2, ... until the dimension stops growing.

    Each step takes the kernel of (I - Q Q^H)(M - lam), where Q spans the
    previous kernel, so no matrix powers are formed.
    """
    N = M.shape[0]
    T = M - lam * np.eye(N)
    max_steps = N if max_steps is None else max_steps
    bases = []
    Q = np.zeros((N, 0), dtype=complex)
    for _ in range(max_steps):
        B = T - Q @ (Q.conj().T @ T)
        _, s, vh = np.linalg.svd(B)
        r = int(np.sum(s > thresh))
        K = vh[r:].conj().T
        if K.shape[1] <= Q.shape[1]:
            break
        Q = K
        bases.append(Q)
        if Q.shape[1] == N:
            break
    return bases


def _kernel_threshold(M: np.ndarray, tol: Tolerances) -> float:
    return tol.eig * (1.0 + float(np.linalg.norm(M, 2)))


def spectrum(A: HMatrix, tol: Tolerances = DEFAULT) -> Spectrum:
    """Eigenvalue classes of the adjoint with multiplicities and nilpotency indices.

    Eigenvalues of the adjoint are computed by LAPACK, grouped with the
    multiplicity-aware clustering rule, checked for conjugate pairing and even
    real multiplicity, and each cluster is confirmed by the dimension of the
    generalized eigenspace at its centroid.
    """
    M = complex_adjoint(A)
    ev = np.linalg.eigvals(M)
    groups = cluster_values(ev, tol.cluster, halve_real=True)
    paired = pair_clusters([(c, len(m)) for c, m in groups])
    thresh = _kernel_threshold(M, tol)
    entries = []
    for v, m, kind in paired:
        if kind == REAL and m % 2:
            raise StructureViolation(f"real eigenvalue {v.real:.6g} has odd multiplicity {m}")
        bases = nested_kernels(M, v, thresh)
        dim = bases[-1].shape[1] if bases else 0
        if dim != m:
            raise StructureViolation(
                f"generalized eigenspace at {v:.6g} has dimension {dim}, cluster has {m} roots"
            )
        index = len(bases)
        if kind == REAL and v != 0 and abs(v) <= cluster_radius(v, m, tol.cluster, True):
            zb = nested_kernels(M, 0.0, thresh)
            if zb and zb[-1].shape[1] == m:
                v, index = 0j, len(zb)
        entries.append(SpectralEntry(v, m, kind, index))
    entries.sort(key=lambda e: (e.value.real, e.value.imag))
    return Spectrum(tuple(entries))


@dataclass(frozen=True)
class GeneralizedEigenspace:
    """Orthonormal basis (2n x m columns) of ker (M - eigenvalue)^(2n)."""

    eigenvalue: complex
    basis: np.ndarray
    index: int

    @property
    def dim(self) -> int:
        return self.basis.shape[1]


def generalized_eigenspace(
    A: HMatrix, lam: complex, tol: Tolerances = DEFAULT, spec: Spectrum | None = None
) -> GeneralizedEigenspace:
    """Generalized eigenspace of the adjoint at the spectrum member nearest lam.

    lam must lie within tol.eig * (1 + |lam|) of an eigenvalue (or of its
    conjugate); the basis is computed at the spectrum's value.
    """
    M = complex_adjoint(A)
    spec = spectrum(A, tol) if spec is None else spec
    _, member, dist = spec.nearest(complex(lam))
    if dist > tol.eig * (1.0 + abs(lam)):
        raise NotAnEigenvalue(f"{lam} is not an eigenvalue (nearest {member:.6g})")
    bases = nested_kernels(M, member, _kernel_threshold(M, tol))
    if not bases:
        raise NotAnEigenvalue(f"kernel at {member:.6g} is trivial")
    return GeneralizedEigenspace(member, bases[-1], len(bases))

