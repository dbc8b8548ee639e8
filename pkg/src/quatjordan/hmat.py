"""Square quaternionic matrices and their complex adjoints.

A quaternion matrix is stored split as A = Y + Z j with complex n x n blocks Y
(entries a + bi) and Z (entries c + di).  Its complex adjoint is the matrix of
the underlying C-linear map in the basis {e_1..e_n, e_1 j..e_n j}:

    [[Y, -Z],
     [conj(Z), conj(Y)]]

Column vectors of H^n map to C^2n by [x_t + j y_t] -> [x, y].  Under that
identification right multiplication by j becomes J(x, y) = (-conj(y), conj(x)),
and the adjoints are exactly the complex matrices commuting with J.
"""
from __future__ import annotations

import numpy as np

from .errors import NotJCommuting, ShapeError, Singular
from .quat import Quaternion, qabs_arr, qinv_arr, qmul_arr
from .tolerances import DEFAULT, Tolerances


class HMatrix:
    """n x n quaternion matrix, held as the complex pair (Y, Z) with A = Y + Z j."""

    __slots__ = ("y", "z")

    def __init__(self, y, z=None):
        y = np.array(y, dtype=complex)
        if y.ndim != 2 or y.shape[0] != y.shape[1] or y.shape[0] < 1:
            raise ShapeError(f"HMatrix needs a nonempty square array, got shape {y.shape}")
        z = np.zeros_like(y) if z is None else np.array(z, dtype=complex)
        if z.shape != y.shape:
            raise ShapeError(f"Y and Z shapes differ: {y.shape} vs {z.shape}")
        if not (np.all(np.isfinite(y)) and np.all(np.isfinite(z))):
            raise ValueError("HMatrix entries must be finite")
        self.y = y
        self.z = z

    # -- construction ------------------------------------------------------

    @classmethod
    def from_components(cls, arr) -> HMatrix:
        """Build from a real (n, n, 4) array of (a, b, c, d) entries."""
        arr = np.asarray(arr, dtype=float)
        if arr.ndim != 3 or arr.shape[-1] != 4:
            raise ShapeError(f"expected (n, n, 4) components, got {arr.shape}")
        return cls(arr[..., 0] + 1j * arr[..., 1], arr[..., 2] + 1j * arr[..., 3])

    @classmethod
    def from_rows(cls, rows) -> HMatrix:
        """Rows of Quaternion objects, 4-sequences, or real/complex scalars."""
        comp = np.array([[_entry(e) for e in row] for row in rows], dtype=float)
        return cls.from_components(comp)

    @classmethod
    def identity(cls, n: int) -> HMatrix:
        return cls(np.eye(n))

    @classmethod
    def zeros(cls, n: int) -> HMatrix:
        return cls(np.zeros((n, n)))

    # -- views -------------------------------------------------------------

    @property
    def n(self) -> int:
        return self.y.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self.y.shape

    def components(self) -> np.ndarray:
        return np.stack([self.y.real, self.y.imag, self.z.real, self.z.imag], axis=-1)

    def split(self) -> tuple[np.ndarray, np.ndarray]:
        return self.y.copy(), self.z.copy()

    def __getitem__(self, idx) -> Quaternion:
        i, j = idx
        y, z = self.y[i, j], self.z[i, j]
        return Quaternion(y.real, y.imag, z.real, z.imag)

    def norm(self) -> float:
        """Largest entry modulus."""
        return float(np.max(np.sqrt(np.abs(self.y) ** 2 + np.abs(self.z) ** 2)))

    def is_complex(self) -> bool:
        return not np.any(self.z)

    def copy(self) -> HMatrix:
        return HMatrix(self.y.copy(), self.z.copy())

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: HMatrix) -> HMatrix:
        return HMatrix(self.y + other.y, self.z + other.z)

    def __sub__(self, other: HMatrix) -> HMatrix:
        return HMatrix(self.y - other.y, self.z - other.z)

    def __neg__(self) -> HMatrix:
        return HMatrix(-self.y, -self.z)

    def __mul__(self, s):
        # real scalars are central in H, so left and right scaling agree
        if isinstance(s, (int, float, np.integer, np.floating)):
            return HMatrix(self.y * s, self.z * s)
        return NotImplemented

    __rmul__ = __mul__

    def __matmul__(self, other: HMatrix) -> HMatrix:
        # (Y1 + Z1 j)(Y2 + Z2 j) = (Y1 Y2 - Z1 conj(Z2)) + (Y1 Z2 + Z1 conj(Y2)) j
        y1, z1, y2, z2 = self.y, self.z, other.y, other.z
        return HMatrix(y1 @ y2 - z1 @ z2.conj(), y1 @ z2 + z1 @ y2.conj())

    def rmul_complex(self, lam: complex) -> HMatrix:
        """Right scalar multiple A * lam for complex lam."""
        # (Y + Z j) lam = Y lam + Z conj(lam) j
        return HMatrix(self.y * lam, self.z * np.conj(lam))

    def apply(self, v: np.ndarray) -> np.ndarray:
        """A v for a quaternion column vector given as an (n, 4) array."""
        v = np.asarray(v, dtype=float)
        a, b = v[:, 0] + 1j * v[:, 1], v[:, 2] + 1j * v[:, 3]
        ya = self.y @ a - self.z @ b.conj()
        za = self.y @ b + self.z @ a.conj()
        return np.stack([ya.real, ya.imag, za.real, za.imag], axis=-1)

    def allclose(self, other: HMatrix, atol: float = 1e-9) -> bool:
        return (self - other).norm() <= atol

    def __eq__(self, other):
        if not isinstance(other, HMatrix):
            return NotImplemented
        return np.array_equal(self.y, other.y) and np.array_equal(self.z, other.z)

    __hash__ = None

    def __repr__(self) -> str:
        return f"HMatrix(n={self.n}, rows={format_rows(self)})"


def _entry(e) -> list[float]:
    if isinstance(e, Quaternion):
        return e.to_list()
    if isinstance(e, (int, float, np.integer, np.floating)):
        return [float(e), 0.0, 0.0, 0.0]
    if isinstance(e, (complex, np.complexfloating)):
        return [e.real, e.imag, 0.0, 0.0]
    vals = [float(x) for x in e]
    if len(vals) != 4:
        raise ShapeError(f"quaternion entry needs 4 components, got {len(vals)}")
    return vals


def format_rows(A: HMatrix) -> list[list[str]]:
    return [[str(A[i, j]) for j in range(A.n)] for i in range(A.n)]


# -- the J structure on C^2n ---------------------------------------------------


def jmap(v: np.ndarray) -> np.ndarray:
    """J(x, y) = (-conj(y), conj(x)), applied to a vector or to each column."""
    v = np.asarray(v, dtype=complex)
    h = v.shape[0] // 2
    return np.concatenate([-v[h:].conj(), v[:h].conj()], axis=0)


def j_matrix(n: int) -> np.ndarray:
    """S = [[0, -I], [I, 0]], so that J(v) = S conj(v)."""
    eye, zero = np.eye(n), np.zeros((n, n))
    return np.block([[zero, -eye], [eye, zero]]).astype(complex)


def xi(M: np.ndarray) -> np.ndarray:
    """J M J^-1 = S conj(M) S^-1; fixed points are the J-commuting matrices."""
    h = M.shape[0] // 2
    M11, M12, M21, M22 = M[:h, :h], M[:h, h:], M[h:, :h], M[h:, h:]
    return np.block([[M22.conj(), -M21.conj()], [-M12.conj(), M11.conj()]])


def j_residual(M: np.ndarray) -> float:
    """max |S conj(M) - M S|, zero exactly when M commutes with J."""
    S = j_matrix(M.shape[0] // 2)
    return float(np.max(np.abs(S @ M.conj() - M @ S), initial=0.0))


def hvec_to_c2n(v: np.ndarray) -> np.ndarray:
    """Quaternion column (n, 4) -> C^2n coordinates [x, y] with entries x + j y."""
    v = np.asarray(v, dtype=float)
    alpha = v[..., 0] + 1j * v[..., 1]
    beta = v[..., 2] + 1j * v[..., 3]
    # alpha + beta j = x + j y  with  j y = conj(y) j
    return np.concatenate([alpha, beta.conj()], axis=0)


def c2n_to_hvec(w: np.ndarray) -> np.ndarray:
    w = np.asarray(w, dtype=complex)
    n = w.shape[0] // 2
    x, y = w[:n], w[n:].conj()
    return np.stack([x.real, x.imag, y.real, y.imag], axis=-1)


def columns_to_hmatrix(V: np.ndarray) -> HMatrix:
    """Pull back a 2n x n block of C^2n columns to the n x n matrix with those columns."""
    n = V.shape[0] // 2
    if V.shape != (2 * n, n):
        raise ShapeError(f"expected a 2n x n block of columns, got {V.shape}")
    return HMatrix(V[:n], V[n:].conj())


# -- the adjoint bridge --------------------------------------------------------


def complex_adjoint(A: HMatrix) -> np.ndarray:
    return np.block([[A.y, -A.z], [A.z.conj(), A.y.conj()]])


def from_complex_adjoint(M, tol: Tolerances = DEFAULT) -> HMatrix:
    """Inverse of complex_adjoint on the J-commuting matrices.

    Y and Z are read from both block positions and averaged, which is the
    orthogonal projection onto adjoint form; exact adjoints round-trip bitwise.
    """
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] % 2 or M.shape[0] == 0:
        raise ShapeError(f"complex adjoint must be 2n x 2n, got {M.shape}")
    scale = 1.0 + float(np.max(np.abs(M)))
    res = j_residual(M)
    if res > tol.residual * scale:
        raise NotJCommuting(f"matrix does not commute with J (residual {res:.3e})")
    n = M.shape[0] // 2
    y = (M[:n, :n] + M[n:, n:].conj()) / 2
    z = (M[n:, :n].conj() - M[:n, n:]) / 2
    return HMatrix(y, z)


def project_to_hmatrix(M: np.ndarray) -> HMatrix:
    """Nearest adjoint-form matrix, pulled back without the membership check."""
    n = M.shape[0] // 2
    return HMatrix((M[:n, :n] + M[n:, n:].conj()) / 2, (M[n:, :n].conj() - M[:n, n:]) / 2)


def hinverse(A: HMatrix, tol: Tolerances = DEFAULT) -> HMatrix:
    M = complex_adjoint(A)
    s = np.linalg.svd(M, compute_uv=False)
    if s[-1] <= tol.rank * s[0] or s[0] == 0.0:
        raise Singular(f"matrix is singular (sigma_min/sigma_max = {s[-1] / max(s[0], 1e-300):.3e})")
    return project_to_hmatrix(np.linalg.inv(M))


def crank(M: np.ndarray, tol: float | None = None) -> int:
    """Numerical rank of a complex matrix from its singular values."""
    s = np.linalg.svd(np.asarray(M), compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    cut = tol * (1.0 + np.max(np.abs(M))) if tol is not None else s[0] * max(M.shape) * np.finfo(float).eps
    return int(np.sum(s > cut))


# -- Gaussian elimination over the division ring H ------------------------------


def hrref(A, tol: Tolerances = DEFAULT) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form using left row operations.

    Accepts an HMatrix or an (m, k, 4) component array (rectangular allowed).
    Returns the reduced components and the pivot columns.  For every column the
    remaining row of largest modulus is the pivot; a pivot smaller than
    tol.rank * (1 + max initial entry modulus) counts as zero.
    """
    R = A.components() if isinstance(A, HMatrix) else np.array(A, dtype=float)
    rows, cols = R.shape[:2]
    cut = tol.rank * (1.0 + float(np.max(qabs_arr(R), initial=0.0)))
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        mags = qabs_arr(R[r:, c])
        p = r + int(np.argmax(mags))
        if mags[p - r] < cut:
            R[r:, c] = 0.0
            continue
        if p != r:
            R[[r, p]] = R[[p, r]]
        # scale on the left so the pivot becomes 1
        R[r] = qmul_arr(qinv_arr(R[r, c])[None, :], R[r])
        R[r, c] = (1.0, 0.0, 0.0, 0.0)
        for i in range(rows):
            if i != r and np.any(R[i, c]):
                R[i] = R[i] - qmul_arr(R[i, c][None, :], R[r])
                R[i, c] = 0.0
        pivots.append(c)
        r += 1
    return R, pivots


def hrank(A, tol: Tolerances = DEFAULT) -> int:
    return len(hrref(A, tol)[1])


def hkernel(A, tol: Tolerances = DEFAULT) -> list[np.ndarray]:
    """Right-H basis of {v : A v = 0}; each vector is an (n, 4) array.

    Left row operations preserve the kernel.  Each free column f gives the
    solution with x_f = 1 and x_p = -R[p, f] on pivot columns, and any right
    H-combination of those is again a solution.
    """
    R, pivots = hrref(A, tol)
    cols = R.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = np.zeros((cols, 4))
        v[f, 0] = 1.0
        for row, p in enumerate(pivots):
            v[p] = -R[row, f]
        basis.append(v)
    return basis
