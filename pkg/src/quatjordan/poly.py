"""Univariate polynomials as ascending coefficient arrays.

Real polynomials are float arrays, complex ones complex arrays; index k holds
the coefficient of x^k.  Besides evaluation at quaternion matrices this module
solves simultaneous congruences h = target (mod (x - mu)^m) by Hermite
interpolation, finds roots with multiplicities, and holds the clustering and
conjugate-pairing logic that the spectral code reuses.
"""
from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import DuplicateModulus, NoConvergence, StructureViolation
from .hmat import HMatrix

REAL, PAIR = "real", "pair"


# -- basic arithmetic ----------------------------------------------------------


def trim(p, tol: float = 0.0) -> np.ndarray:
    """Drop leading (high-degree) coefficients with modulus <= tol; keeps at least one."""
    p = np.atleast_1d(np.asarray(p))
    k = len(p)
    while k > 1 and abs(p[k - 1]) <= tol:
        k -= 1
    return p[:k].copy()


def degree(p) -> int:
    q = trim(p)
    return 0 if (len(q) == 1) else len(q) - 1


def padd(p, q) -> np.ndarray:
    return npoly.polyadd(p, q)


def psub(p, q) -> np.ndarray:
    return npoly.polysub(p, q)


def pmul(p, q) -> np.ndarray:
    return npoly.polymul(p, q)


def pcompose(p, q) -> np.ndarray:
    """p(q(x)) by Horner in the polynomial ring."""
    p = np.atleast_1d(np.asarray(p))
    out = np.array([p[-1]])
    for c in p[-2::-1]:
        out = npoly.polyadd(npoly.polymul(out, q), [c])
    return out


def polyval(p, x):
    return npoly.polyval(x, np.asarray(p))


def realify(h0) -> np.ndarray:
    """Coefficientwise average of h0 and its conjugate, trimmed."""
    h0 = np.asarray(h0, dtype=complex)
    return trim(((h0 + h0.conj()) / 2).real)


def eval_at_hmatrix(p, A: HMatrix) -> HMatrix:
    """Horner evaluation of a real polynomial at a quaternion matrix."""
    p = np.asarray(p)
    if np.iscomplexobj(p):
        if np.any(p.imag):
            raise ValueError("only real polynomials can be evaluated at quaternion matrices")
        p = p.real
    p = np.atleast_1d(p.astype(float))
    eye = HMatrix.identity(A.n)
    out = eye * p[-1]
    for c in p[-2::-1]:
        out = out @ A + eye * c
    return out


def eval_at_matrix(p, M: np.ndarray) -> np.ndarray:
    """Horner evaluation at a complex square matrix."""
    p = np.atleast_1d(np.asarray(p))
    eye = np.eye(M.shape[0])
    out = p[-1] * eye
    for c in p[-2::-1]:
        out = out @ M + c * eye
    return out


# -- congruences / Hermite interpolation -------------------------------------------


@dataclass(frozen=True)
class Congruence:
    """h = target (mod (x - root)^mult).

    ``target`` is either a constant or a sequence of Taylor coefficients at
    ``root`` (t_0, t_1, ...); missing coefficients are zero.
    """

    target: complex | Sequence[complex]
    root: complex
    mult: int

    def taylor(self) -> np.ndarray:
        t = np.zeros(self.mult, dtype=complex)
        vals = np.atleast_1d(np.asarray(self.target, dtype=complex))
        k = min(len(vals), self.mult)
        t[:k] = vals[:k]
        return t


@dataclass
class CongruenceSystem:
    congruences: list[Congruence] = field(default_factory=list)
    mod_x: bool = False

    def add(self, target, root, mult: int) -> CongruenceSystem:
        if mult < 1:
            raise ValueError("congruence multiplicity must be positive")
        self.congruences.append(Congruence(target, complex(root), int(mult)))
        return self

    def conditions(self) -> list[Congruence]:
        """All congruences, with h = 0 (mod x) appended when flagged and 0 is not a root."""
        out = list(self.congruences)
        if self.mod_x and not any(c.root == 0 for c in out):
            out.append(Congruence(0.0, 0j, 1))
        return out

    def total_degree(self) -> int:
        return sum(c.mult for c in self.conditions())


def hermite_newton(system: CongruenceSystem) -> tuple[np.ndarray, np.ndarray]:
    """Newton form (nodes z_k, coefficients c_k) of the minimal-degree solution.

    h(x) = c_0 + c_1 (x - z_0) + c_2 (x - z_0)(x - z_1) + ..., where each root
    appears mult times among the nodes; repeated nodes take Taylor data.
    """
    conds = system.conditions()
    roots = [c.root for c in conds]
    for a in range(len(roots)):
        for b in range(a + 1, len(roots)):
            if roots[a] == roots[b]:
                raise DuplicateModulus(f"root {roots[a]} appears in two congruences")
    if not conds:
        return np.zeros(0, dtype=complex), np.zeros(1, dtype=complex)

    nodes = np.array([c.root for c in conds for _ in range(c.mult)], dtype=complex)
    group = np.array([g for g, c in enumerate(conds) for _ in range(c.mult)])
    taylor = [c.taylor() for c in conds]
    N = len(nodes)

    # column k of the table holds f[z_i, ..., z_{i+k}]
    col = np.array([taylor[g][0] for g in group], dtype=complex)
    newton = [col[0]]
    for k in range(1, N):
        nxt = np.empty(N - k, dtype=complex)
        for i in range(N - k):
            if group[i] == group[i + k]:
                nxt[i] = taylor[group[i]][k]
            else:
                nxt[i] = (col[i + 1] - col[i]) / (nodes[i + k] - nodes[i])
        col = nxt
        newton.append(col[0])
    return nodes, np.array(newton, dtype=complex)


def newton_to_monomial(nodes: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    out = np.array([coeffs[-1]], dtype=complex)
    for k in range(len(coeffs) - 2, -1, -1):
        out = npoly.polyadd(npoly.polymul(out, [-nodes[k], 1.0]), [coeffs[k]])
    out = np.asarray(out, dtype=complex)
    if len(out) < len(coeffs):
        out = np.concatenate([out, np.zeros(len(coeffs) - len(out), dtype=complex)])
    return out


def eval_newton_at_matrix(nodes: np.ndarray, coeffs: np.ndarray, M: np.ndarray) -> np.ndarray:
    """Nested evaluation of a Newton-form polynomial at a complex matrix.

    Much better conditioned than monomial Horner when the nodes are the
    eigenvalues of M: each factor (M - z_k) is small on its own eigenspace.
    """
    eye = np.eye(M.shape[0])
    out = coeffs[-1] * eye
    for k in range(len(coeffs) - 2, -1, -1):
        out = out @ (M - nodes[k] * eye) + coeffs[k] * eye
    return out


def newton_eval_bound(nodes: np.ndarray, coeffs: np.ndarray, M: np.ndarray) -> float:
    """sum_k |c_k| prod_{j<k} ||M - z_j||_2, the scale of rounding errors in eval_newton_at_matrix."""
    eye = np.eye(M.shape[0])
    total, prod = 0.0, 1.0
    for k, c in enumerate(coeffs):
        total += abs(c) * prod
        if k < len(nodes):
            prod *= float(np.linalg.norm(M - nodes[k] * eye, 2))
    return total


def crt_solve(system: CongruenceSystem) -> np.ndarray:
    """Minimal-degree complex h0 satisfying every congruence of the system.

    Hermite interpolation by confluent divided differences, expanded to
    ascending monomial coefficients.
    """
    return trim(newton_to_monomial(*hermite_newton(system)))


def confluent_vandermonde(system: CongruenceSystem, ncoef: int | None = None):
    """Matrix V and right side b with V c = b encoding every congruence on coefficients c."""
    conds = system.conditions()
    N = sum(c.mult for c in conds)
    ncoef = N if ncoef is None else ncoef
    rows, rhs = [], []
    for c in conds:
        t = c.taylor()
        for r in range(c.mult):
            row = np.zeros(ncoef, dtype=complex)
            for k in range(r, ncoef):
                row[k] = math.comb(k, r) * c.root ** (k - r)
            rows.append(row)
            rhs.append(t[r])
    return np.array(rows), np.array(rhs)


# -- spectra: shared entry types and clustering ------------------------------------


@dataclass(frozen=True)
class SpectralEntry:
    """One eigenvalue class: value with Im >= 0, multiplicity, and kind.

    For kind "pair" the conjugate carries the same multiplicity and is implied.
    ``index`` is the nilpotency index of (M - value) on the generalized
    eigenspace when it was measured.
    """

    value: complex
    mult: int
    kind: str
    index: int | None = None

    def to_json(self) -> dict:
        return {"re": float(self.value.real) + 0.0, "im": float(self.value.imag) + 0.0, "mult": self.mult, "kind": self.kind}


@dataclass(frozen=True)
class Spectrum:
    entries: tuple[SpectralEntry, ...]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i) -> SpectralEntry:
        return self.entries[i]

    def total(self) -> int:
        """Sum of m over real entries plus 2m over pairs."""
        return sum(e.mult if e.kind == REAL else 2 * e.mult for e in self.entries)

    def values(self) -> list[complex]:
        """Full multiset of complex roots, conjugates included."""
        out: list[complex] = []
        for e in self.entries:
            out.extend([e.value] * e.mult)
            if e.kind == PAIR:
                out.extend([e.value.conjugate()] * e.mult)
        return out

    def nearest(self, lam: complex) -> tuple[SpectralEntry, complex, float]:
        """Entry whose value or conjugate is closest to lam, that member, and the distance."""
        best = None
        for e in self.entries:
            for v in (e.value, e.value.conjugate()) if e.kind == PAIR else (e.value,):
                d = abs(v - lam)
                if best is None or d < best[2]:
                    best = (e, v, d)
        if best is None:
            raise ValueError("empty spectrum")
        return best

    def to_json(self) -> list[dict]:
        return [e.to_json() for e in self.entries]


def cluster_radius(center: complex, mult: int, base: float, halve_real: bool) -> float:
    """Admissible spread of a cluster of `mult` roots around `center`.

    A root of multiplicity k in a block of size k moves by about eps^(1/k)
    under a perturbation eps, so the radius grows as base^(1/k).  With
    halve_real the roots near the real axis are assumed to come from
    conjugate-paired blocks, each of size at most ceil(mult/2).
    """
    scale = 1.0 + abs(center)
    k = mult
    if halve_real:
        kr = (mult + 1) // 2
        if abs(center.imag) <= scale * base ** (1.0 / kr):
            k = kr
    return scale * base ** (1.0 / k)


def cluster_values(values, base: float, halve_real: bool = False) -> list[tuple[complex, list[int]]]:
    """Group nearby numbers; returns (centroid, member indices) sorted by (re, im).

    For every unassigned seed, find the largest set of its nearest unassigned
    neighbours that fits inside cluster_radius for its own size.  The biggest
    such group (smallest spread on ties) becomes a cluster; repeat.  Growing
    the radius with the group size lets an m-fold defective eigenvalue, whose
    computed copies spread like eps^(1/m), be collected in one step.
    """
    z = np.asarray(values, dtype=complex).ravel()
    left = list(range(len(z)))
    out = []
    while left:
        pts = z[left]
        best = None
        for a in range(len(left)):
            order = np.argsort(np.abs(pts - pts[a]), kind="stable")
            for m in range(len(left), 0, -1):
                grp = order[:m]
                c = complex(np.mean(pts[grp]))
                spread = float(np.max(np.abs(pts[grp] - c)))
                if spread <= cluster_radius(c, m, base, halve_real):
                    if best is None or (m, -spread) > (best[0], -best[1]):
                        best = (m, spread, grp)
                    break
        members = sorted(left[k] for k in best[2])
        out.append((complex(np.mean(z[members])), members))
        taken = set(members)
        left = [k for k in left if k not in taken]
    out.sort(key=lambda cm: (cm[0].real, cm[0].imag))
    return out


def pair_clusters(clusters: list[tuple[complex, int]]) -> list[tuple[complex, int, str]]:
    """Sort clusters into real ones and conjugate pairs.

    A cluster counts as real when its own conjugate is nearer to it than to any
    other cluster; real values get Im set to 0.  Every other cluster must be
    the mutual nearest conjugate of exactly one partner with the same
    multiplicity; each pair is reported once, averaged, with Im > 0.
    Raises StructureViolation when that fails.
    """
    cs = np.array([c for c, _ in clusters], dtype=complex)
    out = []
    used = set()

    def partner(i):
        return int(np.argmin(np.abs(cs - np.conj(cs[i]))))

    for i, (c, m) in enumerate(clusters):
        if i in used:
            continue
        p = partner(i)
        if p == i:
            out.append((complex(c.real, 0.0), m, REAL))
            used.add(i)
            continue
        if partner(p) != i or p in used:
            raise StructureViolation(f"eigenvalue {c:.6g} has no matching conjugate")
        if clusters[p][1] != m:
            raise StructureViolation(
                f"conjugate multiplicities differ at {c:.6g}: {m} vs {clusters[p][1]}"
            )
        v = (c + np.conj(cs[p])) / 2
        v = complex(v.real, abs(v.imag))
        out.append((v, m, PAIR))
        used.update((i, p))
    out.sort(key=lambda e: (e[0].real, e[0].imag))
    return out


# -- root finding ----------------------------------------------------------------


def _horner_with_derivative(c: np.ndarray, z: np.ndarray):
    p = np.full_like(z, c[-1])
    dp = np.zeros_like(z)
    for a in c[-2::-1]:
        dp = dp * z + p
        p = p * z + a
    return p, dp


def aberth_roots(coeffs, max_iter: int = 500) -> np.ndarray:
    """All roots of a polynomial with nonzero leading coefficient (Aberth-Ehrlich)."""
    c = np.asarray(coeffs, dtype=complex)
    c = trim(c)
    d = len(c) - 1
    if d < 1:
        raise ValueError("polynomial must have degree >= 1")
    c = c / c[-1]
    absc = np.abs(c)
    R = 1.0 + float(np.max(absc[:-1]))
    k = np.arange(d)
    # perturbed circle: irregular offsets break symmetry for palindromic inputs
    z = R * (1.0 + 0.01 * np.cos(3.0 * k + 1.0)) * np.exp(1j * (2 * np.pi * k / d + 0.7))
    eps = np.finfo(float).eps
    active = np.ones(d, dtype=bool)
    for _ in range(max_iter):
        p, dp = _horner_with_derivative(c, z)
        scale = npoly.polyval(np.abs(z), absc)
        active &= np.abs(p) > 8 * d * eps * scale
        if not active.any():
            break
        idx = np.flatnonzero(active)
        with np.errstate(divide="ignore", invalid="ignore"):
            w = p[idx] / dp[idx]
            diff = z[idx, None] - z[None, :]
            diff[np.arange(len(idx)), idx] = np.inf
            s = np.sum(1.0 / diff, axis=1)
            step = w / (1.0 - w * s)
        bad = ~np.isfinite(step)
        if bad.any():
            step[bad] = 1e-8 * R * np.exp(1j * (idx[bad] + 0.3))
        z[idx] = z[idx] - step
    p, _ = _horner_with_derivative(c, z)
    scale = npoly.polyval(np.abs(z), absc)
    worst = float(np.max(np.abs(p) / scale))
    if worst > 1e-10:
        raise NoConvergence(f"root finder stopped with backward error {worst:.3e}")
    return z


def _polish(p: np.ndarray, c: complex, m: int, base: float) -> complex:
    """Refine the centroid of an m-fold cluster by Newton steps on the (m-1)th derivative.

    An m-fold root is a simple root of that derivative, so the refinement
    converges quadratically.  The result is kept only if it stays in the cluster.
    """
    if m == 1:
        return c
    d = npoly.polyder(p, m - 1)
    d1 = npoly.polyder(d)
    x = c
    for _ in range(30):
        den = npoly.polyval(x, d1)
        if den == 0:
            break
        step = npoly.polyval(x, d) / den
        x = x - step
        if abs(step) <= 4 * np.finfo(float).eps * (1.0 + abs(x)):
            break
    if np.isfinite(x) and abs(x - c) <= cluster_radius(c, m, base, False):
        return complex(x)
    return c


def roots_with_multiplicity(p, tol_cluster: float = 1e-6) -> Spectrum:
    """Roots of a real polynomial, clustered, conjugate-paired and symmetrized."""
    p = np.asarray(p)
    if np.iscomplexobj(p):
        if np.any(p.imag):
            raise ValueError("roots_with_multiplicity expects real coefficients")
        p = p.real
    p = trim(np.asarray(p, dtype=float))
    if len(p) < 2:
        raise ValueError("polynomial must have degree >= 1")
    nz = 0
    while p[nz] == 0.0:
        nz += 1
    pts = np.zeros(nz, dtype=complex)
    if len(p) - nz > 1:
        pts = np.concatenate([pts, aberth_roots(p[nz:])])
    groups = [(_polish(p, c, len(m), tol_cluster), len(m)) for c, m in cluster_values(pts, tol_cluster)]
    try:
        paired = pair_clusters(groups)
    except StructureViolation as exc:
        raise NoConvergence(f"roots do not pair up under conjugation: {exc}") from None
    entries = []
    for v, m, kind in paired:
        if kind == REAL and nz and abs(v) <= cluster_radius(v, m, tol_cluster, False):
            v = 0j
        entries.append(SpectralEntry(v, m, kind))
    return Spectrum(tuple(entries))
