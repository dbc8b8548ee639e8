"""Quaternion scalars q = a + bi + cj + dk and their similarity classes.

Two quaternions are similar (u^-1 p u = q for some u != 0) exactly when they
share the real part and the length of the imaginary part, so every class
contains the complex numbers a +- ri.  ``canonical_rep`` picks a + ri.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# below this imaginary length (relative to 1+|q|) a quaternion counts as real
REAL_EPS = 1e-12


@dataclass(frozen=True)
class Quaternion:
    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    d: float = 0.0

    def __post_init__(self):
        for name in "abcd":
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"quaternion component {name}={v!r} is not finite")
            object.__setattr__(self, name, v)

    @classmethod
    def from_complex(cls, z: complex) -> Quaternion:
        """The standard embedding of C into H (a + bi -> a + bi)."""
        z = complex(z)
        return cls(z.real, z.imag, 0.0, 0.0)

    @classmethod
    def from_array(cls, arr) -> Quaternion:
        a, b, c, d = (float(x) for x in arr)
        return cls(a, b, c, d)

    def to_list(self) -> list[float]:
        return [self.a, self.b, self.c, self.d]

    def to_array(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d])

    def complex_part(self) -> complex:
        return complex(self.a, self.b)

    def conj(self) -> Quaternion:
        return Quaternion(self.a, -self.b, -self.c, -self.d)

    def norm2(self) -> float:
        return self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d

    def __abs__(self) -> float:
        return math.sqrt(self.norm2())

    def imag_norm(self) -> float:
        return math.hypot(self.b, self.c, self.d)

    def is_real(self) -> bool:
        return self.imag_norm() < REAL_EPS * (1.0 + abs(self))

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Quaternion(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Quaternion(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Quaternion(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return qmul(self, o)

    def __rmul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return qmul(o, self)

    def __truediv__(self, other):
        # right division: self * other^-1
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return qmul(self, qinv(o))

    def __str__(self) -> str:
        a, b, c, d = (x + 0.0 for x in (self.a, self.b, self.c, self.d))  # no "-0"
        return f"{a:g}{b:+g}i{c:+g}j{d:+g}k"


def _coerce(x) -> Quaternion | None:
    if isinstance(x, Quaternion):
        return x
    if isinstance(x, (int, float, np.integer, np.floating)):
        return Quaternion(float(x))
    if isinstance(x, (complex, np.complexfloating)):
        return Quaternion.from_complex(x)
    return None


def qmul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product p*q."""
    a1, b1, c1, d1 = p.a, p.b, p.c, p.d
    a2, b2, c2, d2 = q.a, q.b, q.c, q.d
    return Quaternion(
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


def qinv(q: Quaternion) -> Quaternion:
    n2 = q.norm2()
    if n2 == 0.0:
        raise ZeroDivisionError("quaternion inverse of zero")
    return Quaternion(q.a / n2, -q.b / n2, -q.c / n2, -q.d / n2)


def canonical_rep(q: Quaternion) -> complex:
    """The complex member a + ri (r >= 0) of the similarity class of q."""
    r = q.imag_norm()
    if r < REAL_EPS * (1.0 + abs(q)):
        return complex(q.a, 0.0)
    return complex(q.a, r)


def similarity_witness(q: Quaternion) -> Quaternion:
    """Unit p with p^-1 q p == canonical_rep(q).

    Rotates the imaginary direction (b, c, d)/r onto i with the half-angle
    quaternion.  When b < 0 the vector is first reflected through conjugation
    by j, which keeps 1 + cos(angle) away from zero.
    """
    r = q.imag_norm()
    if r < REAL_EPS * (1.0 + abs(q)):
        return Quaternion(1.0)
    ux, uy, uz = q.b / r, q.c / r, q.d / r
    pre = None
    if ux < 0.0:
        # j^-1 (x i + y j + z k) j = -x i + y j - z k
        ux, uz = -ux, -uz
        pre = Quaternion(0.0, 0.0, 1.0, 0.0)
    # rot = (1 + u.e1, u x e1) rotates u onto e1 via rot v rot^-1; p = conj(rot)
    w, x, y, z = 1.0 + ux, 0.0, uz, -uy
    s = math.sqrt(w * w + y * y + z * z)
    p = Quaternion(w / s, -x / s, -y / s, -z / s)
    if pre is not None:
        p = qmul(pre, p)
    return p


def is_similar(p: Quaternion, q: Quaternion, tol: float = 1e-9) -> bool:
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    return abs(p.a - q.a) <= tol and abs(p.imag_norm() - q.imag_norm()) <= tol


def canonical_complex(z: complex) -> complex:
    """canonical_rep restricted to complex input: flip to Im >= 0."""
    z = complex(z)
    return complex(z.real, abs(z.imag))


# -- vectorised helpers on arrays whose last axis holds (a, b, c, d) ----------


def qmul_arr(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    a1, b1, c1, d1 = np.moveaxis(np.asarray(p, dtype=float), -1, 0)
    a2, b2, c2, d2 = np.moveaxis(np.asarray(q, dtype=float), -1, 0)
    return np.stack(
        [
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ],
        axis=-1,
    )


def qinv_arr(q: np.ndarray) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    n2 = np.sum(q * q, axis=-1, keepdims=True)
    if np.any(n2 == 0.0):
        raise ZeroDivisionError("quaternion inverse of zero")
    return q * np.array([1.0, -1.0, -1.0, -1.0]) / n2


def qabs_arr(q: np.ndarray) -> np.ndarray:
    return np.sqrt(np.sum(np.asarray(q, dtype=float) ** 2, axis=-1))
