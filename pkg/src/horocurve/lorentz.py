"""Signature (-,+,+) linear algebra on R^3.

Hosts the pseudo scalar product, the pseudo vector product, causal
classification and the projection onto the unit disk.  The product
functions are generic over their component type: they accept
:class:`Vec3L`, plain 3-sequences of floats, numpy component triples, or
triples of jets, so the same metric conventions serve both numeric points
and derivative-carrying frames.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import NotOnH2, ZeroVector

EPS_CAUSAL = 1e-10


@dataclass(frozen=True)
class Vec3L:
    """A vector of Lorentz-Minkowski 3-space, signature (-,+,+)."""

    x1: float
    x2: float
    x3: float

    def __iter__(self):
        return iter((self.x1, self.x2, self.x3))

    def __add__(self, other):
        return Vec3L(self.x1 + other.x1, self.x2 + other.x2, self.x3 + other.x3)

    def __sub__(self, other):
        return Vec3L(self.x1 - other.x1, self.x2 - other.x2, self.x3 - other.x3)

    def __mul__(self, a):
        return Vec3L(self.x1 * a, self.x2 * a, self.x3 * a)

    __rmul__ = __mul__

    def __neg__(self):
        return Vec3L(-self.x1, -self.x2, -self.x3)

    def asarray(self):
        return np.array([self.x1, self.x2, self.x3], dtype=float)


class CausalCharacter(Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"


def _c3(v):
    a, b, c = v
    return a, b, c


def pseudo_dot(a, b):
    """<a,b> = -a1*b1 + a2*b2 + a3*b3."""
    a1, a2, a3 = _c3(a)
    b1, b2, b3 = _c3(b)
    return -(a1 * b1) + a2 * b2 + a3 * b3


def pseudo_wedge(a, b):
    """Pseudo vector product: determinant expansion along (-e1, e2, e3)."""
    a1, a2, a3 = _c3(a)
    b1, b2, b3 = _c3(b)
    w = (-(a2 * b3 - a3 * b2), -(a1 * b3 - a3 * b1), a1 * b2 - a2 * b1)
    if isinstance(a, Vec3L) and isinstance(b, Vec3L):
        return Vec3L(*w)
    return w


def det3(x, y, z):
    """det of the 3x3 matrix with rows x, y, z; equals <x, y wedge z>."""
    x1, x2, x3 = _c3(x)
    y1, y2, y3 = _c3(y)
    z1, z2, z3 = _c3(z)
    return (
        x1 * (y2 * z3 - y3 * z2)
        - x2 * (y1 * z3 - y3 * z1)
        + x3 * (y1 * z2 - y2 * z1)
    )


def causal_character(a, eps_causal=EPS_CAUSAL):
    """Classify a nonzero vector; ties within eps_causal go to LIGHTLIKE."""
    a1, a2, a3 = _c3(a)
    if a1 * a1 + a2 * a2 + a3 * a3 == 0.0:
        raise ZeroVector("causal character of the zero vector is undefined")
    q = pseudo_dot(a, a)
    if abs(q) <= eps_causal:
        return CausalCharacter.LIGHTLIKE
    return CausalCharacter.SPACELIKE if q > 0 else CausalCharacter.TIMELIKE


def on_h2(v, tol=1e-9):
    a1, _, _ = _c3(v)
    return bool(np.all(np.abs(pseudo_dot(v, v) + 1.0) <= tol) and np.all(a1 > 0))


def on_s12(v, tol=1e-9):
    return bool(np.all(np.abs(pseudo_dot(v, v) - 1.0) <= tol))


def is_lightlike(v, tol=EPS_CAUSAL):
    a1, a2, a3 = _c3(v)
    nonzero = np.any(np.asarray(a1 * a1 + a2 * a2 + a3 * a3) > 0.0)
    return bool(nonzero and np.all(np.abs(pseudo_dot(v, v)) <= tol))


def poincare_project(x, tol=1e-9):
    """Project a point of the upper hyperboloid sheet into the open unit disk.

    (x1, x2, x3) maps to (x2/(x1+1), x3/(x1+1)).
    """
    if not on_h2(x, tol):
        raise NotOnH2(f"{tuple(x)} is not on the x1>0 hyperboloid sheet (tol {tol})")
    x1, x2, x3 = _c3(x)
    return (x2 / (x1 + 1.0), x3 / (x1 + 1.0))


def project_track(points):
    """Disk coordinates for an (N, 3) array of hyperboloid points."""
    pts = np.asarray(points, dtype=float)
    q = -pts[:, 0] ** 2 + pts[:, 1] ** 2 + pts[:, 2] ** 2
    if not (np.all(np.abs(q + 1.0) <= 1e-6) and np.all(pts[:, 0] > 0)):
        worst = float(np.max(np.abs(q + 1.0)))
        raise NotOnH2(f"track leaves the hyperboloid sheet (worst residual {worst:.3e})")
    denom = pts[:, 0] + 1.0
    return np.stack([pts[:, 1] / denom, pts[:, 2] / denom], axis=1)


def pseudo_norm_spacelike(v):
    """sqrt(<v,v>) for a spacelike vector."""
    q = pseudo_dot(v, v)
    return math.sqrt(q) if np.ndim(q) == 0 else np.sqrt(q)
