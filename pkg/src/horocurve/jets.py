"""Truncated Taylor jets: a value together with exact derivatives at a point.

A :class:`Jet` stores ``f(t), f'(t), ..., f^(k)(t)`` for a fixed truncation
order ``k``.  Arithmetic follows the Leibniz and Faa di Bruno rules, so
derivatives propagate exactly through closed-form curve definitions; no
finite differencing is involved anywhere in the package.

Coefficients may be plain floats or numpy arrays of one common shape, which
lets a single Jet carry a whole sample grid and keeps dense sampling
vectorised.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError

DEFAULT_ORDER = 4

_FACT = [float(math.factorial(k)) for k in range(9)]
_BINOM = [[float(math.comb(k, j)) for j in range(k + 1)] for k in range(9)]


def _zero_like(x):
    return x * 0.0


class Jet:
    """Derivatives ``d[k] = f^(k)(t)`` up to a fixed order at one parameter point."""

    __slots__ = ("d",)

    def __init__(self, d):
        self.d = tuple(d)

    @classmethod
    def constant(cls, value, order=DEFAULT_ORDER):
        z = _zero_like(value)
        return cls((value,) + (z,) * order)

    @classmethod
    def variable(cls, t, order=DEFAULT_ORDER):
        if order == 0:
            return cls((t,))
        z = _zero_like(t)
        return cls((t, z + 1.0) + (z,) * (order - 1))

    @property
    def order(self):
        return len(self.d) - 1

    @property
    def value(self):
        return self.d[0]

    def v(self, k):
        """k-th derivative."""
        return self.d[k]

    def trim(self, order):
        if order >= self.order:
            return self
        return Jet(self.d[: order + 1])

    def deriv(self):
        """The jet of f', one order lower."""
        if self.order == 0:
            raise ValueError("cannot differentiate an order-0 jet")
        return Jet(self.d[1:])

    def antideriv(self, value):
        """The jet of an antiderivative with the given value, one order higher."""
        return Jet((value,) + self.d)

    # -- arithmetic ---------------------------------------------------------

    def __neg__(self):
        return Jet(tuple(-c for c in self.d))

    def __add__(self, other):
        if isinstance(other, Jet):
            n = min(self.order, other.order)
            return Jet(tuple(self.d[k] + other.d[k] for k in range(n + 1)))
        return Jet((self.d[0] + other,) + self.d[1:])

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Jet):
            n = min(self.order, other.order)
            return Jet(tuple(self.d[k] - other.d[k] for k in range(n + 1)))
        return Jet((self.d[0] - other,) + self.d[1:])

    def __rsub__(self, other):
        return Jet((other - self.d[0],) + tuple(-c for c in self.d[1:]))

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet(tuple(c * other for c in self.d))
        n = min(self.order, other.order)
        a, b = self.d, other.d
        out = []
        for k in range(n + 1):
            bk = _BINOM[k]
            s = a[0] * b[k]
            for j in range(1, k + 1):
                s = s + bk[j] * a[j] * b[k - j]
            out.append(s)
        return Jet(tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            return Jet(tuple(c / other for c in self.d))
        return _div(self.d, other.d)

    def __rtruediv__(self, other):
        return _div((other,), self.d, pad=True)

    def __pow__(self, p):
        if isinstance(p, Jet):
            raise TypeError("exponent must be a constant; write exp(b*log(a)) instead")
        return _pow_const(self, p)

    def __repr__(self):
        return f"Jet{self.d!r}"


def _check_nonzero(b0, what, src=""):
    if np.any(np.asarray(b0) == 0.0):
        raise DomainError(f"division by zero in {what or 'expression'}", subexpr=src)


def _div(a, b, pad=False):
    """Jet division by back-substitution through the Leibniz rule."""
    _check_nonzero(b[0], "quotient")
    n = len(b) - 1 if pad else min(len(a), len(b)) - 1
    c = [None] * (n + 1)
    c[0] = (a[0] if len(a) > 0 else 0.0) / b[0]
    for k in range(1, n + 1):
        ak = a[k] if k < len(a) else _zero_like(c[0])
        bk = _BINOM[k]
        s = ak
        for j in range(k):
            s = s - bk[j] * c[j] * b[k - j]
        c[k] = s / b[0]
    return Jet(tuple(c))


def compose(outer_derivs, g):
    """Jet of f(g) from the outer derivatives ``f(g0), f'(g0), ...`` and the jet g.

    Works in Taylor-coefficient space: the nilpotent part of g is composed
    into the outer series by Horner's scheme, which realises Faa di Bruno
    without explicit Bell polynomials.
    """
    n = g.order
    if n == 0:
        return Jet((outer_derivs[0],))
    F = [outer_derivs[k] / _FACT[k] for k in range(n + 1)]
    z = _zero_like(g.d[0])
    G = [z] + [g.d[k] / _FACT[k] for k in range(1, n + 1)]
    H = [F[n]] + [z] * n
    for j in range(n - 1, -1, -1):
        # H <- F[j] + G * H, truncated at order n; G[0] = 0
        new = [F[j] + z] + [z] * n
        for k in range(1, n + 1):
            s = z
            for i in range(1, k + 1):
                s = s + G[i] * H[k - i]
            new[k] = s
        H = new
    return Jet(tuple(H[k] * _FACT[k] for k in range(n + 1)))


def _pow_const(x, p):
    u0 = x.d[0]
    if p == int(p):
        p = int(p)
        if p < 0:
            _check_nonzero(u0, "negative power")
    else:
        if np.any(np.asarray(u0) <= 0.0):
            raise DomainError("non-integer power of a non-positive base")
    n = x.order
    derivs = [u0 ** p]
    coeff = 1.0
    for k in range(1, n + 1):
        coeff *= p - (k - 1)
        derivs.append(coeff * u0 ** (p - k))
    return compose(derivs, x)


# -- elementary functions (accept Jet or plain number/array) ----------------


def _cycle(x, f0, f1, f2, f3):
    n = x.order
    cyc = (f0, f1, f2, f3)
    return compose([cyc[k % 4] for k in range(n + 1)], x)


def sin(x):
    if not isinstance(x, Jet):
        return np.sin(x)
    s, c = np.sin(x.d[0]), np.cos(x.d[0])
    return _cycle(x, s, c, -s, -c)


def cos(x):
    if not isinstance(x, Jet):
        return np.cos(x)
    s, c = np.sin(x.d[0]), np.cos(x.d[0])
    return _cycle(x, c, -s, -c, s)


def tan(x):
    if not isinstance(x, Jet):
        return np.tan(x)
    return sin(x) / cos(x)


def exp(x):
    if not isinstance(x, Jet):
        return np.exp(x)
    e = np.exp(x.d[0])
    return compose([e] * (x.order + 1), x)


def log(x):
    if not isinstance(x, Jet):
        return np.log(x)
    u0 = x.d[0]
    if np.any(np.asarray(u0) <= 0.0):
        raise DomainError("log of a non-positive value")
    derivs = [np.log(u0)]
    for k in range(1, x.order + 1):
        derivs.append((-1.0) ** (k - 1) * _FACT[k - 1] / u0 ** k)
    return compose(derivs, x)


def sqrt(x):
    if not isinstance(x, Jet):
        return np.sqrt(x)
    if np.any(np.asarray(x.d[0]) <= 0.0):
        raise DomainError("sqrt of a non-positive value")
    return _pow_const(x, 0.5)


def sinh(x):
    if not isinstance(x, Jet):
        return np.sinh(x)
    s, c = np.sinh(x.d[0]), np.cosh(x.d[0])
    return _cycle(x, s, c, s, c)


def cosh(x):
    if not isinstance(x, Jet):
        return np.cosh(x)
    s, c = np.sinh(x.d[0]), np.cosh(x.d[0])
    return _cycle(x, c, s, c, s)


def tanh(x):
    if not isinstance(x, Jet):
        return np.tanh(x)
    return sinh(x) / cosh(x)


def atan(x):
    if not isinstance(x, Jet):
        return np.arctan(x)
    v0 = np.arctan(x.d[0])
    if x.order == 0:
        return Jet((v0,))
    xm = x.trim(x.order - 1)
    core = x.deriv() / (1.0 + xm * xm)
    return core.antideriv(v0)


def taylor_lift(y0, rhs, order):
    """Jet of an ODE solution y with y(t) = y0 and y' = rhs(y).

    ``rhs`` must map a Jet of order >= k to a Jet whose first k derivatives
    are correct whenever its argument's first k are (true for any jet
    arithmetic built from the solution and coefficient jets).
    """
    d = [y0] + [_zero_like(y0)] * order
    for k in range(order):
        r = rhs(Jet(tuple(d)))
        d[k + 1] = r.d[k]
    return Jet(tuple(d))


def polyval_jet(derivs_at_z, u, order):
    """Jet at z+u of the Taylor polynomial with the given derivatives at z.

    ``u`` may be a float or array.  Used to evaluate a stitched local model
    near a removable singularity of a quotient.
    """
    m = len(derivs_at_z) - 1
    out = []
    for j in range(order + 1):
        if j > m:
            out.append(_zero_like(u))
            continue
        s = _zero_like(u)
        for k in range(m, j - 1, -1):
            s = s * u / (k - j + 1.0) + derivs_at_z[k]
        out.append(s)
    return Jet(tuple(out))
