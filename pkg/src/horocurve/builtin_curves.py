"""Built-in sample curves with analytic jets.

``example1`` is a closed frontal whose curvature is (cos t, cos t); its
offset families (parallels, involutes) all have elementary closed forms,
which makes it the main oracle curve for tests.  ``example2`` wraps an
astroid-like front: its plus-sign involute collapses onto the cusped curve
(sqrt(1+cos^6 t+sin^6 t), cos^3 t, sin^3 t).

Closed-form solution families are exposed as jet-valued callables so that
residual checks against the defining differential equations stay
independent of the equations themselves.
"""

from __future__ import annotations

import math

import numpy as np

from . import jets as J
from .jets import Jet
from .legendre import CurvaturePair, LegendreCurve, Sign

DOMAIN = (-math.pi, math.pi)


# -- example 1 ----------------------------------------------------------------


def _ex1_frame(t, order):
    T = Jet.variable(t, order)
    s = J.sin(T)
    s2h = s * s * 0.5
    gamma = (1.0 + s2h, s2h, -s)
    nu = (s2h, s2h - 1.0, -s)
    return gamma, nu


def _ex1_mn(t, order):
    c = J.cos(Jet.variable(t, order))
    return c, c


def example1():
    return LegendreCurve(
        DOMAIN,
        _ex1_frame,
        name="example1",
        provenance="builtin",
        analytic_curvature=CurvaturePair(DOMAIN, _ex1_mn, label="example1"),
        periodic=True,
    )


def example1_parallel_display(sign, c):
    """The printed parallel family lambda(t) = 2c / (e^{+-sin t} - c) as jets."""
    s = sign.s

    def ev(t, order):
        T = Jet.variable(t, order)
        return 2.0 * c / (J.exp(s * J.sin(T)) - c)

    return ev


def example1_involute_plus(cbar):
    """s_+(t) = (1 + cbar e^{2 sin t}) / (1 - cbar e^{2 sin t})."""

    def ev(t, order):
        T = Jet.variable(t, order)
        e = cbar * J.exp(2.0 * J.sin(T))
        return (1.0 + e) / (1.0 - e)

    return ev


def example1_involute_minus(ctilde):
    """s_-(t) = -sin t + ctilde."""

    def ev(t, order):
        return -J.sin(Jet.variable(t, order)) + ctilde

    return ev


# -- example 2 ----------------------------------------------------------------


def _ex2_parts(T):
    s, c = J.sin(T), J.cos(T)
    s2, c2 = s * s, c * c
    u = s2 * c2
    w = 1.0 + c2 * c2 * c2 + s2 * s2 * s2  # 1 + cos^6 + sin^6
    r = J.sqrt(w)
    q = J.sqrt(1.0 + u)
    x0 = (r, c * c2, s * s2)
    x1 = ((s * c * r) / q, (s * (1.0 + c2 * c2)) / q, (c * (1.0 + s2 * s2)) / q)
    x2 = ((s2 - c2) / q, -(c * r) / q, (s * r) / q)
    h = 3.0 * u * u + 6.0 * u - 2.0  # denominator of g; negative everywhere
    g = -(3.0 * s * c * ((1.0 + u) * q)) / h
    e = h / ((1.0 + u) * r)
    return x0, x1, x2, g, e


def _ex2_frame(t, order):
    T = Jet.variable(t, order)
    x0, x1, x2, g, _ = _ex2_parts(T)
    g2h = g * g * 0.5
    gamma = tuple((1.0 + g2h) * x0[i] + g * x1[i] + g2h * x2[i] for i in range(3))
    nu = tuple((1.0 - g2h) * x2[i] - g * x1[i] - g2h * x0[i] for i in range(3))
    return gamma, nu


def _ex2_mn(t, order):
    T = Jet.variable(t, order + 1)
    _, _, _, g, e = _ex2_parts(T)
    gdot = g.deriv()
    half_g2e = g * g * e * 0.5
    m = -gdot + half_g2e
    n = gdot - half_g2e + e
    return m, n


def example2():
    return LegendreCurve(
        DOMAIN,
        _ex2_frame,
        name="example2",
        provenance="builtin",
        analytic_curvature=CurvaturePair(DOMAIN, _ex2_mn, label="example2"),
        periodic=True,
    )


def example2_involute_plus():
    """The particular solution s_+(t) = g(t) of example2's plus-sign equation."""

    def ev(t, order):
        _, _, _, g, _ = _ex2_parts(Jet.variable(t, order))
        return g

    return ev


def example2_involute_track(t):
    """Closed form of example2's plus-sign involute, shape (..., 3)."""
    t = np.asarray(t, dtype=float)
    c3, s3 = np.cos(t) ** 3, np.sin(t) ** 3
    return np.stack(
        [np.sqrt(1.0 + np.cos(t) ** 6 + np.sin(t) ** 6), c3, s3], axis=-1
    )


# -- registry ------------------------------------------------------------------

BUILTIN_FACTORIES = {
    "example1": example1,
    "example2": example2,
}


def builtin_involute_closed_form(name, sign, c=None):
    """Closed-form involute solution for a builtin, or None when unavailable.

    example1 supports both signs with an explicit constant; example2 only
    ships the particular plus-sign solution (constant ignored must be None).
    """
    if name == "example1":
        if c is None:
            return None
        if sign is Sign.PLUS:
            return example1_involute_plus(float(c))
        return example1_involute_minus(float(c))
    if name == "example2" and sign is Sign.PLUS and c is None:
        return example2_involute_plus()
    return None
