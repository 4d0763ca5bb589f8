"""Spacelike Legendre curves on the hyperbolic plane.

A curve here is a pair (gamma, nu): gamma on the unit hyperboloid (upper
sheet), nu a unit spacelike normal with <gamma', nu> = 0.  With
mu = gamma wedge nu the frame obeys

    gamma' = m mu,   nu' = n mu,   mu' = m gamma - n nu,

and the pair (m, n) is the curve's curvature.  Everything in this module is
jet-valued: evaluating a curve returns the frame together with exact
derivatives, which is what the cusp criteria and offset constructions
consume downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import expr
from .errors import (
    DomainMismatch,
    FrameDrift,
    InvalidInitialFrame,
    OutOfDomain,
    PreFlightFailed,
    SingularPoint,
    StepTooLarge,
)
from .jets import _BINOM, DEFAULT_ORDER, Jet
from .lorentz import det3, pseudo_dot, pseudo_wedge

EPS_FRAME = 1e-9
DRIFT_FACTOR = 100.0
EPS_REG = 1e-10
FRAME_ORDER = 5  # one order above curvature so extraction keeps full jets


class Sign(Enum):
    PLUS = 1
    MINUS = -1

    @property
    def s(self):
        """+1.0 or -1.0, for use inside the +/- closed forms."""
        return float(self.value)

    @property
    def tag(self):
        return "plus" if self is Sign.PLUS else "minus"

    def flipped(self):
        return Sign.MINUS if self is Sign.PLUS else Sign.PLUS


@dataclass(frozen=True)
class FrameJet:
    """Jets of the moving frame (gamma, nu, mu) at one parameter point."""

    gamma: tuple
    nu: tuple
    mu: tuple

    @property
    def order(self):
        return min(c.order for c in self.gamma + self.nu + self.mu)

    def values(self):
        """Value-level frame as three arrays with trailing axis 3."""
        return tuple(
            np.stack([np.asarray(c.d[0], dtype=float) for c in comp], axis=-1)
            for comp in (self.gamma, self.nu, self.mu)
        )

    def gamma_derivatives(self, order=None):
        """Array of gamma's derivatives, shape (order+1, ..., 3)."""
        order = self.order if order is None else order
        return np.stack(
            [
                np.stack([np.asarray(c.d[k], dtype=float) for c in self.gamma], axis=-1)
                for k in range(order + 1)
            ]
        )


def frame_residuals(fj):
    """Max absolute residual of each frame invariant (value level)."""

    def mx(x):
        return float(np.max(np.abs(np.asarray(x))))

    res = {
        "gamma_norm": mx(pseudo_dot(fj.gamma, fj.gamma).d[0] + 1.0),
        "nu_norm": mx(pseudo_dot(fj.nu, fj.nu).d[0] - 1.0),
        "gamma_nu": mx(pseudo_dot(fj.gamma, fj.nu).d[0]),
    }
    if fj.order >= 1:
        gd = tuple(c.d[1] for c in fj.gamma)
        vd = tuple(c.d[1] for c in fj.nu)
        vv = tuple(c.d[0] for c in fj.nu)
        uv = tuple(c.d[0] for c in fj.mu)
        res["legendre"] = mx(pseudo_dot(gd, vv))
        m0 = pseudo_dot(gd, uv)
        n0 = pseudo_dot(vd, uv)
        res["gamma_parallel"] = mx(np.stack([np.asarray(gd[i] - m0 * uv[i]) for i in range(3)]))
        res["nu_parallel"] = mx(np.stack([np.asarray(vd[i] - n0 * uv[i]) for i in range(3)]))
    return res


class LegendreCurve:
    """Domain interval plus a jet-valued frame evaluator."""

    def __init__(
        self,
        domain,
        frame_fn,
        *,
        name="curve",
        provenance="builtin",
        analytic_curvature=None,
        periodic=False,
        check=True,
        drift_tol=DRIFT_FACTOR * EPS_FRAME,
    ):
        self.domain = (float(domain[0]), float(domain[1]))
        self._frame_fn = frame_fn
        self.name = name
        self.provenance = provenance
        self.analytic_curvature = analytic_curvature
        self.periodic = periodic
        self._check = check
        self._drift_tol = drift_tol

    def _require_in_domain(self, t):
        a, b = self.domain
        slack = 1e-9 * max(1.0, abs(a), abs(b))
        tq = np.asarray(t)
        if np.any(tq < a - slack) or np.any(tq > b + slack):
            raise OutOfDomain(
                f"parameter outside [{a:g}, {b:g}] for curve {self.name!r}"
            )

    def frame_jets(self, t, order=DEFAULT_ORDER):
        self._require_in_domain(t)
        g, v = self._frame_fn(t, order)
        mu = pseudo_wedge(g, v)
        fj = FrameJet(tuple(g), tuple(v), tuple(mu))
        if self._check:
            res = frame_residuals(fj)
            worst = max(res.values())
            if worst > self._drift_tol:
                key = max(res, key=res.get)
                raise FrameDrift(
                    f"frame invariant {key} drifted to {worst:.3e} on {self.name!r}"
                )
        return fj

    def points(self, t):
        """gamma values only, shape (..., 3)."""
        fj = self.frame_jets(t, 1)
        return fj.values()[0]


def evaluate_frame(curve, t, order=DEFAULT_ORDER):
    """Frame jets of a curve at t; mu comes from the wedge product rule."""
    return curve.frame_jets(t, order)


class CurvaturePair:
    """The pair (m, n) as jet-valued functions of the parameter."""

    def __init__(self, domain, eval_fn, label="mn"):
        self.domain = (float(domain[0]), float(domain[1]))
        self._eval = eval_fn
        self.label = label

    def jets(self, t, order=DEFAULT_ORDER):
        return self._eval(t, order)

    def m(self, t, order=DEFAULT_ORDER):
        return self._eval(t, order)[0]

    def n(self, t, order=DEFAULT_ORDER):
        return self._eval(t, order)[1]

    def values(self, t):
        mj, nj = self._eval(t, 0)
        return mj.d[0], nj.d[0]

    @classmethod
    def from_exprs(cls, m_src, n_src, domain, label=None):
        m_ast = expr.parse(m_src) if isinstance(m_src, str) else m_src
        n_ast = expr.parse(n_src) if isinstance(n_src, str) else n_src

        def ev(t, order):
            return expr.eval_jet(m_ast, t, order), expr.eval_jet(n_ast, t, order)

        return cls(domain, ev, label or f"({m_src}, {n_src})")

    @classmethod
    def from_functions(cls, m_fn, n_fn, domain, label="mn"):
        """m_fn/n_fn map (t, order) -> Jet."""

        def ev(t, order):
            return m_fn(t, order), n_fn(t, order)

        return cls(domain, ev, label)

    def flipped(self):
        def ev(t, order):
            mj, nj = self._eval(t, order)
            return -mj, nj

        return CurvaturePair(self.domain, ev, f"flip({self.label})")


def _extract_mn(fj):
    gd = tuple(c.deriv() for c in fj.gamma)
    vd = tuple(c.deriv() for c in fj.nu)
    return pseudo_dot(gd, fj.mu), pseudo_dot(vd, fj.mu)


def curvature(curve):
    """Extracted curvature: m = <gamma', mu>, n = <nu', mu> as jets."""

    def ev(t, order):
        return _extract_mn(curve.frame_jets(t, order + 1))

    return CurvaturePair(curve.domain, ev, label=f"curvature({curve.name})")


def mn_of(curve):
    """The curve's analytic curvature when it has one, else extraction."""
    return curve.analytic_curvature or curvature(curve)


# -- Frenet-type recursion ---------------------------------------------------


def frenet_frame_jets(g0, v0, u0, m_jet, n_jet, order):
    """Frame jets from value-level frame vectors and curvature jets.

    Successive derivatives come from differentiating gamma' = m mu,
    nu' = n mu, mu' = m gamma - n nu with the Leibniz rule, so curvature
    jets of order ``order - 1`` yield frame jets of order ``order``.
    """
    md, nd = m_jet.d, n_jet.d
    if len(md) < order or len(nd) < order:
        raise ValueError("curvature jets too short for the requested frame order")
    G = [tuple(g0)]
    V = [tuple(v0)]
    U = [tuple(u0)]
    for k in range(order):
        bk = _BINOM[k]
        gk = tuple(
            sum(bk[j] * md[j] * U[k - j][i] for j in range(k + 1)) for i in range(3)
        )
        vk = tuple(
            sum(bk[j] * nd[j] * U[k - j][i] for j in range(k + 1)) for i in range(3)
        )
        uk = tuple(
            sum(
                bk[j] * (md[j] * G[k - j][i] - nd[j] * V[k - j][i])
                for j in range(k + 1)
            )
            for i in range(3)
        )
        G.append(gk)
        V.append(vk)
        U.append(uk)
    mk = lambda comp: tuple(
        Jet(tuple(comp[k][i] for k in range(order + 1))) for i in range(3)
    )
    return mk(G), mk(V), mk(U)


def gamma_derivatives_via_frenet(frame_values, mn, t, order=5):
    """Derivatives of gamma to the given order, shape (order+1, 3).

    This is how order-5 position jets are obtained from order-4 curvature
    data when classifying singularities geometrically.
    """
    g0, v0, u0 = (np.asarray(x, dtype=float) for x in frame_values)
    mj, nj = mn.jets(t, max(order - 1, 0))
    G, _, _ = frenet_frame_jets(tuple(g0), tuple(v0), tuple(u0), mj, nj, order)
    return np.stack([[float(G[i].d[k]) for i in range(3)] for k in range(order + 1)])


# -- synthesis from prescribed curvature -------------------------------------


def _pdot_rows(a, b):
    return -a[..., 0] * b[..., 0] + a[..., 1] * b[..., 1] + a[..., 2] * b[..., 2]


def _wedge_rows(a, b):
    w = np.empty(np.broadcast(a, b).shape)
    w[..., 0] = -(a[..., 1] * b[..., 2] - a[..., 2] * b[..., 1])
    w[..., 1] = -(a[..., 0] * b[..., 2] - a[..., 2] * b[..., 0])
    w[..., 2] = a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]
    return w


def _renormalize(y):
    """Project a near-frame back onto the frame manifold.

    gamma is rescaled to <g,g> = -1, nu is made orthogonal to gamma and unit,
    mu is recomputed as the wedge.  y has shape (..., 3, 3) with rows
    gamma, nu, mu.
    """
    g = y[..., 0, :]
    v = y[..., 1, :]
    g = g / np.sqrt(-_pdot_rows(g, g))[..., None]
    v = v + _pdot_rows(v, g)[..., None] * g  # <g,g> = -1
    v = v / np.sqrt(_pdot_rows(v, v))[..., None]
    u = _wedge_rows(g, v)
    return np.stack([g, v, u], axis=-2)


def _frame_rhs(m, n, y):
    g = y[..., 0, :]
    v = y[..., 1, :]
    u = y[..., 2, :]
    m = np.asarray(m)[..., None]
    n = np.asarray(n)[..., None]
    return np.stack([m * u, n * u, m * g - n * v], axis=-2)


def _rk4_frame(y, h, m3, n3):
    """One classical step; (m3, n3) hold coefficient values at t, t+h/2, t+h."""
    if np.ndim(h):
        h = np.asarray(h)[..., None, None]
    k1 = _frame_rhs(m3[0], n3[0], y)
    k2 = _frame_rhs(m3[1], n3[1], y + 0.5 * h * k1)
    k3 = _frame_rhs(m3[1], n3[1], y + 0.5 * h * k2)
    k4 = _frame_rhs(m3[2], n3[2], y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def frame_values_of(frame0):
    """Coerce a FrameJet / 3x3 array / triple of vectors to a (3,3) array."""
    if isinstance(frame0, FrameJet):
        g, v, u = frame0.values()
        return np.stack([g, v, u])
    arr = np.asarray(
        [list(row) for row in frame0] if not isinstance(frame0, np.ndarray) else frame0,
        dtype=float,
    )
    if arr.shape != (3, 3):
        raise InvalidInitialFrame(f"expected three 3-vectors, got shape {arr.shape}")
    return arr


def check_initial_frame(y0, tol=1e-9):
    g, v, u = y0
    checks = {
        "gamma_norm": abs(_pdot_rows(g, g) + 1.0),
        "nu_norm": abs(_pdot_rows(v, v) - 1.0),
        "gamma_nu": abs(_pdot_rows(g, v)),
        "mu_wedge": float(np.max(np.abs(u - _wedge_rows(g, v)))),
        "upper_sheet": 0.0 if g[0] > 0 else 1.0,
    }
    worst = max(checks.values())
    if worst > tol:
        key = max(checks, key=checks.get)
        raise InvalidInitialFrame(f"initial frame fails {key} by {worst:.3e}")


def synthesize_from_curvature(mn, frame0, domain, step=1e-3, name="synthesized"):
    """Integrate the frame equations for a prescribed curvature pair.

    Classical 4th-order steps on a fixed grid; the frame is re-orthonormalised
    after every step so the invariants stay testable.  The returned curve
    carries ``mn`` as its analytic curvature and evaluates anywhere in the
    domain by a single sub-step from the nearest grid node.
    """
    a, b = float(domain[0]), float(domain[1])
    if not b > a:
        raise ValueError("need domain with a < b")
    if step <= 0:
        raise ValueError("step must be positive")
    y0 = frame_values_of(frame0)
    check_initial_frame(y0)

    n_steps = max(1, int(round((b - a) / step)))
    h = (b - a) / n_steps
    t_half = a + 0.5 * h * np.arange(2 * n_steps + 1)
    mv, nv = mn.values(t_half)
    mv = np.broadcast_to(np.asarray(mv, dtype=float), t_half.shape)
    nv = np.broadcast_to(np.asarray(nv, dtype=float), t_half.shape)

    frames = np.empty((n_steps + 1, 3, 3))
    frames[0] = y0
    y = y0
    for k in range(n_steps):
        i = 2 * k
        y = _rk4_frame(y, h, (mv[i], mv[i + 1], mv[i + 2]), (nv[i], nv[i + 1], nv[i + 2]))
        drift = max(
            float(np.abs(_pdot_rows(y[0], y[0]) + 1.0)),
            float(np.abs(_pdot_rows(y[1], y[1]) - 1.0)),
            float(np.abs(_pdot_rows(y[0], y[1]))),
        )
        if drift > 1e-3:
            raise StepTooLarge(
                f"frame drift {drift:.3e} after one step of {h:.3e}; reduce the step"
            )
        y = _renormalize(y)
        frames[k + 1] = y

    def frame_fn(t, order):
        tq = np.asarray(t, dtype=float)
        scalar = tq.ndim == 0
        tq1 = np.atleast_1d(tq)
        idx = np.clip(((tq1 - a) / h).astype(int), 0, n_steps - 1)
        t0 = a + idx * h
        delta = tq1 - t0
        yq = frames[idx]
        stage = [mn.values(t0), mn.values(t0 + 0.5 * delta), mn.values(t0 + delta)]
        m3 = [np.broadcast_to(np.asarray(s[0], float), tq1.shape) for s in stage]
        n3 = [np.broadcast_to(np.asarray(s[1], float), tq1.shape) for s in stage]
        yq = _rk4_frame(yq, delta, m3, n3)
        yq = _renormalize(yq)
        if order == 0:
            g = tuple(Jet((yq[:, 0, i],)) for i in range(3))
            v = tuple(Jet((yq[:, 1, i],)) for i in range(3))
        else:
            mj, nj = mn.jets(tq1, order - 1)
            g3 = tuple(yq[:, 0, i] for i in range(3))
            v3 = tuple(yq[:, 1, i] for i in range(3))
            u3 = tuple(yq[:, 2, i] for i in range(3))
            g, v, _ = frenet_frame_jets(g3, v3, u3, mj, nj, order)
        if scalar:
            g = tuple(Jet(tuple(float(np.atleast_1d(c)[0]) for c in j.d)) for j in g)
            v = tuple(Jet(tuple(float(np.atleast_1d(c)[0]) for c in j.d)) for j in v)
        return g, v

    return LegendreCurve(
        (a, b),
        frame_fn,
        name=name,
        provenance="synthesized",
        analytic_curvature=mn,
    )


# -- remaining operations -----------------------------------------------------


def congruent(mn1, mn2, samples=512, tol=1e-6):
    """Curvature-level congruence test on a shared uniform grid."""
    if (
        abs(mn1.domain[0] - mn2.domain[0]) > 1e-9
        or abs(mn1.domain[1] - mn2.domain[1]) > 1e-9
    ):
        raise DomainMismatch(
            f"domains differ: {mn1.domain} vs {mn2.domain}"
        )
    t = np.linspace(mn1.domain[0], mn1.domain[1], samples)
    m1, n1 = mn1.values(t)
    m2, n2 = mn2.values(t)
    dm = float(np.max(np.abs(np.asarray(m1) - np.asarray(m2))))
    dn = float(np.max(np.abs(np.asarray(n1) - np.asarray(n2))))
    return max(dm, dn) <= tol


def flip_normal(curve):
    """The curve with nu replaced by -nu; curvature becomes (-m, n)."""

    def frame_fn(t, order):
        g, v = curve._frame_fn(t, order)
        return g, tuple(-c for c in v)

    return LegendreCurve(
        curve.domain,
        frame_fn,
        name=f"{curve.name}~flip",
        provenance=curve.provenance,
        analytic_curvature=(
            curve.analytic_curvature.flipped() if curve.analytic_curvature else None
        ),
        periodic=curve.periodic,
    )


def geodesic_curvature(gamma_jets, eps_reg=EPS_REG):
    """det(gamma, gamma', gamma'') / |gamma'|^3 at a regular point."""
    g = tuple(c.d[0] for c in gamma_jets)
    gd = tuple(c.d[1] for c in gamma_jets)
    gdd = tuple(c.d[2] for c in gamma_jets)
    q = pseudo_dot(gd, gd)
    if np.any(np.asarray(q) < eps_reg * eps_reg):
        raise SingularPoint("velocity vanishes (or is not spacelike) at this parameter")
    speed = np.sqrt(q)
    return det3(g, gd, gdd) / speed**3


class HorocycleBranch(Enum):
    PLUS = "plus"  # m + n identically zero
    MINUS = "minus"  # m - n identically zero
    BOTH = "both"  # point-like degenerate
    NO = "no"


def is_horocycle(mn, samples=512, tol=1e-8):
    """Detect the horocycle condition m+n = 0 or m-n = 0 along the curve."""
    t = np.linspace(mn.domain[0], mn.domain[1], samples)
    m, n = mn.values(t)
    m = np.asarray(m, dtype=float)
    n = np.asarray(n, dtype=float)
    plus = float(np.max(np.abs(m + n))) <= tol
    minus = float(np.max(np.abs(m - n))) <= tol
    if plus and minus:
        return HorocycleBranch.BOTH
    if plus:
        return HorocycleBranch.PLUS
    if minus:
        return HorocycleBranch.MINUS
    return HorocycleBranch.NO


def preflight(curve, samples=256):
    """Frame-invariant sweep used before accepting user-defined curves."""
    a, b = curve.domain
    t = np.linspace(a, b, samples)
    g, v = curve._frame_fn(t, 2)
    u = pseudo_wedge(g, v)
    gd = tuple(c.deriv() for c in g)
    vd = tuple(c.deriv() for c in v)
    m0 = pseudo_dot(gd, u).d[0]
    n0 = pseudo_dot(vd, u).d[0]
    res = {
        "gamma_norm": np.abs(pseudo_dot(g, g).d[0] + 1.0),
        "nu_norm": np.abs(pseudo_dot(v, v).d[0] - 1.0),
        "gamma_nu": np.abs(pseudo_dot(g, v).d[0]),
        "legendre": np.abs(pseudo_dot(gd, v).d[0]),
        "gamma_parallel": np.max(
            np.abs(np.stack([np.asarray(g[i].d[1] - m0 * u[i].d[0]) for i in range(3)])), axis=0
        ),
        "nu_parallel": np.max(
            np.abs(np.stack([np.asarray(v[i].d[1] - n0 * u[i].d[0]) for i in range(3)])), axis=0
        ),
        "upper_sheet": np.where(np.asarray(g[0].d[0]) > 0, 0.0, 1.0),
    }
    worst, worst_t, worst_key = 0.0, a, ""
    for key, arr in res.items():
        arr = np.broadcast_to(np.atleast_1d(arr), t.shape)
        i = int(np.argmax(arr))
        if float(arr[i]) > worst:
            worst, worst_t, worst_key = float(arr[i]), float(t[i]), key
    if worst > EPS_FRAME * DRIFT_FACTOR:
        raise PreFlightFailed(
            f"pre-flight failed: {worst_key} residual {worst:.3e} at t={worst_t:.6g}",
            worst_t=worst_t,
            worst_residual=worst,
        )
