"""Frenet apparatus and the (p,q)-harmonic curve system in 3-D space forms.

Curves live in N^3(c) through the embedded models of
:mod:`pqharmonic.spaceform`; the frame (T, N, B) is computed numerically
from the exact model connection, the binormal being the oriented
completion with respect to the ambient volume form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np
import scipy.interpolate
import scipy.linalg
import scipy.optimize

from . import numeric
from .errors import (DomainError, FrameUndefinedError, SingularFactorError,
                     SingularSpeedError)
from .spaceform import SpaceForm

K_THRESHOLD = 1e-8


@dataclass(frozen=True)
class CurveChart:
    """A C^4 curve t -> N^3(c) in ambient embedding coordinates."""

    sf: SpaceForm
    domain: tuple
    map: Callable[[float], np.ndarray]
    unit_speed: bool = False
    name: str = "curve"

    def __post_init__(self):
        if self.sf.n != 3:
            raise ValueError("curve module requires a 3-dimensional space form")

    @property
    def width(self):
        return self.domain[1] - self.domain[0]

    def frame_step(self):
        return 1e-3 * self.width

    def scan_step(self):
        # step for arc-length derivatives of k and tau
        return 1e-3 * self.width


@dataclass(frozen=True)
class FrenetApparatus:
    T: np.ndarray
    N: np.ndarray
    B: np.ndarray
    k: float
    tau: float
    k_prime: float
    k_second: float
    tau_prime: float


# -- frame construction -----------------------------------------------------

def _tangent(curve, t):
    return numeric.deriv1(curve.map, t, curve.frame_step())


def _accel(curve, t):
    """nabla_T T at t for a (near) unit-speed curve."""
    return curve.sf.covariant_derivative(curve.map, lambda s: _tangent(curve, s),
                                         t, step=curve.frame_step())


def _principal_normal(curve, t):
    acc = _accel(curve, t)
    k = math.sqrt(max(curve.sf.pair(acc, acc), 0.0))
    if k < K_THRESHOLD:
        raise FrameUndefinedError(
            f"geodesic curvature {k:.3e} below {K_THRESHOLD:g}: frame undefined")
    return acc / k, k


def _binormal(sf, P, T, N):
    """Oriented completion of (T, N) in the tangent 3-space at P.

    The sign convention is det[T, N, B] > 0 in R^3 and
    det[T, N, B, P-axis] > 0 columnwise in the embedded models, which makes
    the torsion of the standard sphere helices positive.
    """
    if sf.c == 0:
        return np.cross(T, N)
    signs = sf.pairing_signs()
    rows = np.stack([signs * P, signs * T, signs * N])
    null = scipy.linalg.null_space(rows)
    w = null[:, 0]
    w = w / math.sqrt(sf.pair(w, w))
    if np.linalg.det(np.stack([T, N, w, P], axis=1)) > 0:
        w = -w
    return w


def frenet(curve: CurveChart, t) -> FrenetApparatus:
    """Frenet frame, curvature, torsion and their arc-length derivatives.

    The curve must be (claimed) unit speed; the frame is undefined where
    the geodesic curvature drops below 1e-8.
    """
    sf = curve.sf
    T = _tangent(curve, t)
    N, k = _principal_normal(curve, t)
    B = _binormal(sf, np.asarray(curve.map(t), dtype=float), T, N)

    def n_field(s):
        return _principal_normal(curve, s)[0]

    dN = sf.covariant_derivative(curve.map, n_field, t, step=curve.frame_step())
    tau = sf.pair(dN, B)

    def k_of(s):
        return _principal_normal(curve, s)[1]

    def tau_of(s):
        Ts = _tangent(curve, s)
        Ns, _ = _principal_normal(curve, s)
        Bs = _binormal(sf, np.asarray(curve.map(s), dtype=float), Ts, Ns)
        dNs = sf.covariant_derivative(curve.map, n_field, s, step=curve.frame_step())
        return sf.pair(dNs, Bs)

    h = curve.scan_step()
    k_prime = float(numeric.deriv1(k_of, t, h))
    k_second = float(numeric.deriv2(k_of, t, h))
    tau_prime = float(numeric.deriv1(tau_of, t, h))
    return FrenetApparatus(T=T, N=N, B=B, k=k, tau=tau,
                           k_prime=k_prime, k_second=k_second,
                           tau_prime=tau_prime)


# -- arc length -------------------------------------------------------------

def speed_of(curve, t):
    v = _tangent(curve, t)
    return math.sqrt(max(curve.sf.pair(v, v), 0.0))


def reparametrize_arclength(curve: CurveChart, samples=2048) -> CurveChart:
    """Unit-speed reparametrization via cumulative length inversion.

    Verified-unit-speed input is returned unchanged.  The speed is splined
    on a dense grid, its antiderivative gives the length function, and each
    arc-length value is inverted by monotone root finding.
    """
    t0, t1 = curve.domain
    ts = np.linspace(t0, t1, samples + 1)
    speeds = np.array([speed_of(curve, t) for t in ts])
    if np.min(speeds) <= 1e-10:
        raise SingularSpeedError("curve speed vanishes; cannot reparametrize")
    if np.max(np.abs(speeds - 1.0)) < 1e-10:
        return replace(curve, unit_speed=True)

    length_fn = scipy.interpolate.CubicSpline(ts, speeds).antiderivative()
    total = float(length_fn(t1) - length_fn(t0))
    pad = 0.05 * (t1 - t0)

    def t_of_s(s):
        target = float(length_fn(t0)) + s
        return scipy.optimize.brentq(lambda t: float(length_fn(t)) - target,
                                     t0 - pad, t1 + pad, xtol=1e-14)

    new_map = lambda s: np.asarray(curve.map(t_of_s(float(s))), dtype=float)
    return CurveChart(sf=curve.sf, domain=(0.0, total), map=new_map,
                      unit_speed=True, name=curve.name + "(arclength)")


# -- the curve system -------------------------------------------------------

def curve_system_residual(fr: FrenetApparatus, params, c):
    """The three scalar equations of the (p,q)-harmonic curve system.

    r1 multiplies T, r2 multiplies N, r3 multiplies B in the (sign-stripped)
    tension field of a unit-speed curve with frame ``fr``.
    """
    p, q = float(params.p), float(params.q)
    k, tau = fr.k, fr.tau
    if k < K_THRESHOLD:
        raise SingularFactorError(
            f"k = {k:.3e} too small for the k^(q-3) factor")
    with np.errstate(over="raise", divide="raise"):
        r1 = (p * q - 1.0) * k ** (q - 1) * fr.k_prime
        r2 = (c * k ** (q - 1)
              + (q - 1) * (q - 2) * k ** (q - 3) * fr.k_prime ** 2
              + (q - 1) * k ** (q - 2) * fr.k_second
              - k ** (q + 1)
              - k ** (q - 1) * tau ** 2
              - (p - 2) * k ** (q + 1))
        r3 = (2 * (q - 1) * k ** (q - 2) * fr.k_prime * tau
              + k ** (q - 1) * fr.tau_prime)
    if not all(np.isfinite([r1, r2, r3])):
        raise SingularFactorError("overflow in curve residual powers of k")
    return float(r1), float(r2), float(r3)


def p_closed_form(k, tau, c):
    """The unique exponent p = (c - tau^2)/k^2 + 1 for constant (k, tau).

    Returns ``(p, admissible)`` where admissibility means p > 1,
    equivalently c - tau^2 > 0.
    """
    if k <= 0:
        raise ValueError("geodesic curvature must be positive")
    p = (c - tau * tau) / (k * k) + 1.0
    return float(p), bool(p > 1.0)


# -- the helix catalog ------------------------------------------------------

@dataclass(frozen=True)
class HelixResult:
    curve: CurveChart
    alpha: float
    a: float
    b: float
    k: float
    tau: float
    p: float
    admissible: bool
    rescaled: bool


def helix(alpha, a, b, periods=1.0) -> HelixResult:
    """The standard helix in S^3 with frequencies (a, b) at latitude alpha.

    (a, b) are rescaled onto the unit-speed constraint
    a^2 cos^2(alpha) + b^2 sin^2(alpha) = 1 when violated by more than
    1e-10, and the rescue is reported through ``rescaled``.
    """
    if not (0.0 < alpha < math.pi / 2):
        raise DomainError("alpha must lie in (0, pi/2)")
    if not (a > b > 0):
        raise DomainError("need a > b > 0")
    ca, sa = math.cos(alpha), math.sin(alpha)
    constraint = a * a * ca * ca + b * b * sa * sa
    rescaled = False
    if abs(constraint - 1.0) > 1e-10:
        lam = 1.0 / math.sqrt(constraint)
        a, b = lam * a, lam * b
        rescaled = True
    if a <= 1.0:
        raise DomainError(f"a = {a:.6g} <= 1: geodesic family, k undefined")
    if b >= 1.0:
        raise DomainError(f"b = {b:.6g} >= 1: k vanishes")

    k = math.sqrt((a * a - 1.0) * (1.0 - b * b))
    tau = a * b
    p = (a * a + b * b - 2.0 * a * a * b * b) / ((a * a - 1.0) * (1.0 - b * b))
    admissible = (tau * tau < 1.0) and (p > 1.0)

    def gamma(t):
        return np.array([ca * math.cos(a * t), ca * math.sin(a * t),
                         sa * math.cos(b * t), sa * math.sin(b * t)])

    curve = CurveChart(sf=SpaceForm(3, 1.0), domain=(0.0, periods * 2 * math.pi),
                       map=gamma, unit_speed=True,
                       name=f"helix(alpha={alpha:.6g}, a={a:.6g}, b={b:.6g})")
    return HelixResult(curve=curve, alpha=alpha, a=a, b=b, k=k, tau=tau,
                       p=p, admissible=admissible, rescaled=rescaled)
