"""Built-in example charts and curves with their closed-form geometry.

Each hypersurface entry carries exact jacobian/hessian callbacks and an
``analytic_geometry`` sampler, so the same object exercises both the
closed-form path (residuals at machine precision) and the stencil path
(everything recomputed by finite differences) of the engine.

Entries:

* ``sphere_in_sphere(m, a2)`` -- the small sphere S^m(a) inside S^(m+1),
  proper (p,q)-harmonic exactly at p = 1/b^2 with b^2 = 1 - a^2;
* ``great_sphere(m)`` -- the equatorial S^m(1), minimal;
* ``cone(r)`` -- the rotation cone (r u cos v, r u sin v, u) in R^3,
  proper at p = 2(1 - 1/q), r = 1/sqrt(q(q-1)) for q > 2;
* ``plane()`` -- a flat patch in R^3, minimal;
* ``circle(rho)`` -- the unit-speed round circle in R^3;
* the helix family lives in :func:`pqharmonic.curves.helix`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curves import CurveChart
from .errors import DomainError
from .immersion import GeometricSample, ImmersionChart
from .spaceform import SpaceForm


# -- hyperspherical coordinates ---------------------------------------------

def _trig(kind, x, order):
    if kind == "sin":
        return (math.sin(x), math.cos(x), -math.sin(x))[order]
    return (math.cos(x), -math.sin(x), -math.cos(x))[order]


def _omega_component(u, j, orders):
    """Component j of the unit-sphere map omega : (0,pi)^(m-1) x (0,2pi) -> S^m.

    omega_j = sin(u_0)...sin(u_{j-1}) cos(u_j) for j < m and
    omega_m = sin(u_0)...sin(u_{m-1}); ``orders`` maps axis -> derivative
    order, exploiting that each component is a product of univariate
    factors.
    """
    m = len(u)
    val = 1.0
    for i in range(m):
        if i < j:
            kind = "sin"
        elif i == j and j < m:
            kind = "cos"
        else:
            if orders.get(i, 0):
                return 0.0
            continue
        val *= _trig(kind, u[i], orders.get(i, 0))
    return val


def _omega(u):
    m = len(u)
    return np.array([_omega_component(u, j, {}) for j in range(m + 1)])


def _omega_jacobian(u):
    m = len(u)
    return np.array([[_omega_component(u, j, {i: 1}) for i in range(m)]
                     for j in range(m + 1)])


def _omega_hessian(u):
    m = len(u)
    H = np.zeros((m + 1, m, m))
    for j in range(m + 1):
        for a in range(m):
            for b in range(a, m):
                orders = {a: 2} if a == b else {a: 1, b: 1}
                H[j, a, b] = H[j, b, a] = _omega_component(u, j, orders)
    return H


def _sphere_domain(m):
    # polar angles clear of the coordinate singularities, azimuth almost full
    return tuple([(0.45, 2.65)] * (m - 1) + [(0.0, 2.0 * math.pi)])


# -- catalog entries --------------------------------------------------------

def sphere_in_sphere(m=2, a2=0.5):
    """The small hypersphere S^m(a) inside the unit sphere S^(m+1).

    Embedded as X(u) = (a omega(u), b) with a^2 + b^2 = 1 and the unit
    normal eta = (b omega, -a), under which the mean curvature is the
    constant f = -b/a.
    """
    if not 0.0 < a2 < 1.0:
        raise DomainError(f"need 0 < a2 < 1, got {a2}")
    if m < 1:
        raise DomainError("hypersurface dimension must be >= 1")
    a, b = math.sqrt(a2), math.sqrt(1.0 - a2)
    sf = SpaceForm(m + 1, 1.0)
    f0 = -b / a

    def chart_map(u):
        return np.append(a * _omega(u), b)

    def jac(u):
        J = np.zeros((m + 2, m))
        J[:m + 1] = a * _omega_jacobian(u)
        return J

    def hess(u):
        H = np.zeros((m + 2, m, m))
        H[:m + 1] = a * _omega_hessian(u)
        return H

    def normal(u):
        return np.append(b * _omega(u), -a)

    def analytic(u):
        return GeometricSample(
            m=m, f=f0, grad_f=np.zeros(m), grad_f_norm2=0.0, laplacian_f=0.0,
            normA2=m * (1.0 - a2) / a2, A_grad_f=np.zeros(m),
            ric_eta_eta=float(m), ricci_eta_top=np.zeros(m), g=None)

    return ImmersionChart(sf=sf, m=m, domain=_sphere_domain(m), map=chart_map,
                          jacobian=jac, hessian=hess, reference_normal=normal,
                          analytic_geometry=analytic,
                          name=f"sphere-in-sphere(m={m}, a2={a2:g})")


def great_sphere(m=2):
    """The equatorial great sphere S^m(1) in S^(m+1): totally geodesic."""
    sf = SpaceForm(m + 1, 1.0)

    def chart_map(u):
        return np.append(_omega(u), 0.0)

    def jac(u):
        J = np.zeros((m + 2, m))
        J[:m + 1] = _omega_jacobian(u)
        return J

    def hess(u):
        H = np.zeros((m + 2, m, m))
        H[:m + 1] = _omega_hessian(u)
        return H

    def normal(u):
        out = np.zeros(m + 2)
        out[-1] = 1.0
        return out

    def analytic(u):
        return GeometricSample(
            m=m, f=0.0, grad_f=np.zeros(m), grad_f_norm2=0.0, laplacian_f=0.0,
            normA2=0.0, A_grad_f=np.zeros(m), ric_eta_eta=float(m),
            ricci_eta_top=np.zeros(m), g=None)

    return ImmersionChart(sf=sf, m=m, domain=_sphere_domain(m), map=chart_map,
                          jacobian=jac, hessian=hess, reference_normal=normal,
                          analytic_geometry=analytic,
                          name=f"great-sphere(m={m})")


def cone(r, u_range=(0.5, 2.0)):
    """The rotation cone X(u,v) = (r u cos v, r u sin v, u) in R^3.

    With the unit normal (-cos v, -sin v, r)/sqrt(1+r^2) the mean
    curvature is f = 1/(2 r u sqrt(1+r^2)); the only nonzero principal
    curvature sits on the circular direction, so A(grad f) = 0.
    """
    if r <= 0:
        raise DomainError(f"cone slope parameter must be positive, got {r}")
    sf = SpaceForm(3, 0.0)
    s2 = 1.0 + r * r
    s = math.sqrt(s2)
    f1 = 1.0 / (2.0 * r * s)

    def chart_map(w):
        u, v = w
        return np.array([r * u * math.cos(v), r * u * math.sin(v), u])

    def jac(w):
        u, v = w
        return np.array([[r * math.cos(v), -r * u * math.sin(v)],
                         [r * math.sin(v), r * u * math.cos(v)],
                         [1.0, 0.0]])

    def hess(w):
        u, v = w
        H = np.zeros((3, 2, 2))
        H[:, 0, 1] = H[:, 1, 0] = [-r * math.sin(v), r * math.cos(v), 0.0]
        H[:, 1, 1] = [-r * u * math.cos(v), -r * u * math.sin(v), 0.0]
        return H

    def normal(w):
        u, v = w
        return np.array([-math.cos(v), -math.sin(v), r]) / s

    def analytic(w):
        u = float(w[0])
        return GeometricSample(
            m=2, f=f1 / u,
            grad_f=np.array([-f1 / (u * u * s2), 0.0]),
            grad_f_norm2=f1 * f1 / (u ** 4 * s2),
            laplacian_f=f1 / (s2 * u ** 3),
            normA2=1.0 / (r * r * u * u * s2),
            A_grad_f=np.zeros(2), ric_eta_eta=0.0, ricci_eta_top=np.zeros(2),
            g=np.diag([s2, r * r * u * u]))

    return ImmersionChart(sf=sf, m=2,
                          domain=(tuple(u_range), (0.0, 2.0 * math.pi)),
                          map=chart_map, jacobian=jac, hessian=hess,
                          reference_normal=normal, analytic_geometry=analytic,
                          name=f"cone(r={r:g})")


def plane():
    """A flat coordinate patch in R^3; minimal with vanishing residuals."""
    sf = SpaceForm(3, 0.0)

    def chart_map(w):
        return np.array([w[0], w[1], 0.0])

    jac = lambda w: np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]])
    hess = lambda w: np.zeros((3, 2, 2))
    normal = lambda w: np.array([0.0, 0.0, 1.0])

    def analytic(w):
        return GeometricSample(
            m=2, f=0.0, grad_f=np.zeros(2), grad_f_norm2=0.0, laplacian_f=0.0,
            normA2=0.0, A_grad_f=np.zeros(2), ric_eta_eta=0.0,
            ricci_eta_top=np.zeros(2), g=np.eye(2))

    return ImmersionChart(sf=sf, m=2, domain=((0.0, 1.0), (0.0, 1.0)),
                          map=chart_map, jacobian=jac, hessian=hess,
                          reference_normal=normal, analytic_geometry=analytic,
                          name="plane")


def circle(rho=1.0, periods=1.0):
    """The unit-speed round circle of radius rho in R^3 (k = 1/rho, tau = 0)."""
    if rho <= 0:
        raise DomainError(f"radius must be positive, got {rho}")

    def gamma(t):
        return np.array([rho * math.cos(t / rho), rho * math.sin(t / rho), 0.0])

    return CurveChart(sf=SpaceForm(3, 0.0),
                      domain=(0.0, periods * 2.0 * math.pi * rho),
                      map=gamma, unit_speed=True, name=f"circle(rho={rho:g})")


# -- listing ----------------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    name: str
    kind: str          # "hypersurface" or "curve"
    parameters: tuple
    expectation: str


CATALOG = (
    CatalogEntry("sphere-in-sphere", "hypersurface", ("m", "a2"),
                 "proper exactly at p = 1/b^2 with b^2 = 1 - a2, for every q"),
    CatalogEntry("great-sphere", "hypersurface", ("m",),
                 "Minimal for every (p, q)"),
    CatalogEntry("cone", "hypersurface", ("r",),
                 "proper at p = 2(1 - 1/q), r = 1/sqrt(q(q-1)); needs q > 2"),
    CatalogEntry("plane", "hypersurface", (),
                 "Minimal for every (p, q)"),
    CatalogEntry("helix", "curve", ("alpha", "a", "b"),
                 "k = sqrt((a^2-1)(1-b^2)), tau = ab; proper at "
                 "p = (a^2+b^2-2a^2b^2)/((a^2-1)(1-b^2)) when admissible"),
    CatalogEntry("circle", "curve", ("rho",),
                 "k = 1/rho, tau = 0; no admissible p in flat space"),
)
