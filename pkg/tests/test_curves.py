import math

import numpy as np
import pytest

from pqharmonic import (CurveChart, PQParams, circle, curve_system_residual,
                        frenet, helix, p_closed_form, reparametrize_arclength)
from pqharmonic.curves import FrenetApparatus, _binormal, _principal_normal, _tangent
from pqharmonic.errors import DomainError, FrameUndefinedError, SingularFactorError
from pqharmonic.spaceform import SpaceForm

SQ7 = math.sqrt(7.0)


def test_circle_frenet():
    fr = frenet(circle(1.0), 2.0)
    assert fr.k == pytest.approx(1.0, abs=1e-8)
    assert fr.tau == pytest.approx(0.0, abs=1e-8)
    assert abs(fr.k_prime) < 1e-7 and abs(fr.tau_prime) < 1e-6


def test_circle_radius_scaling():
    fr = frenet(circle(2.5), 3.0)
    assert fr.k == pytest.approx(1 / 2.5, abs=1e-8)


def test_helix_frenet_closed_form():
    hr = helix(math.pi / 4, SQ7 / 2, 0.5)
    assert not hr.rescaled
    assert hr.k == pytest.approx(0.75)
    assert hr.tau == pytest.approx(SQ7 / 4)
    assert hr.p == pytest.approx(2.0)
    assert hr.admissible
    fr = frenet(hr.curve, 1.7)
    assert fr.k == pytest.approx(0.75, abs=1e-8)
    assert fr.tau == pytest.approx(SQ7 / 4, abs=1e-8)


def test_helix_rescaling():
    hr = helix(math.pi / 4, 2.0, 0.7)  # violates the unit-speed constraint
    assert hr.rescaled
    ca2, sa2 = 0.5, 0.5
    assert hr.a ** 2 * ca2 + hr.b ** 2 * sa2 == pytest.approx(1.0, abs=1e-12)


def test_helix_domain_errors():
    with pytest.raises(DomainError):
        helix(0.0, SQ7 / 2, 0.5)
    with pytest.raises(DomainError):
        helix(math.pi / 2, SQ7 / 2, 0.5)
    with pytest.raises(DomainError):
        helix(math.pi / 4, 0.5, 0.5)  # needs a > b
    with pytest.raises(DomainError):
        helix(math.pi / 4, 1.0, -0.2)


def test_great_circle_frame_undefined():
    sf = SpaceForm(3, 1.0)
    curve = CurveChart(sf=sf, domain=(0.0, 2 * math.pi), unit_speed=True,
                       map=lambda t: np.array([math.cos(t), math.sin(t), 0.0, 0.0]))
    with pytest.raises(FrameUndefinedError):
        frenet(curve, 1.0)


def test_frenet_equations_hold_on_helix():
    hr = helix(math.pi / 4, SQ7 / 2, 0.5)
    curve, sf = hr.curve, hr.curve.sf
    h = curve.frame_step()
    rng = np.random.default_rng(3)
    lo, hi = curve.domain
    for t in rng.uniform(lo + 0.1, hi - 0.1, 8):
        fr = frenet(curve, float(t))
        T_field = lambda s: _tangent(curve, s)
        N_field = lambda s: _principal_normal(curve, s)[0]
        B_field = lambda s: _binormal(sf, np.asarray(curve.map(s)), _tangent(curve, s),
                                      _principal_normal(curve, s)[0])
        dT = sf.covariant_derivative(curve.map, T_field, float(t), step=h)
        dN = sf.covariant_derivative(curve.map, N_field, float(t), step=h)
        dB = sf.covariant_derivative(curve.map, B_field, float(t), step=h)
        assert np.allclose(dT, fr.k * fr.N, atol=1e-6)
        assert np.allclose(dN, -fr.k * fr.T + fr.tau * fr.B, atol=1e-6)
        assert np.allclose(dB, -fr.tau * fr.N, atol=1e-6)


def test_reparametrize_identity_on_unit_speed():
    c = circle(1.0)
    assert reparametrize_arclength(c) is not c  # frozen replace, same map
    out = reparametrize_arclength(c)
    assert out.unit_speed
    for t in (0.5, 2.0):
        assert np.allclose(out.map(t), c.map(t), atol=1e-10)


def test_reparametrize_nonunit_circle():
    rho = 2.0
    sf = SpaceForm(3, 0.0)
    raw = CurveChart(sf=sf, domain=(0.0, 2 * math.pi),
                     map=lambda t: np.array([rho * math.cos(t), rho * math.sin(t), 0.0]))
    out = reparametrize_arclength(raw)
    assert out.unit_speed
    assert out.domain[1] == pytest.approx(2 * math.pi * rho, abs=1e-8)
    for s in (1.0, 4.0, 9.0):
        v = (out.map(s + 1e-4) - out.map(s - 1e-4)) / 2e-4
        assert np.linalg.norm(v) == pytest.approx(1.0, abs=1e-6)


def test_curve_system_constant_apparatus():
    dims = dict(k_prime=0.0, k_second=0.0, tau_prime=0.0,
                T=np.zeros(3), N=np.zeros(3), B=np.zeros(3))
    fr = FrenetApparatus(k=1.0, tau=0.0, **dims)
    assert curve_system_residual(fr, PQParams(2, 2.7), 1.0) == (0.0, 0.0, 0.0)
    r1, r2, r3 = curve_system_residual(fr, PQParams(2, 2), 0.0)
    assert (r1, r3) == (0.0, 0.0)
    assert r2 == pytest.approx(-1.0)


def test_curve_system_singular_k_guard():
    dims = dict(k_prime=0.0, k_second=0.0, tau_prime=0.0,
                T=np.zeros(3), N=np.zeros(3), B=np.zeros(3))
    fr = FrenetApparatus(k=1e-12, tau=0.0, **dims)
    with pytest.raises(SingularFactorError):
        curve_system_residual(fr, PQParams(2, 2.5), 1.0)


def test_helix_sys_residuals_vanish():
    hr = helix(math.pi / 4, SQ7 / 2, 0.5)
    params = PQParams(2, 2)
    for t in np.linspace(0.5, 5.5, 7):
        fr = frenet(hr.curve, float(t))
        r = curve_system_residual(fr, params, 1.0)
        assert max(abs(x) for x in r) < 1e-6


def test_p_closed_form():
    p, ok = p_closed_form(1.0, 0.0, 1.0)
    assert p == 2.0 and ok
    p, ok = p_closed_form(0.75, SQ7 / 4, 1.0)
    assert p == pytest.approx(2.0, abs=1e-12) and ok
    p, ok = p_closed_form(1.3, 0.7, 0.0)
    assert p < 1 and not ok
    with pytest.raises(ValueError):
        p_closed_form(0.0, 0.0, 1.0)


def test_theorem_parameter_is_unique_root():
    # constant-(k, tau) curves solve SYS exactly at p_closed_form and only there
    dims = dict(k_prime=0.0, k_second=0.0, tau_prime=0.0,
                T=np.zeros(3), N=np.zeros(3), B=np.zeros(3))
    fr = FrenetApparatus(k=0.6, tau=0.4, **dims)
    p_star, ok = p_closed_form(0.6, 0.4, 1.0)
    assert ok
    r = curve_system_residual(fr, PQParams(p_star, 2.3), 1.0)
    assert max(abs(x) for x in r) < 1e-10
    r_off = curve_system_residual(fr, PQParams(p_star + 0.01, 2.3), 1.0)
    assert abs(r_off[1]) > 1e-3
