import math

import numpy as np
import pytest

from pqharmonic import (cone, first_fundamental, geometric_sample, great_sphere,
                        plane, sample_grid, shape_packet, sphere_in_sphere,
                        unit_normal)
from pqharmonic.errors import BoundaryProximityError, DegenerateImmersionError
from pqharmonic.immersion import ImmersionChart, flip_sample
from pqharmonic.spaceform import SpaceForm

U_SPHERE = np.array([1.1, 2.3])
U_CONE = np.array([1.3, 2.0])


def test_sphere_first_fundamental():
    ch = sphere_in_sphere(2, 0.5)
    ff = first_fundamental(ch, U_SPHERE)
    a2 = 0.5
    # round metric of radius a: diag(a^2, a^2 sin^2 theta)
    expected = np.diag([a2, a2 * math.sin(U_SPHERE[0]) ** 2])
    assert np.allclose(ff.g, expected, atol=1e-12)
    assert ff.det_g == pytest.approx(np.linalg.det(expected), abs=1e-12)


def test_unit_normal_is_unit_and_orthogonal():
    ch = sphere_in_sphere(2, 0.5)
    eta = unit_normal(ch, U_SPHERE)
    sf = ch.sf
    P = ch.map(U_SPHERE)
    J = ch.jacobian(U_SPHERE)
    assert sf.pair(eta, eta) == pytest.approx(1.0, abs=1e-12)
    assert abs(sf.pair(eta, P)) < 1e-12
    for a in range(2):
        assert abs(sf.pair(eta, J[:, a])) < 1e-12


def test_sphere_shape_packet_umbilic():
    ch = sphere_in_sphere(2, 0.5)
    pk = shape_packet(ch, U_SPHERE)
    # S^2(a) in S^3 with a = b: totally umbilic with f = -b/a = -1
    assert pk.f == pytest.approx(-1.0, abs=1e-12)
    assert pk.normA2 == pytest.approx(2.0, abs=1e-12)
    assert np.allclose(pk.A, -np.eye(2), atol=1e-12)


def test_cone_stencil_matches_analytic():
    ch = cone(1.0 / math.sqrt(6.0))
    sa = geometric_sample(ch, U_CONE)
    ss = geometric_sample(ch, U_CONE, use_analytic=False)
    assert ss.f == pytest.approx(sa.f, abs=1e-10)
    assert ss.normA2 == pytest.approx(sa.normA2, abs=1e-10)
    assert ss.grad_f_norm2 == pytest.approx(sa.grad_f_norm2, abs=1e-7)
    assert ss.laplacian_f == pytest.approx(sa.laplacian_f, abs=1e-5)
    assert np.allclose(ss.A_grad_f, sa.A_grad_f, atol=1e-7)


def test_cone_closed_forms_at_reference_point():
    # r = 1/sqrt(6), u = 1: f = 3/sqrt(7), lap f = 18/(7 sqrt 7),
    # |grad f|^2 = 54/49, |A|^2 = 36/7
    ch = cone(1.0 / math.sqrt(6.0))
    s = geometric_sample(ch, np.array([1.0, 1.0]))
    assert s.f == pytest.approx(3 / math.sqrt(7), abs=1e-14)
    assert s.laplacian_f == pytest.approx(18 / (7 * math.sqrt(7)), abs=1e-14)
    assert s.grad_f_norm2 == pytest.approx(54 / 49, abs=1e-14)
    assert s.normA2 == pytest.approx(36 / 7, abs=1e-14)
    assert np.allclose(s.A_grad_f, 0.0)


def test_sphere_stencil_matches_analytic():
    ch = sphere_in_sphere(2, 0.7)
    sa = geometric_sample(ch, U_SPHERE)
    ss = geometric_sample(ch, U_SPHERE, use_analytic=False)
    assert ss.f == pytest.approx(sa.f, abs=1e-10)
    assert ss.grad_f_norm2 == pytest.approx(0.0, abs=1e-10)
    assert ss.laplacian_f == pytest.approx(0.0, abs=1e-6)


def test_flipped_chart_negates_f():
    ch = cone(0.5)
    s = geometric_sample(ch, U_CONE)
    sflip = geometric_sample(ch.flipped(), U_CONE)
    assert sflip.f == pytest.approx(-s.f, abs=1e-14)
    assert np.allclose(sflip.grad_f, -s.grad_f)
    assert sflip.normA2 == pytest.approx(s.normA2)


def test_flip_sample_parity():
    s = geometric_sample(cone(0.5), U_CONE)
    t = flip_sample(s)
    assert t.f == -s.f and t.laplacian_f == -s.laplacian_f
    assert np.allclose(t.A_grad_f, s.A_grad_f)
    assert t.grad_f_norm2 == s.grad_f_norm2


def test_degenerate_immersion_raises():
    sf = SpaceForm(3, 0.0)
    ch = ImmersionChart(sf=sf, m=2, domain=((0.0, 1.0), (0.0, 1.0)),
                        map=lambda u: np.array([u[0], u[0], 0.0]),
                        name="collapsed")
    with pytest.raises(DegenerateImmersionError):
        first_fundamental(ch, np.array([0.5, 0.5]))


def test_boundary_proximity_guard():
    ch = cone(0.5)
    with pytest.raises(BoundaryProximityError):
        geometric_sample(ch, np.array([0.5, 1.0]), use_analytic=False)


def test_sample_grid_respects_margins():
    ch = cone(0.5)
    pts = sample_grid(ch, 6)
    assert pts.shape == (36, 2)
    for u in pts:
        assert 0.5 < u[0] < 2.0
        assert 0.0 < u[1] < 2 * math.pi


def test_plane_and_great_sphere_are_minimal_geometry():
    s = geometric_sample(plane(), np.array([0.5, 0.5]), use_analytic=False)
    assert abs(s.f) < 1e-12 and s.normA2 < 1e-12
    g = geometric_sample(great_sphere(2), U_SPHERE, use_analytic=False)
    assert abs(g.f) < 1e-11 and g.normA2 < 1e-10


def test_higher_dimensional_sphere():
    # m = 3 small sphere in S^4, FD fallback only for f
    ch = sphere_in_sphere(3, 0.4)
    u = np.array([1.0, 1.4, 2.0])
    pk = shape_packet(ch, u)
    b_over_a = math.sqrt(0.6) / math.sqrt(0.4)
    assert pk.f == pytest.approx(-b_over_a, abs=1e-11)
    assert pk.normA2 == pytest.approx(3 * 0.6 / 0.4, abs=1e-10)
