"""
# Spin-Orbit Closed Forms
# Unit Tests
"""

import pytest
import numpy as np

# Import the PUT (package under test)
import qchybrid as qh
from qchybrid.models import angular_momentum_values

HO = qh.HybridObservable

POINTS = np.array(
    [
        [1.0, 0.0, 0.0, 0.0, 1.0, 0.0],
        [0.8, 0.3, -0.2, 0.1, 1.1, 0.2],
        [1.2, -0.3, 0.1, -0.2, 0.7, -0.3],
        [0.5, 0.4, 0.3, 0.3, -0.6, 0.9],
    ]
)


def relative_error(got: np.ndarray, exact: np.ndarray) -> float:
    return np.abs(got - exact).max() / np.abs(exact).max()


@pytest.fixture
def basis():
    return qh.build_basis(2)


def test_heisenberg_closed_form_matches_series(basis):
    g, t = 1.0, 0.1
    H = qh.SpinOrbit(g=g).hamiltonian(basis)
    x, k = qh.PhasePolynomial.xs(3), qh.PhasePolynomial.ks(3)
    A0 = HO.classical(basis, x[0] + 2) + HO.generator(basis, 0, k[1]) + HO.generator(basis, 2, x[0] * k[2] * 0.5)
    exact = qh.spin_orbit_closed_form(A0, g, t, POINTS)
    series = qh.LieSeries(A0, H, 6).value(t).to_matrices(POINTS)
    assert relative_error(series, exact) < 1e-6


def test_heisenberg_closed_form_at_zero(basis):
    x, k = qh.PhasePolynomial.xs(3), qh.PhasePolynomial.ks(3)
    A0 = HO.classical(basis, x[1] * k[0]) + HO.generator(basis, 1, x[2])
    exact = qh.spin_orbit_closed_form(A0, 0.8, 0.0, POINTS)
    assert np.allclose(exact, A0.to_matrices(POINTS), atol=1e-12)


def test_schrodinger_closed_form_matches_series(basis):
    g, t = 1.0, 0.05
    H = qh.SpinOrbit(g=g).hamiltonian(basis)
    zero, one = qh.PhasePolynomial.zeros(3), qh.PhasePolynomial.constant(3, 1.0)
    x2 = qh.PhasePolynomial.xs(3)[1]
    rho0 = qh.DensityField.gaussian(basis, one, [x2 * 0.2, zero, one * 0.4])
    exact = qh.spin_orbit_schrodinger_closed_form(rho0, g, t, POINTS)
    series = qh.LieSeries(rho0, H, 6).value(t).to_matrices(POINTS)
    assert relative_error(series, exact) < 1e-5


@pytest.mark.slow
def test_closed_forms_match_order_14_series(basis):
    """Both pictures at 50 sampled points with |L| in [0.5, 3], |g t L| ≤ 0.45"""
    g, order = 1.0, 14
    H = qh.SpinOrbit(g=g).hamiltonian(basis)
    points = qh.PointSet.halton(3, 50, l_window=(0.5, 3.0))
    x, k = qh.PhasePolynomial.xs(3), qh.PhasePolynomial.ks(3)
    zero, one = qh.PhasePolynomial.zeros(3), qh.PhasePolynomial.constant(3, 1.0)
    A0 = HO.classical(basis, x[0] + 2) + HO.generator(basis, 0, k[1]) + HO.generator(basis, 2, x[0] * k[2] * 0.5)
    rho0 = qh.DensityField.gaussian(basis, one, [x[1] * 0.2, zero, one * 0.4])
    heisenberg = qh.LieSeries(A0, H, order)
    schrodinger = qh.LieSeries(rho0, H, order)
    for t in (0.05, 0.1, 0.15):
        exact = qh.spin_orbit_closed_form(A0, g, t, points)
        assert relative_error(heisenberg.value(t).to_matrices(points), exact) < 1e-6
        exact = qh.spin_orbit_schrodinger_closed_form(rho0, g, t, points)
        assert relative_error(schrodinger.value(t).to_matrices(points), exact) < 1e-6


def test_model_coupling(basis):
    x = qh.PhasePolynomial.xs(3)
    A0 = HO.generator(basis, 0, x[0])
    a = qh.spin_orbit_closed_form(A0, 0.6, 0.2, POINTS)
    b = qh.spin_orbit_closed_form(A0, qh.SpinOrbit(g=0.6), 0.2, POINTS)
    assert np.array_equal(a, b)
    with pytest.raises(ValueError):
        qh.spin_orbit_closed_form(A0, qh.SpinOrbit(g=0.6, mass=1.0), 0.2, POINTS)
    with pytest.raises(ValueError):
        qh.spin_orbit_closed_form(HO.zero(qh.build_basis(3), 3), 0.6, 0.2, POINTS)


def test_l_only_heisenberg(basis):
    """For A = L₁ the general and L-only forms agree"""
    g, t = 0.9, 0.7
    L = qh.angular_momentum()
    l1, l2, l3 = qh.Polynomial.variables(3)
    zero = l1.zero()
    general = qh.heisenberg_components(HO.classical(basis, L[0]), g, t, POINTS)
    only = qh.spin_orbit_closed_form_L_only(l1, [zero, zero, zero], g, t, angular_momentum_values(POINTS))
    assert np.allclose(general.scalar, only.scalar, atol=1e-12)
    assert np.allclose(general.vector, only.vector, atol=1e-12)


def test_l_only_schrodinger_keeps_spin_length(basis):
    """β(t) = Mβ(0) is a rotation, so |β| is kept"""
    l1, l2, l3 = qh.Polynomial.variables(3)
    beta = [l2, l1 * 0.5, l3 + 1]
    alpha = qh.Polynomial.constant(3, 1.0)
    Lv = angular_momentum_values(POINTS)
    rv = qh.spin_orbit_schrodinger_L_only(alpha, beta, 1.0, 0.8, Lv)
    beta0 = np.stack([p.evaluate(Lv) for p in beta], axis=1)
    assert np.allclose(np.linalg.norm(rv.vector, axis=1), np.linalg.norm(beta0, axis=1))
    at_zero = qh.spin_orbit_schrodinger_L_only(alpha, beta, 1.0, 0.0, Lv)
    assert np.allclose(at_zero.scalar, 1.0)
    assert np.allclose(at_zero.vector, beta0)
    with pytest.raises(ValueError):
        qh.spin_orbit_schrodinger_L_only(alpha, beta[:2], 1.0, 0.8, Lv)


def test_singular_points(basis):
    pts = np.vstack([POINTS, [[1.0, 0.0, 0.0, 2.0, 0.0, 0.0]]])
    with pytest.warns(qh.SingularPointWarning):
        kept, dropped = qh.split_singular(pts)
    assert dropped == 1
    assert len(kept) == len(POINTS)
    A0 = qh.spin(basis)[0]
    with pytest.raises(ValueError):
        qh.spin_orbit_closed_form(A0, 1.0, 0.1, pts)
