"""
# Classical Algebra
# Unit Tests
"""

import math
import pytest
import numpy as np
from hypothesis import given, settings, strategies as st

# Import the PUT (package under test)
import qchybrid as qh


def phase_polys(n_c: int, max_degree: int = 2):
    """Hypothesis strategy for small integer-coefficient phase polynomials"""
    exps = st.tuples(*[st.integers(0, max_degree)] * (2 * n_c))
    coeffs = st.integers(-3, 3).map(float)
    return st.dictionaries(exps, coeffs, max_size=4).map(lambda t: qh.PhasePolynomial(n_c, t))


def test_polynomial_arithmetic():
    x, y = qh.Polynomial.variables(2)
    p = (x + 1) * (x - 1)
    assert p == x * x - 1
    assert p.degree() == 2
    assert (x**3).terms() == {(3, 0): 1.0}
    assert (p - p).is_zero
    assert (2 * y + 3).evaluate([0.0, 2.0]) == 7.0


def test_polynomial_mismatch():
    x = qh.Polynomial.variables(2)[0]
    z = qh.Polynomial.variables(3)[0]
    with pytest.raises(ValueError):
        x + z
    with pytest.raises(TypeError):
        x + "nope"
    with pytest.raises(ValueError):
        qh.Polynomial(0)


def test_derivative_and_compose():
    x, y = qh.Polynomial.variables(2)
    p = 3 * x**2 * y + y
    assert p.derivative(0) == 6 * x * y
    assert p.derivative(1) == 3 * x**2 + 1
    # Substitute (x, y) -> (y, x)
    assert p.compose([y, x]) == 3 * y**2 * x + x


def test_poisson_canonical_pairs():
    """{xᵢ, kⱼ} = δᵢⱼ"""
    n_c = 3
    xs, ks = qh.PhasePolynomial.xs(n_c), qh.PhasePolynomial.ks(n_c)
    for i in range(n_c):
        for j in range(n_c):
            expected = 1.0 if i == j else 0.0
            assert qh.poisson_bracket(xs[i], ks[j]).allclose(expected, atol=0.0)
            assert qh.poisson_bracket(xs[i], xs[j]).is_zero


def test_angular_momentum_algebra():
    """{L₁, L₂} = L₃"""
    L1, L2, L3 = qh.angular_momentum()
    assert qh.poisson_bracket(L1, L2).allclose(L3)
    assert qh.poisson_bracket(L2, L3).allclose(L1)


@settings(max_examples=30, deadline=None)
@given(phase_polys(1), phase_polys(1), phase_polys(1))
def test_poisson_jacobi(a, b, c):
    pb = qh.poisson_bracket
    total = pb(a, pb(b, c)) + pb(b, pb(c, a)) + pb(c, pb(a, b))
    assert total.norm() < 1e-9


@settings(max_examples=30, deadline=None)
@given(phase_polys(2), phase_polys(2))
def test_poisson_antisymmetry(a, b):
    assert (qh.poisson_bracket(a, b) + qh.poisson_bracket(b, a)).is_zero


def test_literals():
    p = qh.parse_literal("2.5 x1^2 k2 - x2 + 4", 2)
    x1, x2 = qh.PhasePolynomial.xs(2)
    k2 = qh.PhasePolynomial.ks(2)[1]
    assert p.allclose(2.5 * x1**2 * k2 - x2 + 4)
    assert qh.parse_literal(3, 1) == qh.PhasePolynomial.constant(1, 3.0)
    assert qh.parse_literal("1e-3 * k1", 1).allclose(qh.PhasePolynomial.ks(1)[0] * 1e-3)


@pytest.mark.parametrize("text", ["x4", "x1^-2", "x1 +", "y1", "x1^1.5"])
def test_bad_literals(text):
    with pytest.raises(ValueError):
        qh.parse_literal(text, 3)


def test_phase_point():
    p = qh.PhasePoint(x=(1.0, 0.0, 0.0), k=(0.0, 1.0, 0.0))
    assert p.n_c == 3
    assert np.allclose(p.to_array(), [1, 0, 0, 0, 1, 0])
    with pytest.raises(ValueError):
        qh.PhasePoint(x=(1.0, 0.0), k=(1.0,))
    with pytest.raises(ValueError):
        qh.PhasePoint(x=(math.inf,), k=(0.0,))


def test_halton_points():
    ps = qh.PointSet.halton(3, 40, max_x=2.0, max_k=2.0, l_window=(0.5, 3.0))
    assert len(ps) == 40
    assert np.all(np.linalg.norm(ps.x, axis=1) <= 2.0)
    lnorm = np.linalg.norm(ps.angular_momentum(), axis=1)
    assert np.all((lnorm >= 0.5) & (lnorm <= 3.0))
    # Deterministic
    again = qh.PointSet.halton(3, 40, max_x=2.0, max_k=2.0, l_window=(0.5, 3.0))
    assert np.array_equal(ps.array, again.array)
    with pytest.raises(ValueError):
        qh.PointSet.halton(1, 5, l_window=(0.0, 1.0))


def test_gaussian_integrals():
    center = qh.PhasePoint(x=(0.5,), k=(-1.0,))
    s = 0.4
    env = qh.GaussianField.envelope_only(center, s)
    # ∫ exp(-|v - v̄|²/2s²) over two dimensions = 2π s²
    assert math.isclose(env.integrate(), 2 * math.pi * s**2, rel_tol=1e-12)
    x, k = qh.PhasePolynomial.xs(1)[0], qh.PhasePolynomial.ks(1)[0]
    # First moments sit at the center
    assert math.isclose((env * x).integrate() / env.integrate(), 0.5, rel_tol=1e-12)
    assert math.isclose((env * k).integrate() / env.integrate(), -1.0, rel_tol=1e-12)
    # Second central moment is s²
    second = (env * ((x - 0.5) * (x - 0.5))).integrate() / env.integrate()
    assert math.isclose(second, s**2, rel_tol=1e-12)


def test_gaussian_derivative_matches_finite_difference():
    center = qh.PhasePoint(x=(0.2,), k=(0.1,))
    x, k = qh.PhasePolynomial.xs(1)[0], qh.PhasePolynomial.ks(1)[0]
    F = qh.GaussianField(x * k + 1, center, 0.5)
    p = np.array([[0.3, -0.4]])
    h = 1e-6
    fd = (F.evaluate(p + [[h, 0]]) - F.evaluate(p - [[h, 0]])) / (2 * h)
    assert np.allclose(F.derivative(0).evaluate(p), fd, atol=1e-7)


def test_poisson_bracket_state_integrates_to_zero():
    """∫ {A, F} = 0 for a polynomial A and a Gaussian-weighted F"""
    center = qh.PhasePoint(x=(1.0, 0.0), k=(0.0, 1.0))
    x1, x2 = qh.PhasePolynomial.xs(2)
    k1, k2 = qh.PhasePolynomial.ks(2)
    F = qh.GaussianField(x1 * k2 + 2, center, 0.4)
    A = x1**2 * k1 + x2 * k2**2
    assert abs(qh.poisson_bracket_state(A, F).integrate()) < 1e-12


def test_planewaves():
    r = qh.PlaneWave((0.3, -0.2), (0.5, 0.1))
    s = qh.PlaneWave((-0.4, 0.6), (0.2, -0.7))
    v = qh.planewave_pairing(r, s)
    bracket = qh.planewave_poisson(r, s)
    assert np.isclose(bracket.amplitude_of(r * s), v)
    # {e_r, e_s} at a point against the derivative rules evaluated numerically
    pts = np.array([[0.1, 0.2, -0.3, 0.4]])
    h = 1e-6
    def d(w, var):
        e = np.zeros(4)
        e[var] = h
        return (w.evaluate(pts + e) - w.evaluate(pts - e)) / (2 * h)
    numeric = sum(d(r, i) * d(s, 2 + i) - d(r, 2 + i) * d(s, i) for i in range(2))
    assert np.allclose(bracket.evaluate(pts), numeric, atol=1e-6)
