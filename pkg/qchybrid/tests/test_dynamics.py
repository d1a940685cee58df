"""
# Dynamics
# Unit Tests
"""

import pytest
import numpy as np

# Import the PUT (package under test)
import qchybrid as qh
from qchybrid.instances import random_observable, random_state

HO = qh.HybridObservable


@pytest.fixture
def spin_basis():
    return qh.build_basis(2)


def test_series_at_zero(spin_basis):
    H = qh.SpinOrbit(g=1.0).hamiltonian(spin_basis)
    A = qh.observables(spin_basis)["S1"] + qh.observables(spin_basis)["x1"]
    series = qh.LieSeries(A, H, 3)
    assert series.picture == qh.Picture.HEISENBERG
    assert series.initial is A
    assert series.value(0.0).allclose(A, atol=0.0)
    assert series.remainder(0.0) == 0.0


def test_series_argument_errors(spin_basis):
    H = qh.SpinOrbit(g=1.0).hamiltonian(spin_basis)
    S1 = qh.observables(spin_basis)["S1"]
    with pytest.raises(ValueError):
        qh.LieSeries(S1, H, 0)
    with pytest.raises(TypeError):
        qh.LieSeries(S1, H, 2, qh.Picture.SCHRODINGER)
    with pytest.raises(TypeError):
        qh.lie_series_schrodinger(S1, H, 0.1, 2)


def test_first_order_spin(spin_basis):
    """dSᵢ/dt = (Sᵢ, gL·S) = g (L × S)ᵢ"""
    g = 0.5
    H = qh.SpinOrbit(g=g).hamiltonian(spin_basis)
    L = qh.angular_momentum()
    series = qh.LieSeries(qh.spin(spin_basis)[0], H, 1)
    expected = qh.spin_dot(spin_basis, [L[0].zero(), -L[2] * g, L[1] * g])
    assert series.terms[1].allclose(expected, atol=1e-12)
    t = 0.3
    assert series.value(t).allclose(series.terms[0] + expected * t, atol=1e-12)


def test_terminating_series(spin_basis):
    """A free particle moves in a straight line: x(t) = x + t k/m"""
    mass = 2.0
    H = qh.SpinOrbit(g=0.0, mass=mass).hamiltonian(spin_basis)
    obs = qh.observables(spin_basis)
    series = qh.LieSeries(obs["x1"], H, 2)
    assert series.terminates
    assert series.value(1.5).allclose(obs["x1"] + obs["k1"] * (1.5 / mass), atol=1e-12)


def test_steps_and_truncation_warning(spin_basis):
    H = qh.SpinOrbit(g=1.0).hamiltonian(spin_basis)
    S1 = qh.spin(spin_basis)[0]
    single = qh.lie_series_heisenberg(S1, H, 0.1, 6)
    stepped = qh.lie_series_heisenberg(S1, H, 0.1, 4, steps=2)
    assert stepped.steps == 2
    pts = np.array([[1.0, 0.0, 0.0, 0.0, 1.0, 0.0], [0.3, -0.5, 0.2, 0.4, 0.1, -0.6]])
    assert np.allclose(single.value.to_matrices(pts), stepped.value.to_matrices(pts), atol=1e-7)
    with pytest.warns(qh.TruncationWarning):
        qh.lie_series_heisenberg(S1, H, 5.0, 1)
    with pytest.raises(ValueError):
        qh.propagate(S1, H, 0.1, 2, steps=0)


def test_expectation_of_identity():
    basis = qh.build_basis(3)
    rho = random_state(np.random.default_rng(0), basis, 2, 2)
    assert qh.expectation(HO.identity(basis, 2), rho) == pytest.approx(1.0, abs=1e-12)


def test_schrodinger_series_keeps_normalization():
    basis = qh.build_basis(2)
    rng = np.random.default_rng(1)
    H = random_observable(rng, basis, 1, 2)
    rho = random_state(rng, basis, 1, 1)
    evolved = qh.lie_series_schrodinger(rho, H, 0.05, 4).value
    assert isinstance(evolved, qh.DensityField)
    assert evolved.is_normalized


@pytest.mark.parametrize("n", [2, 3])
def test_picture_duality(n):
    """⟨A(t)⟩_ρ₀ = ⟨A⟩_ρ(t) term by term, so also for truncated series"""
    basis = qh.build_basis(n)
    rng = np.random.default_rng(60 + n)
    H = random_observable(rng, basis, 1, 2)
    A = random_observable(rng, basis, 1, 2)
    rho = random_state(rng, basis, 1, 1)
    order, t = 3, 0.05
    heisenberg = qh.expectation(qh.LieSeries(A, H, order).value(t), rho)
    schrodinger = qh.expectation(A, qh.LieSeries(rho, H, order).value(t))
    assert heisenberg == pytest.approx(schrodinger, abs=1e-9)


def test_spin_orbit_conservation(spin_basis):
    model = qh.SpinOrbit(g=1.0)
    H = model.hamiltonian(spin_basis)
    obs = model.observables(spin_basis)
    zero, one = qh.PhasePolynomial.zeros(3), qh.PhasePolynomial.constant(3, 1.0)
    x2 = qh.PhasePolynomial.xs(3)[1]
    rho = qh.DensityField.gaussian(spin_basis, one, [x2 * 0.2, zero, one * 0.4])
    quantities = {name: obs[name] for name in ("J1", "J2", "J3", "Lsq", "LS", "ksq")}
    report = qh.conservation_report(H, quantities, rho, [0.0, 0.1, 0.2], order=4)
    assert report.order == 4
    assert report.times == [0.0, 0.1, 0.2]
    assert all(report.conserved(1e-8).values())
    for name, values in report.values.items():
        assert len(values) == 3


@pytest.mark.slow
def test_conservation_over_twenty_steps(spin_basis):
    """J, |L|², L·S and |k|² hold over t ∈ [0, 1] while L₁ precesses"""
    model = qh.SpinOrbit(g=1.0)
    H = model.hamiltonian(spin_basis)
    obs = model.observables(spin_basis)
    zero, one = qh.PhasePolynomial.zeros(3), qh.PhasePolynomial.constant(3, 1.0)
    rho = qh.DensityField.gaussian(spin_basis, one, [zero, one * 0.3, one * 0.4])
    conserved = ("J1", "J2", "J3", "Lsq", "LS", "ksq")
    quantities = {name: obs[name] for name in conserved + ("L1",)}
    report = qh.conservation_report(H, quantities, rho, np.linspace(0.0, 1.0, 21), order=8)
    assert len(report.times) == 21
    for name in conserved:
        assert report.drift[name] < 1e-8
    assert report.drift["L1"] > 1e-4


def test_evolve_on_grid(spin_basis):
    H = qh.SpinOrbit(g=1.0).hamiltonian(spin_basis)
    S1 = qh.spin(spin_basis)[0]
    times = [0.0, 0.05, 0.1]
    results = qh.evolve_on_grid(S1, H, times, 6)
    assert [r.t for r in results] == times
    assert results[0].value is S1
    assert results[0].remainder == 0.0
    first = qh.lie_series_heisenberg(S1, H, 0.05, 6)
    second = qh.lie_series_heisenberg(first.value, H, 0.05, 6)
    assert results[2].value.allclose(second.value, atol=1e-12)
    assert results[2].remainder == pytest.approx(first.remainder + second.remainder)
    with pytest.raises(ValueError):
        qh.evolve_on_grid(S1, H, [0.1, 0.05], 2)
    with pytest.warns(qh.TruncationWarning):
        qh.evolve_on_grid(S1, H, [0.0, 5.0], 1)


def test_conservation_report_restarts(spin_basis):
    """The report's truncation is the sum of the per-interval remainder estimates"""
    H = qh.SpinOrbit(g=1.0).hamiltonian(spin_basis)
    zero, one = qh.PhasePolynomial.zeros(3), qh.PhasePolynomial.constant(3, 1.0)
    rho = qh.DensityField.gaussian(spin_basis, one, [zero, zero, one * 0.4])
    Lsq = qh.observables(spin_basis)["Lsq"]
    report = qh.conservation_report(H, {"Lsq": Lsq}, rho, [0.0, 0.1, 0.2], order=4)
    first = qh.lie_series_schrodinger(rho, H, 0.1, 4)
    second = qh.lie_series_schrodinger(first.value, H, 0.1, 4)
    assert report.truncation == pytest.approx(first.remainder + second.remainder)
    assert report.values["Lsq"][-1] == pytest.approx(qh.expectation(Lsq, second.value), abs=1e-12)


def test_bracket_preserved_by_evolution(spin_basis):
    """(A(t), B(t)) = (A, B)(t) for L-only observables under g L·S"""
    H = qh.SpinOrbit(g=1.0).hamiltonian(spin_basis)
    L = qh.angular_momentum()
    zero = L[0].zero()
    A = qh.spin_dot(spin_basis, [L[0], zero, zero + 1.0]) + HO.classical(spin_basis, L[1])
    B = qh.spin_dot(spin_basis, [zero, L[2], zero]) + HO.classical(spin_basis, L[0] * L[0])
    t, order = 0.1, 14
    evolved = lambda X: qh.LieSeries(X, H, order).value(t)
    points = qh.PointSet.halton(3, 20, l_window=(0.5, 3.0))
    lhs = qh.heisenberg_bracket(evolved(A), evolved(B)).to_matrices(points)
    rhs = evolved(qh.heisenberg_bracket(A, B)).to_matrices(points)
    scale = max(1.0, float(np.abs(rhs).max()))
    assert np.abs(lhs - rhs).max() < 1e-7 * scale


def test_evolution_report_validation():
    with pytest.raises(ValueError):
        qh.EvolutionReport(times=[0.0, 0.0], values={}, drift={}, truncation=0.0, order=1)


def test_rotation_field():
    L = np.array([[0.0, 0.0, 2.0], [0.3, -1.2, 0.5]])
    field = qh.RotationField(g=0.7, t=0.4)
    R = field.from_momenta(L)
    for m, l in zip(R, L):
        assert np.allclose(m @ m.T, np.eye(3))
        assert np.linalg.det(m) == pytest.approx(1.0)
        # Rotations are about L
        assert np.allclose(m @ l, l)
    # About z by angle −g t |L| = −0.56
    c, s = np.cos(0.56), np.sin(0.56)
    assert np.allclose(R[0], [[c, s, 0], [-s, c, 0], [0, 0, 1]])
    later = qh.RotationField(g=0.7, t=0.1)
    product = np.einsum("mij,mjk->mik", R, later.from_momenta(L))
    R_sum = qh.RotationField(g=0.7, t=0.5).from_momenta(L)
    assert np.abs(product - R_sum).max() < 1e-12
    assert np.abs(field.compose(later).from_momenta(L) - R_sum).max() < 1e-12
    with pytest.raises(ValueError):
        field.compose(qh.RotationField(g=1.0, t=0.1))
