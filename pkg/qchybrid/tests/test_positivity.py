"""
# Positivity
# Unit Tests
"""

import pytest
import numpy as np

# Import the PUT (package under test)
import qchybrid as qh

HO = qh.HybridObservable


@pytest.fixture
def pauli():
    """n = 2 with ħ = 2, so that qᵢ = σᵢ"""
    return qh.build_basis(2, 2.0)


def test_local_spectrum(pauli):
    one = qh.PhasePolynomial.constant(1, 1.0)
    x1 = qh.PhasePolynomial.xs(1)[0]
    origin = qh.PhasePoint(x=(0.0,), k=(0.0,))

    A = HO.classical(pauli, one * 2.0) + HO.generator(pauli, 2, one)
    assert np.allclose(qh.local_spectrum(A, origin), [1.0, 3.0])
    assert np.allclose(qh.local_spectrum(HO.identity(pauli, 1), origin), [1.0, 1.0])
    B = HO.generator(pauli, 0, x1)
    assert np.allclose(qh.local_spectrum(B, qh.PhasePoint(x=(3.0,), k=(0.0,))), [-3.0, 3.0])
    with pytest.raises(ValueError):
        qh.local_spectrum(B * 1j, origin)


def test_positivity_margin(pauli):
    one = qh.PhasePolynomial.constant(1, 1.0)
    points = qh.PointSet.halton(1, 8)
    scan = qh.positivity_margin(HO.generator(pauli, 2, one), points)
    assert scan.global_margin == pytest.approx(-1.0)
    assert not scan.positive
    x1 = qh.PhasePolynomial.xs(1)[0]
    scan = qh.positivity_margin(HO.classical(pauli, x1 * x1 + 0.5), points)
    assert scan.positive
    assert scan.global_margin == pytest.approx(scan.margins.min())
    assert scan.witness == points[scan.witness_index]


def test_density_margin_strips_envelope():
    basis = qh.build_basis(2)
    one = qh.PhasePolynomial.constant(3, 1.0)
    zero = qh.PhasePolynomial.zeros(3)
    rho = qh.DensityField.gaussian(basis, one, [zero, zero, one])
    scan = qh.positivity_margin(rho, qh.PointSet.halton(3, 16))
    # Polynomial part c(1 + S_z) with c = 1/∫ tr(envelope), margin c/2 at every point
    c = rho.rho0.poly.constant_term
    assert np.allclose(scan.margins, 0.5 * c)


def test_heisenberg_counterexample():
    case = qh.heisenberg_counterexample()
    assert case.expect_violation
    coarse = case.scan(resolution=200)
    assert coarse.violated
    assert 0 < coarse.t_star <= case.t_max
    assert coarse.margin_curve[0][0] == 0.0
    assert coarse.margin_curve[-1][1] < 0


@pytest.mark.slow
def test_heisenberg_counterexample_refines():
    """A finer grid refines the same crossing or finds an earlier one"""
    case = qh.heisenberg_counterexample()
    coarse = case.scan(resolution=200)
    fine = case.scan(resolution=400)
    assert fine.violated
    assert fine.t_star <= coarse.t_star + coarse.tol


def test_schrodinger_counterexample():
    case = qh.schrodinger_counterexample(count=16)
    report = case.scan(tol=1e-4)
    assert report.violated
    assert 0 < report.t_star < 1.0
    assert report.witness is not None


@pytest.mark.parametrize("make", [qh.quantal_control, qh.classical_control])
def test_controls_stay_positive(make):
    case = make(count=16)
    assert not case.expect_violation
    report = case.scan(resolution=10)
    assert not report.violated
    assert report.t_star is None
    assert len(report.margin_curve) == 11
    assert min(m for _, m in report.margin_curve) >= 0
    assert qh.violation_time(case.initial, case.hamiltonian, case.points, case.t_max, resolution=10) is None


def test_closed_form_scan_far_points():
    """Points whose envelope underflows still get finite margins"""
    basis = qh.build_basis(2)
    zero, one = qh.PhasePolynomial.zeros(3), qh.PhasePolynomial.constant(3, 1.0)
    rho = qh.DensityField.gaussian(basis, one, [zero, zero, one * 0.4])
    far = [40.0, 0.0, 0.0, 0.0, 1.0, 40.0]
    assert rho.envelope(np.array([far]))[0] == 0.0
    points = np.array([[1.0, 0.0, 0.0, 0.0, 1.0, 0.0], far])
    report = qh.violation_scan(rho, qh.SpinOrbit(g=1.0), points, 0.5, resolution=4)
    assert len(report.margin_curve) == 5
    assert all(np.isfinite(m) for _, m in report.margin_curve)


def test_violation_scan_errors():
    basis = qh.build_basis(2)
    x1, k1 = qh.PhasePolynomial.xs(1)[0], qh.PhasePolynomial.ks(1)[0]
    H = HO.classical(basis, k1 * k1)
    points = qh.PointSet.halton(1, 8)
    with pytest.raises(ValueError):
        qh.violation_scan(HO.classical(basis, x1 - 5.0), H, points, 1.0)
    with pytest.raises(ValueError):
        qh.violation_scan(HO.classical(basis, x1 + 5.0), H, points, 0.0)
    with pytest.raises(TypeError):
        qh.violation_scan(HO.classical(basis, x1 + 5.0), "H", points, 1.0)


def test_l_only_search_is_seeded():
    a = qh.l_only_violation_search(seed=1, trials=2, points=16, resolution=10)
    b = qh.l_only_violation_search(seed=1, trials=2, points=16, resolution=10)
    assert a == b
    assert a.trials == 2
    assert a.found == (a.best_margin < 0)
    assert 0 <= a.trial < 2
