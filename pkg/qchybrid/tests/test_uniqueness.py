"""
# Uniqueness Checks
# Unit Tests
"""

import pytest
import numpy as np

# Import the PUT (package under test)
import qchybrid as qh


def test_tensors_n2():
    report = qh.tensor_basis_check(2)
    assert report.d_max == 0.0
    assert report.rank == 3
    assert report.identity_residual is None
    assert report.gram.shape == (9, 9)


def test_tensors_n3_identity():
    report = qh.tensor_basis_check(3)
    assert report.d_max > 0.1
    assert report.identity_residual < 1e-12


def test_tensors_n4_rank():
    assert qh.tensor_basis_check(4).rank == 9


def test_tensor_dimension_errors():
    with pytest.raises(ValueError):
        qh.tensor_basis_check(5)
    with pytest.raises(ValueError):
        qh.ansatz_jacobi_scan(5, grid=[(0.0, 1.0, 0.0)])


def test_default_grid():
    grid = qh.default_grid()
    assert len(grid) == 9**3
    assert (0.0, 1.0, 0.0) in grid


def test_landscape_n3():
    grid = [(0.0, 1.0, 0.0), (0.5, 1.0, 0.0), (0.0, 1.0, 0.5), (-1.0, 1.0, 1.0)]
    landscape = qh.ansatz_jacobi_scan(3, grid, instances=1, seed=2)
    assert len(landscape.rows) == len(grid)
    scale = landscape.scale
    assert landscape.at(0.0, 1.0, 0.0).residual < 1e-10 * scale**3
    for node in grid[1:]:
        assert landscape.at(*node).residual > 1e-3
    assert landscape.minimum().node == (0.0, 1.0, 0.0)
    assert set(landscape.at(0.0, 1.0, 0.0).cases) == set(qh.CASES)
    with pytest.raises(KeyError):
        landscape.at(2.0, 2.0, 2.0)


def test_landscape_n2_witness_family():
    """α = 1 breaks the Jacobi identity, γ is inert for n = 2 where d vanishes"""
    landscape = qh.ansatz_jacobi_scan(2, [(1.0, 1.0, 0.0), (0.0, 1.0, 1.5)], instances=1, seed=0)
    # The canonical node is always added
    assert len(landscape.rows) == 3
    assert landscape.at(1.0, 1.0, 0.0).residual > 1e-3
    assert landscape.at(0.0, 1.0, 1.5).residual < 1e-10 * landscape.scale**3


def test_landscape_is_seeded():
    grid = [(0.0, 1.0, 0.0), (1.0, 1.0, 0.0)]
    a = qh.ansatz_jacobi_scan(2, grid, instances=1, seed=4)
    b = qh.ansatz_jacobi_scan(2, grid, instances=1, seed=4)
    assert [r.residual for r in a.rows] == [r.residual for r in b.rows]


def test_functional_equation():
    samples = qh.functional_samples(seed=0, count=64)
    assert samples.shape == (64, 3)
    assert qh.functional_equation_residual(lambda v: 2 * v + 3, samples) < 1e-12
    assert qh.functional_equation_residual(lambda v: v, samples) < 1e-12
    assert qh.functional_equation_residual(lambda v: v**2, samples) > 1
    with pytest.raises(ValueError):
        qh.functional_equation_residual(lambda v: v, np.zeros((4, 2)))


def test_planewave_pairing_examples():
    r = qh.PlaneWave((1, 0, 0), (0, 0, 0))
    s = qh.PlaneWave((0, 0, 0), (1, 0, 0))
    assert qh.planewave_pairing(r, s) == -1.0
    assert qh.planewave_pairing(r, r) == 0.0
    r = qh.PlaneWave((1, 2, 0), (0, 0, 3))
    s = qh.PlaneWave((0, 1, 1), (2, 0, 0))
    assert qh.planewave_pairing(r, s) == 1.0


def test_planewave_coefficients():
    r = qh.PlaneWave((0.3, -0.2), (0.5, 0.1))
    s = qh.PlaneWave((-0.4, 0.6), (0.2, -0.7))
    v = qh.planewave_pairing(r, s)
    assert qh.planewave_coefficient(qh.planewave_poisson, r, s) == pytest.approx(v)
    assert qh.planewave_coefficient(qh.planewave_product, r, s) == pytest.approx(1.0)
    both = qh.auxiliary_candidate(1.0, 1.0)
    assert qh.planewave_coefficient(both, r, s) == pytest.approx(v + 1.0)

    stray = lambda a, b: qh.planewave_product(a, b) + qh.PlaneWave(a.xr, a.kr)
    with pytest.raises(qh.PostulateViolation):
        qh.planewave_coefficient(stray, r, s)


def test_planewave_derivation():
    r = qh.PlaneWave((0.3, -0.2), (0.5, 0.1))
    s = qh.PlaneWave((-0.4, 0.6), (0.2, -0.7))
    t = qh.PlaneWave((0.9, 0.1), (-0.3, 0.4))
    affine = qh.coefficient_function(qh.auxiliary_candidate(0.7, -0.3))
    assert qh.planewave_derivation_residual(affine, r, s, t) < 1e-12
    square = lambda a, b: qh.planewave_pairing(a, b) ** 2
    assert qh.planewave_derivation_residual(square, r, s, t) > 1e-6


def test_reduction_wave():
    r = qh.PlaneWave((0.3, -0.2), (0.5, 0.1))
    s = qh.PlaneWave((-0.4, 0.6), (0.2, -0.7))
    t = qh.reduction_wave(r, s)
    assert abs(qh.planewave_pairing(s, t)) < 1e-12
    assert np.allclose((r * t).kr, 0.0)
    with pytest.raises(ValueError):
        qh.reduction_wave(r, qh.PlaneWave((1.0, 0.0), (0.0, 0.0)))


@pytest.mark.parametrize("n", [2, 3])
def test_channel_symmetries(n):
    report = qh.channel_symmetry_check(qh.build_basis(n), seed=1, instances=4)
    assert report.delta < 1e-12
    assert report.f < 1e-12
    assert report.d < 1e-12


def test_unit_endpoint():
    basis = qh.build_basis(3)
    assert qh.unit_endpoint_residual(basis) < 1e-12
    assert qh.unit_endpoint_residual(basis, 0.5, 1.0, 0.3) < 1e-12
    assert qh.unit_endpoint_residual(basis, 0.0, 0.5, 0.0) > 1e-3


@pytest.mark.slow
def test_landscape_n4_default_grid():
    """Only the canonical node closes the Jacobi identity for su(4)"""
    grid = qh.default_grid()
    landscape = qh.ansatz_jacobi_scan(4, grid, instances=1, seed=0)
    assert len(landscape.rows) == len(grid)
    scale = landscape.scale
    assert landscape.at(0.0, 1.0, 0.0).residual < 1e-10 * scale**3
    for alpha, beta, gamma in grid:
        if abs(alpha) + abs(gamma) >= 0.1:
            assert landscape.at(alpha, beta, gamma).residual > 1e-3
