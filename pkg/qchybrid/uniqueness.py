"""
# Uniqueness Checks

Numerical evidence that the canonical bracket is the only admissible member of its family:

* The (α, β, γ) ansatz residual landscape over a grid
* Invariant rank-4 tensors of su(n), per dimension
* The affine functional equation, and plane-wave coefficient extraction

The landscape is evaluated exactly from one set of nested brackets per instance.
The ansatz bracket is bilinear in the weights w = (1, α, β, γ) of its four channels, so

    Σ_cyc (A, (B, C)) = Σ_{c₁c₂} w_{c₁} w_{c₂} Σ_cyc ch_{c₁}(A, ch_{c₂}(B, C))

and every grid node is a weighted sum of the same sixteen observables.
"""

# Std-Lib Imports
import itertools
from typing import Callable, Dict, List, Optional, Sequence, Tuple

# PyPi Imports
import numpy as np

# Local Imports
from .datatype import datatype
from .su import SuBasis, build_basis
from .classical import PhasePolynomial, PlaneWave, PlaneWaveSum, planewave_pairing, planewave_poisson, planewave_product
from .hybrid import HybridObservable, ansatz_bracket, bracket_channels, residual_scale
from .instances import random_classical, random_generator_term, random_observable, random_polynomial

CHANNELS = ("postulate", "delta", "f", "d")

# Instance families of the landscape
CASES = ("nq2", "nq3", "dense")


@datatype
class AnsatzResidual:
    """# Ansatz Residual
    Jacobi residual of the ansatz bracket at one (α, β, γ), overall and per instance family"""

    alpha: float
    beta: float
    gamma: float
    residual: float
    cases: Dict[str, float]

    def __post_init_post_parse__(self):
        if self.residual < 0:
            raise ValueError(f"Invalid negative residual {self.residual}")

    @property
    def node(self) -> Tuple[float, float, float]:
        return (self.alpha, self.beta, self.gamma)


@datatype
class AnsatzLandscape:
    """# Ansatz Residual Landscape
    `scale` is the largest input coefficient magnitude over all instances."""

    n: int
    rows: List[AnsatzResidual]
    scale: float
    instances: int
    seed: int

    def at(self, alpha: float, beta: float, gamma: float) -> AnsatzResidual:
        for row in self.rows:
            if np.allclose(row.node, (alpha, beta, gamma), rtol=0, atol=1e-12):
                return row
        raise KeyError(f"No landscape node at ({alpha}, {beta}, {gamma})")

    def minimum(self) -> AnsatzResidual:
        """Smallest residual. Ties go to the node nearest the canonical (0, 1, 0)."""
        dist = lambda r: float(np.linalg.norm(np.subtract(r.node, (0.0, 1.0, 0.0))))
        return min(self.rows, key=lambda r: (r.residual, dist(r)))


def default_grid() -> List[Tuple[float, float, float]]:
    """9×9×9 nodes over [−2, 2]³, which include (0, 1, 0)"""
    axis = np.linspace(-2.0, 2.0, 9)
    return [tuple(float(v) for v in node) for node in itertools.product(axis, axis, axis)]


def _nested_channels(A: HybridObservable, B: HybridObservable, C: HybridObservable) -> List[List[HybridObservable]]:
    """J[c₁][c₂] = Σ_cyc ch_{c₁}(A, ch_{c₂}(B, C))"""
    zero = HybridObservable.zero(A.basis, A.n_c)
    J = [[zero] * 4 for _ in range(4)]
    for X, Y, Z in ((A, B, C), (B, C, A), (C, A, B)):
        inner = bracket_channels(Y, Z)
        for c2, name2 in enumerate(CHANNELS):
            outer = bracket_channels(X, getattr(inner, name2))
            for c1, name1 in enumerate(CHANNELS):
                J[c1][c2] = J[c1][c2] + getattr(outer, name1)
    return J


def _coefficient_matrix(J: List[List[HybridObservable]]) -> np.ndarray:
    """Align the sixteen observables on the union of their (component, monomial) supports: (16, columns)"""
    flat = [J[c1][c2] for c1 in range(4) for c2 in range(4)]
    columns: Dict[Tuple[int, int], int] = dict()
    for X in flat:
        for comp, poly in enumerate(X.components):
            for key in poly.keys.tolist():
                columns.setdefault((comp, key), len(columns))
    rv = np.zeros((16, max(1, len(columns))), dtype=complex)
    for row, X in enumerate(flat):
        for comp, poly in enumerate(X.components):
            for key, coeff in zip(poly.keys.tolist(), poly.coeffs.tolist()):
                rv[row, columns[(comp, key)]] += coeff
    return rv


def _weights(nodes: Sequence[Tuple[float, float, float]]) -> np.ndarray:
    """(nodes, 16) products w_{c₁}w_{c₂} with w = (1, α, β, γ)"""
    w = np.concatenate([np.ones((len(nodes), 1)), np.asarray(nodes, dtype=float)], axis=1)
    return np.einsum("na,nb->nab", w, w).reshape(len(nodes), 16)


def _case_instance(case: str, rng: np.random.Generator, basis: SuBasis, n_c: int, degree: int):
    if case == "nq2":
        return (
            random_generator_term(rng, basis, n_c, degree),
            random_generator_term(rng, basis, n_c, degree),
            random_classical(rng, basis, n_c, degree),
        )
    if case == "nq3":
        return tuple(random_generator_term(rng, basis, n_c, degree) for _ in range(3))
    if case == "dense":
        return tuple(random_observable(rng, basis, n_c, degree) for _ in range(3))
    raise ValueError(f"Unknown landscape case {case}")


def ansatz_jacobi_scan(
    n: int,
    grid: Optional[Sequence[Tuple[float, float, float]]] = None,
    instances: int = 4,
    seed: int = 0,
    *,
    n_c: int = 1,
    degree: int = 2,
    hbar: float = 1.0,
) -> AnsatzLandscape:
    """# Ansatz Jacobi Scan
    Max Jacobi residual of the ansatz bracket at each grid node, over `instances` seeded random
    triples of each family: (Cq_I, C′q_J, C″), (Cq_I, C′q_J, C″q_K) and dense observables."""

    if n not in (2, 3, 4):
        raise ValueError(f"Ansatz scans support n in (2, 3, 4), got {n}")
    if instances < 1:
        raise ValueError(f"Invalid instance count {instances}")
    nodes = list(grid) if grid is not None else default_grid()
    if not any(np.allclose(node, (0.0, 1.0, 0.0)) for node in nodes):
        nodes.append((0.0, 1.0, 0.0))

    basis = build_basis(n, hbar)
    rng = np.random.default_rng(seed)
    W = _weights(nodes)
    per_case = {case: np.zeros(len(nodes)) for case in CASES}
    scale = 1.0
    for case in CASES:
        for _ in range(instances):
            triple = _case_instance(case, rng, basis, n_c, degree)
            scale = max(scale, residual_scale(*triple))
            values = W @ _coefficient_matrix(_nested_channels(*triple))
            per_case[case] = np.maximum(per_case[case], np.abs(values).max(axis=1))

    rows = []
    for i, (alpha, beta, gamma) in enumerate(nodes):
        cases = {case: float(per_case[case][i]) for case in CASES}
        rows.append(
            AnsatzResidual(alpha=alpha, beta=beta, gamma=gamma, residual=max(cases.values()), cases=cases)
        )
    return AnsatzLandscape(n=n, rows=rows, scale=scale, instances=instances, seed=seed)


# Invariant tensors


TENSOR_NAMES = (
    "δjk δim",
    "δki δjm",
    "δij δkm",
    "djkl dilm",
    "dkil djlm",
    "dijl dklm",
    "djkl film",
    "dkil fjlm",
    "fijl dklm",
)


@datatype
class TensorReport:
    """# Invariant Tensor Report
    Rank of the Gram matrix of the nine rank-4 invariants, the largest |d| entry,
    and for n = 3 the residual of δδ + δδ + δδ = 3(dd + dd + dd)."""

    n: int
    rank: int
    d_max: float
    identity_residual: Optional[float]
    gram: np.ndarray


def invariant_tensors(n: int) -> np.ndarray:
    """(9, N, N, N, N) array of the rank-4 invariants T[i, j, k, m], N = n² − 1"""
    st = build_basis(n).structure
    f, d = st.f, st.d
    eye = np.eye(f.shape[0])
    return np.stack(
        [
            np.einsum("jk,im->ijkm", eye, eye),
            np.einsum("ki,jm->ijkm", eye, eye),
            np.einsum("ij,km->ijkm", eye, eye),
            np.einsum("jkl,ilm->ijkm", d, d),
            np.einsum("kil,jlm->ijkm", d, d),
            np.einsum("ijl,klm->ijkm", d, d),
            np.einsum("jkl,ilm->ijkm", d, f),
            np.einsum("kil,jlm->ijkm", d, f),
            np.einsum("ijl,klm->ijkm", f, d),
        ]
    )


def tensor_basis_check(n: int) -> TensorReport:
    """# Invariant Tensor Check"""
    if n not in (2, 3, 4):
        raise ValueError(f"Tensor checks support n in (2, 3, 4), got {n}")
    T = invariant_tensors(n)
    flat = T.reshape(9, -1)
    gram = flat @ flat.T
    rank = int(np.linalg.matrix_rank(gram, tol=1e-9 * max(1.0, np.abs(gram).max())))
    d = build_basis(n).structure.d
    identity = None
    if n == 3:
        identity = float(np.abs(T[0] + T[1] + T[2] - 3 * (T[3] + T[4] + T[5])).max())
    return TensorReport(n=n, rank=rank, d_max=float(np.abs(d).max()), identity_residual=identity, gram=gram)


# Functional equation & plane waves


class PostulateViolation(RuntimeError):
    """A candidate plane-wave bracket produced waves other than e_{r+s}"""


def functional_equation_residual(f: Callable[[np.ndarray], np.ndarray], samples: np.ndarray) -> float:
    """# Affine Functional Equation
    max |f(v₁)(v₃ − v₂) − (v₃ − v₁)f(v₂) − (v₁ − v₂)f(v₃)| over rows (v₁, v₂, v₃) of `samples`.
    Zero exactly when f is affine on the sampled values."""
    samples = np.atleast_2d(np.asarray(samples, dtype=float))
    if samples.shape[1] != 3:
        raise ValueError(f"Functional-equation samples must have three columns, got shape {samples.shape}")
    v1, v2, v3 = samples.T
    f1, f2, f3 = (np.asarray(f(v), dtype=complex) for v in (v1, v2, v3))
    return float(np.abs(f1 * (v3 - v2) - (v3 - v1) * f2 - (v1 - v2) * f3).max())


def functional_samples(seed: int = 0, count: int = 256, box: float = 2.0) -> np.ndarray:
    return np.random.default_rng(seed).uniform(-box, box, size=(count, 3))


PlaneWaveBracket = Callable[[PlaneWave, PlaneWave], PlaneWaveSum]


def auxiliary_candidate(alpha: float, beta: float) -> PlaneWaveBracket:
    """The auxiliary bracket α{·,·} + β(·)(·) on plane waves"""

    def bracket(r: PlaneWave, s: PlaneWave) -> PlaneWaveSum:
        return planewave_poisson(r, s) * alpha + planewave_product(r, s) * beta

    return bracket


def planewave_coefficient(bracket: PlaneWaveBracket, r: PlaneWave, s: PlaneWave) -> complex:
    """# Plane-Wave Coefficient Extraction
    F_rs with bracket(e_r, e_s) = F_rs e_{r+s}, for unit-amplitude waves.
    Raises `PostulateViolation` if any other wave appears."""
    target = r * s
    result = bracket(r, s)
    stray = [w for w in result.waves() if w.key != target.key]
    if stray:
        raise PostulateViolation(f"Bracket of plane waves produced {len(stray)} wave(s) other than e_(r+s): {stray[0]}")
    return result.amplitude_of(target) / (r.amplitude * s.amplitude)


def coefficient_function(bracket: PlaneWaveBracket) -> Callable[[PlaneWave, PlaneWave], complex]:
    return lambda r, s: planewave_coefficient(bracket, r, s)


def planewave_derivation_residual(
    F: Callable[[PlaneWave, PlaneWave], complex], r: PlaneWave, s: PlaneWave, t: PlaneWave
) -> float:
    """|F_rs v_{r+s,t} − v_rt F_{r+t,s} − v_st F_{r,s+t}|: the Poisson bracket acting as a
    derivation on the candidate bracket of plane waves. Vanishes for affine F = αv + β."""
    lhs = F(r, s) * planewave_pairing(r * s, t)
    rhs = planewave_pairing(r, t) * F(r * t, s) + planewave_pairing(s, t) * F(r, s * t)
    return float(abs(lhs - rhs))


def reduction_wave(r: PlaneWave, s: PlaneWave) -> PlaneWave:
    """The wave t with k_t = −k_r and x_t = −x_r − v_rs k_s/|k_s|², so that v_st = 0 and r + t has k = 0"""
    ks2 = float(s.kr @ s.kr)
    if ks2 == 0:
        raise ValueError("Reduction wave requires k_s != 0")
    return PlaneWave(-r.xr - planewave_pairing(r, s) * s.kr / ks2, -r.kr)


# Symmetry & endpoint constraints


@datatype
class SymmetryReport:
    """Residuals of the auxiliary-bracket symmetries: δ and d antisymmetric, f symmetric,
    each under exchange of the classical coefficients"""

    delta: float
    f: float
    d: float


def channel_symmetry_check(basis: SuBasis, seed: int = 0, instances: int = 8, *, n_c: int = 1, degree: int = 2) -> SymmetryReport:
    rng = np.random.default_rng(seed)
    worst = dict(delta=0.0, f=0.0, d=0.0)
    signs = dict(delta=1.0, f=-1.0, d=1.0)
    for _ in range(instances):
        C, C2 = random_polynomial(rng, n_c, degree), random_polynomial(rng, n_c, degree)
        i, j = (int(v) for v in rng.integers(basis.size, size=2))
        gen = HybridObservable.generator
        direct = bracket_channels(gen(basis, i, C), gen(basis, j, C2))
        swapped = bracket_channels(gen(basis, i, C2), gen(basis, j, C))
        for name, sign in signs.items():
            # antisymmetric: direct + swapped = 0; symmetric: direct − swapped = 0
            res = (getattr(direct, name) + getattr(swapped, name) * sign).norm()
            worst[name] = max(worst[name], res)
    return SymmetryReport(**worst)


def unit_endpoint_residual(
    basis: SuBasis, alpha: float = 0.0, beta: float = 1.0, gamma: float = 0.0, seed: int = 0, *, n_c: int = 1
) -> float:
    """max over i, j of ‖(Cq_i, q_j) − f_ijk C q_k‖ under the ansatz bracket, for a random C.
    Zero exactly when β = 1."""
    rng = np.random.default_rng(seed)
    C = random_polynomial(rng, n_c, 2)
    one = PhasePolynomial.constant(n_c, 1.0)
    f = basis.structure.f
    worst = 0.0
    for i in range(basis.size):
        X = HybridObservable.generator(basis, i, C)
        for j in range(basis.size):
            got = ansatz_bracket(X, HybridObservable.generator(basis, j, one), alpha, beta, gamma)
            want = HybridObservable(basis, C.zero(), [C * f[i, j, k] for k in range(basis.size)])
            worst = max(worst, (got - want).norm())
    return worst
