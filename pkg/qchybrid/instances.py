"""
# Random Instances

Seeded generators of polynomials, observables and states, shared by the identity
suites, the witness search, the uniqueness landscape and the tests.
Every generator takes a `numpy.random.Generator`, so callers own the seed.
"""

# Std-Lib Imports
import itertools
from functools import lru_cache
from typing import List, Optional, Tuple

# PyPi Imports
import numpy as np

# Local Imports
from .su import SuBasis
from .classical import GaussianField, PhasePoint, PhasePolynomial
from .hybrid.observable import HybridObservable
from .hybrid.density import DensityField, DEFAULT_CENTER, DEFAULT_WIDTH


def rng_for(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int) -> Tuple[Tuple[int, ...], ...]:
    """All exponent tuples of total degree at most `degree`, in a fixed order"""
    return tuple(e for e in itertools.product(range(degree + 1), repeat=nvars) if sum(e) <= degree)


def random_polynomial(
    rng: np.random.Generator, n_c: int, degree: int, *, density: float = 1.0, scale: float = 1.0
) -> PhasePolynomial:
    """Coefficients uniform in [-scale, scale] on each monomial of degree ≤ `degree`,
    each kept with probability `density`"""
    exps = monomials(2 * n_c, degree)
    coeffs = rng.uniform(-scale, scale, size=len(exps))
    keep = rng.random(len(exps)) < density
    return PhasePolynomial(n_c, {e: c for e, c, k in zip(exps, coeffs, keep) if k})


def random_observable(
    rng: np.random.Generator, basis: SuBasis, n_c: int, degree: int, *, density: float = 1.0
) -> HybridObservable:
    """Hermitian observable with independent random components"""
    comps = [random_polynomial(rng, n_c, degree, density=density) for _ in range(basis.size + 1)]
    return HybridObservable.from_components(basis, comps)


def random_classical(rng: np.random.Generator, basis: SuBasis, n_c: int, degree: int) -> HybridObservable:
    return HybridObservable.classical(basis, random_polynomial(rng, n_c, degree))


def random_quantal(rng: np.random.Generator, basis: SuBasis, n_c: int) -> HybridObservable:
    coeffs = rng.uniform(-1, 1, size=basis.size + 1)
    return HybridObservable.quantal(basis, n_c, list(coeffs[1:]), coeffs[0])


def random_generator_term(
    rng: np.random.Generator, basis: SuBasis, n_c: int, degree: int, index: Optional[int] = None
) -> HybridObservable:
    """C·q_index with random C, and a random index unless one is given"""
    if index is None:
        index = int(rng.integers(basis.size))
    return HybridObservable.generator(basis, index, random_polynomial(rng, n_c, degree))


def default_center(n_c: int) -> PhasePoint:
    """The default state center for `n_c` classical dimensions: x̄ = e₁, k̄ = e₂ (k̄ = 0 for n_c = 1)"""
    if n_c == 3:
        return DEFAULT_CENTER
    x, k = [0.0] * n_c, [0.0] * n_c
    x[0] = 1.0
    if n_c > 1:
        k[1] = 1.0
    return PhasePoint(x=tuple(x), k=tuple(k))


def random_state(
    rng: np.random.Generator,
    basis: SuBasis,
    n_c: int,
    degree: int,
    *,
    center: Optional[PhasePoint] = None,
    width: float = DEFAULT_WIDTH,
    scale: float = 0.2,
) -> DensityField:
    """Normalized state with random polynomial parts.
    The constant term of α is shifted so that its envelope-average is one before normalizing."""
    center = center or default_center(n_c)
    env = GaussianField.envelope_only(center, width)
    alpha = random_polynomial(rng, n_c, degree, scale=scale)
    alpha = alpha + (1.0 - (env * alpha).integrate() / env.integrate())
    beta = [random_polynomial(rng, n_c, degree, scale=scale) for _ in range(basis.size)]
    return DensityField.gaussian(basis, alpha, beta, center, width)


def random_triples(
    rng: np.random.Generator, basis: SuBasis, n_c: int, degree: int, count: int
) -> List[Tuple[HybridObservable, HybridObservable, HybridObservable]]:
    return [tuple(random_observable(rng, basis, n_c, degree) for _ in range(3)) for _ in range(count)]
