"""
# Scenario Configuration

Scenario files are YAML: a few flat keys plus sectioned tables, each section a `@paramclass`.
Unknown keys anywhere are rejected.

```yaml
name: spin-orbit
seed: 7
system:
  n: 2
  n_c: 3
  spin_orbit_g: 1.0
time:
  t_max: 0.5
  steps: 20
```

Observables are written per component, as polynomial literals:
`scalar` is the 𝟙 part and `q1`, `q2`, ... the generator parts, e.g.

```yaml
initial:
  scalar: "2 + x1"
  q3: "0.5 * k1^2"
```

Literal syntax: `coeff * x1^a * k2^b + ...`, whitespace-insensitive, `*` optional between factors.
"""

# Std-Lib Imports
import dataclasses
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

# PyPi Imports
import numpy as np
import pydantic
import yaml

# Local Imports
from ..params import paramclass, Param, isparamclass
from ..su import SuBasis, build_basis
from ..classical import PhasePoint, PhasePolynomial, PointSet, parse_literal
from ..hybrid import DensityField, HybridObservable, DEFAULT_WIDTH
from ..models import SpinOrbit, observables as model_observables
from ..instances import default_center


class ScenarioError(ValueError):
    """Invalid scenario file or contents"""


@paramclass
class HybridSpec:
    n = Param(dtype=int, desc="Hilbert-space dimension of the quantum sector", default=2)
    n_c = Param(dtype=int, desc="Classical degrees of freedom", default=3)
    hbar = Param(dtype=float, desc="Reduced Planck constant", default=1.0)
    hamiltonian = Param(
        dtype=Dict[str, str],
        desc="Hamiltonian components as polynomial literals, keyed `scalar`, `q1`, ...",
        default_factory=dict,
    )
    spin_orbit_g = Param(
        dtype=Optional[float],
        desc="Spin-orbit coupling g. When set, H = g L·S (+ k²/2M) replaces `hamiltonian`",
        default=None,
    )
    mass = Param(dtype=Optional[float], desc="Spin-orbit particle mass M; None for the infinite-mass limit", default=None)


@paramclass
class StateSpec:
    alpha = Param(dtype=str, desc="Polynomial part of ρ₀", default="1")
    beta = Param(dtype=Dict[str, str], desc="Polynomial parts of ρᵢ, keyed `q1`, `q2`, ...", default_factory=dict)
    center_x = Param(dtype=Optional[List[float]], desc="Envelope center in x. Default e₁", default=None)
    center_k = Param(dtype=Optional[List[float]], desc="Envelope center in k. Default e₂", default=None)
    width = Param(dtype=float, desc="Envelope width s", default=DEFAULT_WIDTH)


@paramclass
class TimeGrid:
    t_max = Param(dtype=float, desc="Final time", default=0.5)
    steps = Param(dtype=int, desc="Number of grid intervals", default=20)
    order = Param(dtype=int, desc="Lie-series order", default=8)


@paramclass
class PointSpec:
    count = Param(dtype=int, desc="Number of Halton sample points", default=50)
    box = Param(dtype=float, desc="Half-width of the sampling box", default=2.0)
    max_x = Param(dtype=Optional[float], desc="Upper limit on |x|", default=None)
    max_k = Param(dtype=Optional[float], desc="Upper limit on |k|", default=None)
    l_min = Param(dtype=Optional[float], desc="Lower limit on |L| (n_c = 3)", default=None)
    l_max = Param(dtype=Optional[float], desc="Upper limit on |L| (n_c = 3)", default=None)
    explicit = Param(dtype=List[List[float]], desc="User points, each (x..., k...)", default_factory=list)


@paramclass
class ChecksSpec:
    drift_tol = Param(dtype=float, desc="Largest allowed drift of conserved quantities", default=1e-8)
    conserved = Param(dtype=List[str], desc="Quantities required to be conserved", default_factory=list)
    closed_form_rtol = Param(dtype=float, desc="Closed form vs Lie series relative tolerance", default=1e-6)


@paramclass
class JacobiSpec:
    kinds = Param(dtype=List[str], desc="Bracket kinds: canonical, standard, anderson", default_factory=lambda: ["canonical"])
    dims = Param(dtype=List[int], desc="Quantum dimensions n", default_factory=lambda: [2])
    triples = Param(dtype=int, desc="Random triples per kind and dimension", default=50)
    degree = Param(dtype=int, desc="Maximum polynomial degree", default=2)
    n_c = Param(dtype=int, desc="Classical degrees of freedom", default=1)
    tolerance = Param(dtype=float, desc="Residual tolerance, relative to the input scale", default=1e-10)
    witness_trials = Param(dtype=int, desc="Witness-search trials for failing kinds", default=100)


@paramclass
class UniquenessSpec:
    dims = Param(dtype=List[int], desc="Quantum dimensions n", default_factory=lambda: [2, 3, 4])
    instances = Param(dtype=int, desc="Random instances per family and dimension", default=4)
    grid_points = Param(dtype=int, desc="Grid points per axis", default=9)
    grid_min = Param(dtype=float, desc="Lower grid bound", default=-2.0)
    grid_max = Param(dtype=float, desc="Upper grid bound", default=2.0)
    degree = Param(dtype=int, desc="Maximum polynomial degree", default=2)
    samples = Param(dtype=int, desc="Functional-equation sample rows", default=256)
    tolerance = Param(dtype=float, desc="Canonical-node residual tolerance, relative", default=1e-10)
    separation = Param(dtype=float, desc="Minimum residual away from the canonical node", default=1e-3)


@paramclass
class PositivitySpec:
    case = Param(
        dtype=str,
        desc="One of: heisenberg, schrodinger, quantal-control, classical-control, l-only, custom",
        default="custom",
    )
    t_max = Param(dtype=Optional[float], desc="Scan horizon. Default: the case's own", default=None)
    resolution = Param(dtype=int, desc="Coarse scan intervals", default=200)
    tol = Param(dtype=float, desc="Bisection tolerance in t", default=1e-6)
    max_step = Param(dtype=float, desc="Largest Lie-series step", default=0.25)
    trials = Param(dtype=int, desc="Trials for the L-only search", default=20)
    expect_violation = Param(dtype=Optional[bool], desc="Required outcome. Default: the case's own", default=None)


@paramclass
class Scenario:
    name = Param(dtype=str, desc="Scenario name")
    seed = Param(dtype=Optional[int], desc="Random seed. Required by randomized runs", default=None)
    output = Param(dtype=str, desc="Output directory", default="out")
    picture = Param(dtype=str, desc="Evolution picture: heisenberg or schrodinger", default="schrodinger")
    system = Param(dtype=HybridSpec, desc="Quantum and classical sectors, Hamiltonian", default_factory=HybridSpec)
    initial = Param(dtype=Dict[str, str], desc="Initial observable (Heisenberg picture)", default_factory=dict)
    state = Param(dtype=StateSpec, desc="Initial state (Schrödinger picture)", default_factory=StateSpec)
    observables = Param(
        dtype=Dict[str, Dict[str, str]], desc="Named observables by component literals", default_factory=dict
    )
    quantities = Param(dtype=List[str], desc="Built-in spin-orbit observables to track", default_factory=list)
    time = Param(dtype=TimeGrid, desc="Time grid", default_factory=TimeGrid)
    points = Param(dtype=PointSpec, desc="Evaluation points", default_factory=PointSpec)
    checks = Param(dtype=ChecksSpec, desc="Pass/fail criteria", default_factory=ChecksSpec)
    jacobi = Param(dtype=JacobiSpec, desc="Jacobi suites", default_factory=JacobiSpec)
    uniqueness = Param(dtype=UniquenessSpec, desc="Uniqueness landscape", default_factory=UniquenessSpec)
    positivity = Param(dtype=PositivitySpec, desc="Positivity scan", default_factory=PositivitySpec)


# Loading


def _check_keys(cls: type, data: Any, path: str) -> None:
    """Reject keys which are not parameters of `cls`, recursing into nested param-classes"""
    if not isinstance(data, dict):
        raise ScenarioError(f"Section `{path or '<top>'}` must be a table, got {type(data).__name__}")
    params = cls.__params__
    for key, val in data.items():
        where = f"{path}.{key}" if path else str(key)
        if key not in params:
            raise ScenarioError(f"Unknown key `{where}`. Valid keys: {sorted(params)}")
        if isparamclass(params[key].dtype):
            _check_keys(params[key].dtype, val, where)


def scenario_from_dict(data: Any) -> Scenario:
    _check_keys(Scenario, data, "")
    try:
        return Scenario(**data)
    except (TypeError, ValueError, pydantic.ValidationError) as e:
        raise ScenarioError(f"Invalid scenario: {e}") from e


def load_scenario(path: Union[str, Path]) -> Scenario:
    """# Load a Scenario File"""
    path = Path(path)
    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise ScenarioError(f"Cannot read scenario file {path}: {e}") from e
    except yaml.YAMLError as e:
        raise ScenarioError(f"Invalid YAML in {path}: {e}") from e
    return scenario_from_dict(data)


def with_overrides(scenario: Scenario, *, seed: Optional[int] = None, points: Optional[int] = None) -> Scenario:
    """Apply command-line overrides"""
    if seed is not None:
        scenario = dataclasses.replace(scenario, seed=seed)
    if points is not None:
        scenario = dataclasses.replace(scenario, points=dataclasses.replace(scenario.points, count=points))
    return scenario


# Building library objects


def _literal(text: str, n_c: int, where: str) -> PhasePolynomial:
    try:
        return parse_literal(text, n_c)
    except ValueError as e:
        raise ScenarioError(f"Invalid polynomial literal for `{where}`: {e}") from e


def parse_observable(components: Dict[str, str], basis: SuBasis, n_c: int, where: str = "observable") -> HybridObservable:
    """Observable from component literals keyed `scalar`, `q1`, ..."""
    zero = PhasePolynomial.zeros(n_c)
    a0, avec = zero, [zero] * basis.size
    for key, text in components.items():
        if key == "scalar":
            a0 = _literal(text, n_c, f"{where}.{key}")
        else:
            avec[_generator_index(key, basis, where)] = _literal(text, n_c, f"{where}.{key}")
    return HybridObservable(basis, a0, avec)


def _generator_index(key: str, basis: SuBasis, where: str) -> int:
    if not key.startswith("q") or not key[1:].isdigit() or not 1 <= int(key[1:]) <= basis.size:
        raise ScenarioError(f"Invalid component `{where}.{key}`: expected `scalar` or q1..q{basis.size}")
    return int(key[1:]) - 1


def system_basis(system: HybridSpec) -> SuBasis:
    try:
        return build_basis(system.n, system.hbar)
    except ValueError as e:
        raise ScenarioError(str(e)) from e


def spin_orbit_model(system: HybridSpec) -> Optional[SpinOrbit]:
    if system.spin_orbit_g is None:
        return None
    if system.hamiltonian:
        raise ScenarioError("Specify either `system.hamiltonian` or `system.spin_orbit_g`, not both")
    if system.n != 2 or system.n_c != 3:
        raise ScenarioError(f"The spin-orbit model requires n=2 and n_c=3, got n={system.n}, n_c={system.n_c}")
    return SpinOrbit(g=system.spin_orbit_g, mass=system.mass)


def hamiltonian(system: HybridSpec, basis: SuBasis) -> HybridObservable:
    model = spin_orbit_model(system)
    if model is not None:
        return model.hamiltonian(basis)
    return parse_observable(system.hamiltonian, basis, system.n_c, "system.hamiltonian")


def initial_state(state: StateSpec, basis: SuBasis, n_c: int) -> DensityField:
    center = default_center(n_c)
    x = tuple(state.center_x) if state.center_x is not None else center.x
    k = tuple(state.center_k) if state.center_k is not None else center.k
    zero = PhasePolynomial.zeros(n_c)
    beta = [zero] * basis.size
    for key, text in state.beta.items():
        beta[_generator_index(key, basis, "state.beta")] = _literal(text, n_c, f"state.beta.{key}")
    try:
        return DensityField.gaussian(
            basis, _literal(state.alpha, n_c, "state.alpha"), beta, PhasePoint(x=x, k=k), state.width
        )
    except (ValueError, pydantic.ValidationError) as e:
        raise ScenarioError(f"Invalid initial state: {e}") from e


def named_observables(scenario: Scenario, basis: SuBasis) -> Dict[str, HybridObservable]:
    """Built-in `quantities` followed by literal `observables`, in file order"""
    rv: Dict[str, HybridObservable] = dict()
    if scenario.quantities:
        if basis.n != 2 or scenario.system.n_c != 3:
            raise ScenarioError("Built-in quantities require the spin-orbit sectors n=2, n_c=3")
        builtin = model_observables(basis)
        for name in scenario.quantities:
            if name not in builtin:
                raise ScenarioError(f"Unknown quantity `{name}`. Valid: {sorted(builtin)}")
            rv[name] = builtin[name]
    for name, comps in scenario.observables.items():
        rv[name] = parse_observable(comps, basis, scenario.system.n_c, f"observables.{name}")
    return rv


def point_set(spec: PointSpec, n_c: int) -> PointSet:
    l_window = None
    if spec.l_min is not None or spec.l_max is not None:
        l_window = (spec.l_min or 0.0, spec.l_max if spec.l_max is not None else np.inf)
    try:
        ps = PointSet.halton(n_c, spec.count, spec.box, max_x=spec.max_x, max_k=spec.max_k, l_window=l_window)
        if spec.explicit:
            ps = ps.concat(PointSet(n_c, spec.explicit))
    except ValueError as e:
        raise ScenarioError(f"Invalid point specification: {e}") from e
    return ps


def grid_times(grid: TimeGrid) -> List[float]:
    """The `steps + 1` equally spaced times from 0 to `t_max`"""
    return [float(t) for t in np.linspace(0.0, grid.t_max, grid.steps + 1)]


def landscape_grid(spec: UniquenessSpec) -> List[tuple]:
    """All (α, β, γ) nodes of the `grid_points`³ landscape grid"""
    axis = np.linspace(spec.grid_min, spec.grid_max, spec.grid_points)
    return [(float(a), float(b), float(c)) for a in axis for b in axis for c in axis]
