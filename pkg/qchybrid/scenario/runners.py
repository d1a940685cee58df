"""
# Scenario Runners

One `Runner` sub-class per CLI subcommand. Each builds library objects from a `Scenario`,
writes its artifacts, and calls `fail` for any check which does not hold.
Every number written is computed by the library API; runners only arrange and compare.
"""

# Std-Lib Imports
import dataclasses
from enum import Enum
from typing import Dict, List, Optional

# PyPi Imports
import numpy as np

# Local Imports
from ..su import build_basis
from ..classical import PointSet
from ..hybrid import (
    BracketKind,
    HybridObservable,
    jacobi_residual,
    residual_scale,
    find_jacobi_witness,
    standard_jacobi_witness,
)
from ..dynamics import (
    LieSeries,
    Picture,
    SeriesResult,
    evolve_on_grid,
    expectation,
    expectation_report,
    split_singular,
    spin_orbit_closed_form,
    spin_orbit_schrodinger_closed_form,
)
from ..positivity import (
    PositivityCase,
    positivity_margin,
    violation_scan,
    heisenberg_counterexample,
    schrodinger_counterexample,
    quantal_control,
    classical_control,
    l_only_violation_search,
)
from ..uniqueness import (
    ansatz_jacobi_scan,
    tensor_basis_check,
    functional_equation_residual,
    functional_samples,
    auxiliary_candidate,
    planewave_coefficient,
    channel_symmetry_check,
    unit_endpoint_residual,
    CASES,
)
from ..classical import PlaneWave
from ..instances import random_triples
from .config import (
    Scenario,
    ScenarioError,
    system_basis,
    spin_orbit_model,
    hamiltonian,
    initial_state,
    parse_observable,
    named_observables,
    point_set,
    grid_times,
    landscape_grid,
)
from .writers import ArtifactWriter, point_columns, matrix_columns, matrix_cells


class CheckFailure(RuntimeError):
    """A scenario check did not hold. Maps to CLI exit status 2."""


class Runner:
    """
    # Base Runner

    `run` is the entry point: it constructs the runner, runs its body, and raises `CheckFailure`
    with every failed check once all artifacts are written.
    """

    name: str = "runner"

    @classmethod
    def run(cls, scenario: Scenario, writer: ArtifactWriter) -> None:
        """Run entry-point"""
        return cls(scenario, writer).run_all()

    def __init__(self, scenario: Scenario, writer: ArtifactWriter):
        self.scenario = scenario
        self.writer = writer
        self.failures: List[str] = list()

    def run_all(self) -> None:
        self.body()
        if self.failures:
            self.fail("; ".join(self.failures))

    def body(self) -> None:
        raise NotImplementedError

    def check(self, ok: bool, msg: str) -> None:
        """Record a failed check without stopping the run"""
        if not ok:
            self.failures.append(msg)

    def fail(self, msg: str):
        raise CheckFailure(f"{self.name} `{self.scenario.name}`: {msg}")

    def seed(self) -> int:
        if self.scenario.seed is None:
            raise ScenarioError(f"Subcommand `{self.name}` is randomized and requires a `seed`")
        return self.scenario.seed

    def times(self) -> List[float]:
        grid = self.scenario.time
        if not grid.t_max > 0 or grid.steps < 1 or grid.order < 1:
            raise ScenarioError(f"Invalid time grid {grid}")
        return grid_times(grid)

    def points(self) -> PointSet:
        return point_set(self.scenario.points, self.scenario.system.n_c)

    def trajectory(self, name: str, states: List[SeriesResult], points: PointSet) -> None:
        """Operator values at every (t, point), one row each"""
        first = states[0].value
        n, n_c = first.basis.n, first.n_c
        header = ["t", "point_id"] + point_columns(n_c) + matrix_columns(n)
        rows = []
        for state in states:
            mats = state.value.to_matrices(points)
            for pid, (coords, mat) in enumerate(zip(points.array, mats)):
                rows.append([state.t, pid] + [float(c) for c in coords] + matrix_cells(mat))
        self.writer.csv(name, header, rows)


class EvolveRunner(Runner):
    """
    # Evolve
    Trajectory of the initial observable (Heisenberg) or state (Schrödinger) on the point set,
    expectation values of every named quantity along the time grid, and their drift table.
    The Lie series restarts at every grid time.
    """

    name = "evolve"

    def body(self) -> None:
        sc = self.scenario
        basis = system_basis(sc.system)
        H = hamiltonian(sc.system, basis)
        try:
            picture = Picture(sc.picture)
        except ValueError:
            raise ScenarioError(f"Invalid picture `{sc.picture}`. Valid: {[p.value for p in Picture]}")
        times = self.times()
        order = sc.time.order
        rho = initial_state(sc.state, basis, sc.system.n_c)
        quantities = named_observables(sc, basis)
        points = self.points()

        if picture == Picture.SCHRODINGER:
            states = evolve_on_grid(rho, H, times, order)
            self.trajectory("evolve_trajectory.csv", states, points)
            report = expectation_report(quantities, rho, states)
            values, drift, truncation = report.values, report.drift, report.truncation
        else:
            if not sc.initial:
                raise ScenarioError("Heisenberg evolution requires an `initial` observable")
            A = parse_observable(sc.initial, basis, sc.system.n_c, "initial")
            states = evolve_on_grid(A, H, times, order)
            self.trajectory("evolve_trajectory.csv", states, points)
            values, drift, truncation = dict(), dict(), states[-1].remainder
            for qname, Q in quantities.items():
                evolved = evolve_on_grid(Q, H, times, order)
                vals = [expectation(s.value, rho) for s in evolved]
                values[qname] = vals
                drift[qname] = max(abs(v - vals[0]) for v in vals)
                truncation = max(truncation, evolved[-1].remainder)

        names = list(quantities)
        rows = [[t] + [values[q][i] for q in names] for i, t in enumerate(times)]
        self.writer.csv("evolve_expectations.csv", ["t"] + names, rows)

        tol = sc.checks.drift_tol
        self.writer.json(
            "evolve_conservation.json",
            dict(
                picture=picture.value,
                order=order,
                truncation=truncation,
                drift=drift,
                conserved={q: d < tol for q, d in drift.items()},
                tolerance=tol,
            ),
        )
        for q in sc.checks.conserved:
            if q not in drift:
                raise ScenarioError(f"Conserved-quantity check names unknown quantity `{q}`")
            self.check(drift[q] < tol, f"drift of `{q}` is {drift[q]:.3g}, above {tol:g}")


class SpinOrbitRunner(Runner):
    """
    # Spin-Orbit
    Closed forms against Lie-series evolution on the point set, in both pictures.
    The Heisenberg comparison runs when the scenario has an `initial` observable.
    """

    name = "spin-orbit"

    def body(self) -> None:
        sc = self.scenario
        model = spin_orbit_model(sc.system)
        if model is None:
            raise ScenarioError("Subcommand `spin-orbit` requires `system.spin_orbit_g`")
        if model.has_kinetic:
            raise ScenarioError("Spin-orbit closed forms cover the infinite-mass limit only; remove `system.mass`")
        basis = system_basis(sc.system)
        H = model.hamiltonian(basis)
        times, order = self.times(), sc.time.order
        points, dropped = split_singular(self.points())
        if dropped:
            self.writer.note(f"skipped {dropped} point(s) with |L| at the singular locus")

        cases = [(Picture.SCHRODINGER, initial_state(sc.state, basis, sc.system.n_c), spin_orbit_schrodinger_closed_form)]
        if sc.initial:
            A0 = parse_observable(sc.initial, basis, sc.system.n_c, "initial")
            cases.insert(0, (Picture.HEISENBERG, A0, spin_orbit_closed_form))

        rows, worst = [], dict()
        for picture, X0, closed_form in cases:
            series = LieSeries(X0, H, order, picture)
            worst[picture.value] = 0.0
            for t in times:
                exact = closed_form(X0, model, t, points)
                approx = series.value(t).to_matrices(points)
                abs_err = float(np.abs(exact - approx).max())
                rel_err = abs_err / max(float(np.abs(exact).max()), np.finfo(float).tiny)
                rows.append([picture.value, t, abs_err, rel_err, series.remainder(t)])
                worst[picture.value] = max(worst[picture.value], rel_err)
        self.writer.csv("spin_orbit_comparison.csv", ["picture", "t", "max_abs_error", "rel_error", "remainder"], rows)

        rtol = sc.checks.closed_form_rtol
        self.writer.json(
            "spin_orbit_summary.json",
            dict(g=model.g, order=order, points=len(points), dropped=dropped, max_rel_error=worst, rtol=rtol),
        )
        for picture, err in worst.items():
            self.check(err < rtol, f"{picture} closed form differs from the series by {err:.3g} (relative)")


class PositivityRunner(Runner):
    """
    # Positivity
    Margin curve and violation time for a bundled or custom case,
    or the numerical search over the L-only dynamics.
    """

    name = "positivity"

    def body(self) -> None:
        spec = self.scenario.positivity
        if spec.case == "l-only":
            return self.l_only()
        case = self.case()
        report = violation_scan(
            case.initial,
            case.hamiltonian,
            case.points,
            case.t_max,
            tol=spec.tol,
            resolution=spec.resolution,
            order=self.scenario.time.order,
            max_step=spec.max_step,
        )
        initial = positivity_margin(case.initial, case.points)
        n_c = case.initial.n_c
        rows = [
            [pid] + [float(c) for c in coords] + [float(m)]
            for pid, (coords, m) in enumerate(zip(case.points.array, initial.margins))
        ]
        self.writer.csv("positivity_scan.csv", ["point_id"] + point_columns(n_c) + ["min_eig"], rows)
        self.writer.csv("positivity_margins.csv", ["t", "global_margin"], report.margin_curve)
        self.writer.json(
            "positivity_violation.json",
            dict(
                case=case.name,
                t_star=report.t_star,
                witness_point=report.witness,
                margin_curve=report.margin_curve,
                t_max=report.t_max,
                resolution=report.resolution,
                tol=report.tol,
            ),
        )
        expect = case.expect_violation if spec.expect_violation is None else spec.expect_violation
        if expect is not None:
            found = "found" if report.violated else "none found"
            self.check(report.violated == expect, f"case `{case.name}` expected violation={expect}, {found}")

    def case(self) -> PositivityCase:
        sc, spec = self.scenario, self.scenario.positivity
        count, hbar = sc.points.count, sc.system.hbar
        g = sc.system.spin_orbit_g if sc.system.spin_orbit_g is not None else 1.0
        if spec.case == "heisenberg":
            case = heisenberg_counterexample(count=count, g=g, hbar=hbar)
        elif spec.case == "schrodinger":
            case = schrodinger_counterexample(count=count, g=g, hbar=hbar)
        elif spec.case == "quantal-control":
            case = quantal_control(count=count, hbar=hbar)
        elif spec.case == "classical-control":
            case = classical_control(count=count, hbar=hbar)
        elif spec.case == "custom":
            case = self.custom()
        else:
            raise ScenarioError(f"Unknown positivity case `{spec.case}`")
        if spec.t_max is not None:
            case = dataclasses.replace(case, t_max=spec.t_max)
        return case

    def custom(self) -> PositivityCase:
        sc = self.scenario
        if sc.positivity.t_max is None:
            raise ScenarioError("A custom positivity case requires `positivity.t_max`")
        basis = system_basis(sc.system)
        model = spin_orbit_model(sc.system)
        H = model if model is not None and not model.has_kinetic else hamiltonian(sc.system, basis)
        if sc.picture == Picture.HEISENBERG.value:
            if not sc.initial:
                raise ScenarioError("A Heisenberg positivity case requires an `initial` observable")
            initial = parse_observable(sc.initial, basis, sc.system.n_c, "initial")
        else:
            initial = initial_state(sc.state, basis, sc.system.n_c)
        return PositivityCase(
            name="custom",
            initial=initial,
            hamiltonian=H,
            points=self.points(),
            t_max=sc.positivity.t_max,
            expect_violation=bool(sc.positivity.expect_violation),
        )

    def l_only(self) -> None:
        sc, spec = self.scenario, self.scenario.positivity
        g = sc.system.spin_orbit_g if sc.system.spin_orbit_g is not None else 1.0
        search = l_only_violation_search(
            seed=self.seed(),
            trials=spec.trials,
            points=sc.points.count,
            g=g,
            t_max=spec.t_max if spec.t_max is not None else 20.0 / g,
            resolution=spec.resolution,
            hbar=sc.system.hbar,
        )
        self.writer.json("positivity_l_only.json", dataclasses.asdict(search))
        if spec.expect_violation is not None:
            self.check(search.found == spec.expect_violation, f"L-only search found={search.found}")


class JacobiRunner(Runner):
    """
    # Jacobi
    Scaled cyclic-sum residuals of each bracket kind on seeded random triples.
    A kind exceeding the tolerance fails the run, and its worst triple is dumped as a witness.
    """

    name = "jacobi"

    def body(self) -> None:
        spec, seed = self.scenario.jacobi, self.seed()
        kinds = list()
        for kind in spec.kinds:
            try:
                kinds.append(BracketKind(kind))
            except ValueError:
                raise ScenarioError(f"Unknown bracket kind `{kind}`. Valid: {[k.value for k in BracketKind]}")

        rows, summary = [], dict()
        for kind in kinds:
            for n in spec.dims:
                basis = build_basis(n, self.scenario.system.hbar)
                rng = np.random.default_rng(seed)
                worst = 0.0
                for i, triple in enumerate(random_triples(rng, basis, spec.n_c, spec.degree, spec.triples)):
                    scale = residual_scale(*triple)
                    residual = jacobi_residual(kind, *triple) / scale
                    rows.append([kind.value, n, i, residual, scale])
                    worst = max(worst, residual)
                summary[f"{kind.value}/n{n}"] = worst
                if worst >= spec.tolerance:
                    self.witness(kind, basis, n)
                self.check(worst < spec.tolerance, f"{kind.value} bracket, n={n}: residual {worst:.3g}")

        self.writer.csv("jacobi_residuals.csv", ["kind", "n", "triple", "residual", "scale"], rows)
        self.writer.json("jacobi_summary.json", dict(max_residual=summary, tolerance=spec.tolerance, seed=seed))

    def witness(self, kind: BracketKind, basis, n: int) -> None:
        spec = self.scenario.jacobi
        found = find_jacobi_witness(
            kind, basis, n_c=spec.n_c, trials=spec.witness_trials, degree=spec.degree, seed=self.seed()
        )
        data = dict(searched=self._witness_json(found))
        if kind == BracketKind.STANDARD:
            data["stored"] = self._witness_json(standard_jacobi_witness(basis))
        self.writer.json(f"jacobi_witness_{kind.value}_n{n}.json", data)

    @staticmethod
    def _witness_json(w) -> Dict:
        return dict(kind=w.kind, residual=w.residual, seed=w.seed, trial=w.trial, A=w.A, B=w.B, C=w.C)


class UniquenessRunner(Runner):
    """
    # Uniqueness
    The (α, β, γ) ansatz landscape per dimension, the invariant-tensor checks,
    the affine functional equation and plane-wave coefficient extraction.
    """

    name = "uniqueness"

    def body(self) -> None:
        spec, seed = self.scenario.uniqueness, self.seed()
        report = dict(seed=seed, dims=dict())
        for n in spec.dims:
            if n not in (2, 3, 4):
                raise ScenarioError(f"Uniqueness checks support n in (2, 3, 4), got {n}")
            landscape = ansatz_jacobi_scan(n, landscape_grid(spec), spec.instances, seed, degree=spec.degree)
            self.writer.csv(
                f"uniqueness_landscape_n{n}.csv",
                ["alpha", "beta", "gamma", "residual"] + list(CASES),
                [[r.alpha, r.beta, r.gamma, r.residual] + [r.cases[c] for c in CASES] for r in landscape.rows],
            )
            canonical = landscape.at(0.0, 1.0, 0.0).residual
            tol = spec.tolerance * landscape.scale
            self.check(canonical < tol, f"n={n}: canonical node residual {canonical:.3g}")
            # d vanishes for n = 2, leaving γ without effect
            off = [
                r
                for r in landscape.rows
                if (abs(r.alpha) >= 0.1 if n == 2 else abs(r.alpha) + abs(r.gamma) >= 0.1)
            ]
            separation = min((r.residual for r in off), default=None)
            if separation is not None:
                self.check(separation > spec.separation, f"n={n}: off-canonical residual {separation:.3g}")

            tensors = tensor_basis_check(n)
            if n == 2:
                self.check(tensors.d_max == 0 and tensors.rank == 3, f"n=2: d max {tensors.d_max:.3g}, rank {tensors.rank}")
            elif n == 4:
                self.check(tensors.rank == 9, f"n=4: invariant rank {tensors.rank}, expected 9")
            else:
                self.check(tensors.identity_residual < 1e-12, f"n=3 tensor identity residual {tensors.identity_residual:.3g}")

            basis = build_basis(n, self.scenario.system.hbar)
            symmetry = channel_symmetry_check(basis, seed, spec.instances)
            endpoint = unit_endpoint_residual(basis, seed=seed)
            report["dims"][str(n)] = dict(
                canonical_residual=canonical,
                scale=landscape.scale,
                min_off_canonical=separation,
                minimum_node=landscape.minimum().node,
                tensor_rank=tensors.rank,
                d_max=tensors.d_max,
                identity_residual=tensors.identity_residual,
                symmetry=dataclasses.asdict(symmetry),
                unit_endpoint=endpoint,
            )

        samples = functional_samples(seed, spec.samples)
        affine = functional_equation_residual(lambda v: 2 * v + 3, samples)
        square = functional_equation_residual(lambda v: v**2, samples)
        self.check(affine < 1e-12, f"affine functional residual {affine:.3g}")
        self.check(square > 1, f"quadratic functional residual {square:.3g}")
        report["functional"] = dict(affine=affine, square=square, samples=spec.samples)

        r = PlaneWave((0.3, -0.2), (0.5, 0.1))
        s = PlaneWave((-0.4, 0.6), (0.2, -0.7))
        report["planewave"] = dict(
            poisson=planewave_coefficient(auxiliary_candidate(1.0, 0.0), r, s),
            product=planewave_coefficient(auxiliary_candidate(0.0, 1.0), r, s),
            sum=planewave_coefficient(auxiliary_candidate(1.0, 1.0), r, s),
        )
        self.writer.json("uniqueness_report.json", report)


class Subcommand(Enum):
    """
    # Enumerated Subcommands

    Each has a `value` attribute which is a `Runner` class,
    and a `cli_name` which is its command-line spelling.
    """

    EVOLVE = EvolveRunner
    SPIN_ORBIT = SpinOrbitRunner
    POSITIVITY = PositivityRunner
    JACOBI = JacobiRunner
    UNIQUENESS = UniquenessRunner

    @classmethod
    def from_cli(cls, name: str) -> "Subcommand":
        for sub in cls:
            if sub.cli_name == name:
                return sub
        raise ValueError(f"Unknown subcommand `{name}`")

    @property
    def cli_name(self) -> str:
        return self.value.name

    @property
    def run(self):
        return self.value.run
