"""
# Scenarios & Command Line
# Unit Tests
"""

import json
import pytest

# Import the PUT (package under test)
import qchybrid as qh
from qchybrid.scenario import main
from qchybrid.scenario.cli import EXIT_OK, EXIT_CONFIG, EXIT_CHECK

JACOBI = """
name: jacobi-small
seed: 5
jacobi:
  kinds: [canonical]
  dims: [2]
  triples: 3
  degree: 2
"""

STANDARD = """
name: jacobi-standard-small
seed: 5
jacobi:
  kinds: [standard]
  dims: [2]
  triples: 4
  witness_trials: 4
"""

EVOLVE = """
name: evolve-small
picture: heisenberg
system:
  n: 2
  n_c: 1
  hamiltonian:
    scalar: "0.5 k1^2"
    q3: "x1"
initial:
  scalar: "x1"
  q1: "k1"
observables:
  H:
    scalar: "0.5 k1^2"
    q3: "x1"
  X:
    scalar: "x1"
time:
  t_max: 0.2
  steps: 2
  order: 3
points:
  count: 4
checks:
  conserved: [H]
"""

CONTROL = """
name: positivity-control
points:
  count: 8
positivity:
  case: classical-control
  t_max: 2.0
  resolution: 10
"""


def write(tmp_path, text: str, name: str = "scenario.yaml"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def run(*args) -> int:
    return main([str(a) for a in args] + ["--quiet"])


def test_load_scenario(tmp_path):
    sc = qh.load_scenario(write(tmp_path, JACOBI))
    assert sc.name == "jacobi-small"
    assert sc.seed == 5
    assert sc.jacobi.triples == 3
    # Defaults fill in the remaining sections
    assert sc.jacobi.n_c == 1
    assert sc.time.order == 8


def test_unknown_keys():
    with pytest.raises(qh.ScenarioError):
        qh.scenario.scenario_from_dict(dict(name="x", bogus=1))
    with pytest.raises(qh.ScenarioError):
        qh.scenario.scenario_from_dict(dict(name="x", time=dict(t_max=1.0, dt=0.1)))
    with pytest.raises(qh.ScenarioError):
        qh.scenario.scenario_from_dict(dict(name="x", time=[1, 2]))


def test_invalid_values():
    with pytest.raises(qh.ScenarioError):
        qh.scenario.scenario_from_dict(dict(name="x", time=dict(steps="many")))
    with pytest.raises(qh.ScenarioError):
        qh.scenario.scenario_from_dict(dict(seed=1))


def test_overrides():
    sc = qh.scenario.scenario_from_dict(dict(name="x", seed=1))
    sc2 = qh.scenario.with_overrides(sc, seed=9, points=12)
    assert sc2.seed == 9
    assert sc2.points.count == 12
    assert sc.seed == 1
    assert qh.scenario.with_overrides(sc) == sc


def test_parse_observable():
    basis = qh.build_basis(2)
    A = qh.scenario.parse_observable({"scalar": "2 + x1", "q3": "k1"}, basis, 1)
    x1, k1 = qh.PhasePolynomial.xs(1)[0], qh.PhasePolynomial.ks(1)[0]
    expected = qh.HybridObservable.classical(basis, x1 + 2) + qh.HybridObservable.generator(basis, 2, k1)
    assert A.allclose(expected, atol=1e-14)
    with pytest.raises(qh.ScenarioError):
        qh.scenario.parse_observable({"q4": "1"}, basis, 1)
    with pytest.raises(qh.ScenarioError):
        qh.scenario.parse_observable({"scalar": "x2"}, basis, 1)


def test_subcommands():
    names = [s.cli_name for s in qh.Subcommand]
    assert names == ["evolve", "spin-orbit", "positivity", "jacobi", "uniqueness"]
    assert qh.Subcommand.from_cli("spin-orbit") == qh.Subcommand.SPIN_ORBIT
    with pytest.raises(ValueError):
        qh.Subcommand.from_cli("nope")


def test_jacobi_cli(tmp_path):
    config = write(tmp_path, JACOBI)
    out = tmp_path / "out"
    assert run("jacobi", "--config", config, "--out", out) == EXIT_OK
    summary = json.loads((out / "jacobi_summary.json").read_text())
    assert summary["seed"] == 5
    assert summary["max_residual"]["canonical/n2"] < 1e-10
    manifest = json.loads((out / qh.scenario.MANIFEST).read_text())
    assert [row["file"] for row in manifest] == ["jacobi_residuals.csv", "jacobi_summary.json"]
    assert {row["subcommand"] for row in manifest} == {"jacobi"}

    # Reruns are byte-identical
    again = tmp_path / "again"
    assert run("jacobi", "--config", config, "--out", again) == EXIT_OK
    for name in ("jacobi_residuals.csv", "jacobi_summary.json", qh.scenario.MANIFEST):
        assert (out / name).read_bytes() == (again / name).read_bytes()

    # A seed override changes the instances
    other = tmp_path / "other"
    assert run("jacobi", "--config", config, "--out", other, "--seed", 6) == EXIT_OK
    assert json.loads((other / "jacobi_summary.json").read_text())["seed"] == 6
    assert (out / "jacobi_residuals.csv").read_bytes() != (other / "jacobi_residuals.csv").read_bytes()


def test_failing_check_exit_status(tmp_path):
    out = tmp_path / "out"
    assert run("jacobi", "--config", write(tmp_path, STANDARD), "--out", out) == EXIT_CHECK
    witness = json.loads((out / "jacobi_witness_standard_n2.json").read_text())
    assert witness["searched"]["residual"] > 0
    assert witness["stored"]["residual"] == pytest.approx(2.0)
    # Artifacts and manifest are written before the failure is reported
    assert (out / qh.scenario.MANIFEST).exists()


def test_config_errors(tmp_path):
    out = tmp_path / "out"
    assert run("jacobi", "--config", tmp_path / "missing.yaml", "--out", out) == EXIT_CONFIG
    assert run("jacobi", "--config", write(tmp_path, "name: [unclosed", "bad.yaml"), "--out", out) == EXIT_CONFIG
    unseeded = JACOBI.replace("seed: 5\n", "")
    assert run("jacobi", "--config", write(tmp_path, unseeded, "unseeded.yaml"), "--out", out) == EXIT_CONFIG
    with pytest.raises(SystemExit):
        run("frobnicate", "--config", write(tmp_path, JACOBI))


def test_evolve_cli(tmp_path):
    out = tmp_path / "out"
    assert run("evolve", "--config", write(tmp_path, EVOLVE), "--out", out) == EXIT_OK
    report = json.loads((out / "evolve_conservation.json").read_text())
    assert report["picture"] == "heisenberg"
    assert report["conserved"]["H"]
    lines = (out / "evolve_trajectory.csv").read_text().splitlines()
    assert lines[0].split(",")[:4] == ["t", "point_id", "x1", "k1"]
    # Three times by four points, plus the header
    assert len(lines) == 1 + 3 * 4
    expectations = (out / "evolve_expectations.csv").read_text().splitlines()
    assert expectations[0] == "t,H,X"


def test_shared_output_directory(tmp_path):
    out = tmp_path / "out"
    assert run("evolve", "--config", write(tmp_path, EVOLVE, "evolve.yaml"), "--out", out) == EXIT_OK
    assert run("jacobi", "--config", write(tmp_path, JACOBI, "jacobi.yaml"), "--out", out) == EXIT_OK
    manifest = json.loads((out / qh.scenario.MANIFEST).read_text())
    assert {row["subcommand"] for row in manifest} == {"evolve", "jacobi"}
    files = [row["file"] for row in manifest]
    assert files == sorted(files)


def test_positivity_cli(tmp_path):
    out = tmp_path / "out"
    assert run("positivity", "--config", write(tmp_path, CONTROL), "--out", out) == EXIT_OK
    report = json.loads((out / "positivity_violation.json").read_text())
    assert report["case"] == "classical-control"
    assert report["t_star"] is None
    assert report["t_max"] == 2.0
    # Demanding a violation the case does not have fails the run
    strict = CONTROL + "  expect_violation: true\n"
    assert run("positivity", "--config", write(tmp_path, strict, "strict.yaml"), "--out", out) == EXIT_CHECK
