"""
# Artifact Writers

CSV and JSON outputs of a scenario run, plus the `manifest.json` index of every emitted file.
Floats in CSV are written with `%.17g`, JSON keys are sorted, so equal inputs give equal bytes.
"""

# Std-Lib Imports
import csv
import json
import sys
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence

# PyPi Imports
import numpy as np

# Local Imports
from ..classical import PhasePoint, Polynomial
from ..hybrid import HybridObservable

MANIFEST = "manifest.json"


def format_cell(value: Any) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return "%.17g" % float(value)
    if value is None:
        return ""
    return str(value)


def plain(value: Any) -> Any:
    """Convert numpy scalars & arrays, tuples and points into JSON-ready values"""
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return plain(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, (complex, np.complexfloating)):
        return {"re": float(value.real), "im": float(value.imag)}
    if isinstance(value, PhasePoint):
        return {"x": plain(value.x), "k": plain(value.k)}
    if isinstance(value, HybridObservable):
        return observable_json(value)
    return value


def polynomial_json(p: Polynomial) -> List[Dict[str, Any]]:
    return [{"exps": list(e), "re": float(np.real(c)), "im": float(np.imag(c))} for e, c in sorted(p.terms().items())]


def observable_json(A: HybridObservable) -> Dict[str, Any]:
    """Component terms keyed `scalar`, `q1`, ..., zero components omitted"""
    rv = {"n": A.basis.n, "hbar": A.basis.hbar, "n_c": A.n_c, "scalar": polynomial_json(A.a0)}
    for i, a in enumerate(A.avec):
        if not a.is_zero:
            rv[f"q{i + 1}"] = polynomial_json(a)
    return rv


def point_columns(n_c: int) -> List[str]:
    return [f"x{i + 1}" for i in range(n_c)] + [f"k{i + 1}" for i in range(n_c)]


def matrix_columns(n: int) -> List[str]:
    cols = []
    for a in range(n):
        for b in range(n):
            cols += [f"re(m{a + 1}{b + 1})", f"im(m{a + 1}{b + 1})"]
    return cols


def matrix_cells(mat: np.ndarray) -> List[float]:
    """Row-major (re, im) pairs of an n×n matrix"""
    flat = np.asarray(mat, dtype=complex).reshape(-1)
    return [v for z in flat for v in (float(z.real), float(z.imag))]


class ArtifactWriter:
    """
    # Artifact Writer

    Writes files into `out` for one run of `subcommand`, recording each in the manifest.
    Existing manifest rows for other files are kept, so several subcommands may share a directory.
    """

    def __init__(self, out: Path, subcommand: str, config_hash: str, quiet: bool = False):
        self.out = Path(out)
        self.subcommand = subcommand
        self.config_hash = config_hash
        self.quiet = quiet
        self.files: List[str] = list()

    def _path(self, name: str) -> Path:
        self.out.mkdir(parents=True, exist_ok=True)
        if name not in self.files:
            self.files.append(name)
        return self.out / name

    def note(self, msg: str) -> None:
        if not self.quiet:
            print(msg, file=sys.stdout)

    def csv(self, name: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
        path = self._path(name)
        with path.open("w", encoding="utf-8", newline="") as f:
            w = csv.writer(f, lineterminator="\n")
            w.writerow(header)
            for row in rows:
                if len(row) != len(header):
                    raise ValueError(f"Row of {len(row)} cells for {len(header)} columns in {name}")
                w.writerow([format_cell(v) for v in row])
        self.note(f"wrote {path}")
        return path

    def json(self, name: str, data: Any) -> Path:
        path = self._path(name)
        path.write_text(json.dumps(plain(data), sort_keys=True, indent=2) + "\n", encoding="utf-8")
        self.note(f"wrote {path}")
        return path

    def manifest(self) -> Path:
        """Merge this run's files into `manifest.json`, ordered by file name"""
        path = self.out / MANIFEST
        self.out.mkdir(parents=True, exist_ok=True)
        rows = list()
        if path.exists():
            rows = [r for r in json.loads(path.read_text(encoding="utf-8")) if r.get("file") not in self.files]
        rows += [dict(file=name, subcommand=self.subcommand, config_hash=self.config_hash) for name in self.files]
        rows.sort(key=lambda r: r["file"])
        path.write_text(json.dumps(rows, sort_keys=True, indent=2) + "\n", encoding="utf-8")
        return path
