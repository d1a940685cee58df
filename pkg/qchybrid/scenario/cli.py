"""
# Command-Line Interface

```
qchybrid SUBCOMMAND --config PATH [--out DIR] [--seed N] [--points N] [--quiet]
```

Subcommands: `evolve`, `spin-orbit`, `positivity`, `jacobi`, `uniqueness`.
Exit status 0 on success, 2 when a check fails, 1 for an invalid scenario.
"""

# Std-Lib Imports
import sys
import argparse
from pathlib import Path
from typing import Optional, Sequence

# Local Imports
from ..params import config_hash
from .config import ScenarioError, load_scenario, with_overrides
from .runners import CheckFailure, Subcommand
from .writers import ArtifactWriter

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_CHECK = 2


def parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qchybrid", description="Quantum-classical hybrid dynamics scenarios")
    p.add_argument("subcommand", choices=[s.cli_name for s in Subcommand])
    p.add_argument("--config", required=True, type=Path, help="Scenario YAML file")
    p.add_argument("--out", type=Path, default=None, help="Output directory. Overrides the scenario's `output`")
    p.add_argument("--seed", type=int, default=None, help="Random seed. Overrides the scenario's `seed`")
    p.add_argument("--points", type=int, default=None, help="Sample point count. Overrides `points.count`")
    p.add_argument("--quiet", action="store_true", help="Suppress progress output")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = parser().parse_args(argv)
    sub = Subcommand.from_cli(args.subcommand)
    try:
        scenario = with_overrides(load_scenario(args.config), seed=args.seed, points=args.points)
        out = args.out if args.out is not None else Path(scenario.output)
        writer = ArtifactWriter(out, sub.cli_name, config_hash(scenario), quiet=args.quiet)
        try:
            sub.run(scenario, writer)
        finally:
            if writer.files:
                writer.manifest()
    except ScenarioError as e:
        print(f"qchybrid: invalid scenario: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except CheckFailure as e:
        print(f"qchybrid: check failed: {e}", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK
