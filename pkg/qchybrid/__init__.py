"""
# qchybrid

Quantum-classical hybrid dynamics: the canonical hybrid bracket for finite-dimensional
quantum sectors, its Schrödinger-picture adjoint, evolution in both pictures,
and numerical checks of the bracket's algebraic properties.
"""

__version__ = "0.1.0"

from .default import Default
from .params import paramclass, Param, isparamclass, to_json, config_hash
from .datatype import datatype

from .classical import *
from .su import *
from .hybrid import *
from .models import SpinOrbit, angular_momentum, spin, spin_dot, observables
from .dynamics import *
from .positivity import *
from .uniqueness import *
from . import instances
from . import scenario
from .scenario import Scenario, ScenarioError, Subcommand, load_scenario

# Resolve all forward type-references
from .datatype import _update_forward_refs

_update_forward_refs()
