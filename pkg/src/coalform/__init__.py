"""Non-cooperative coalition-structure formation games.

Players pick a coalition structure and a strategy label; a mechanism turns
the conflicting picks into one final structure; equilibria of the resulting
finite game are computed exactly (two players) or numerically.
"""
from .equilibrium import (
    EquilibriumResult,
    best_response_value,
    expected_utility,
    logit_path,
    replicator_dynamics,
    solve,
    solve_pure,
    solve_support_enumeration,
    structure_distribution,
    verify_equilibrium,
)
from .errors import CoalformError, NonConvergence, ValidationError
from .game import Choice, Game, GameSpec, InducedGame, build_game, induced_normal_form
from .mechanism import Mechanism, Outcome, Unanimity, implementable_structures, preimage_count
from .partitions import (
    CoalitionStructure,
    YoungDiagram,
    allocations_of_diagram,
    check_nesting,
    count_structures,
    enumerate_diagrams,
    enumerate_structures,
)
from .stability import analyze_family, global_stability, local_stability, strong_nash_criterion

__version__ = "0.1.0"
