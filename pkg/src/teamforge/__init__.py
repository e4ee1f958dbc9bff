"""Iterative team formation from peer-evaluated Belbin roles.

The package keeps a Bayesian posterior over each student's predominant
role, values candidate teams by expected role heterogeneity, and partitions
a classroom into the team structure maximizing the summed expected value:
exactly for small cohorts, by anytime local search beyond that. A feedback
loop (activities, peer votes, posterior refresh) closes the cycle.
"""

from .bayes import (
    RolePosterior,
    SmoothingConfig,
    likelihood,
    map_role,
    posterior,
    posteriors_for_roster,
    prior,
    uniform_posterior,
)
from .errors import (
    CapacityExceeded,
    DuplicateStudent,
    Infeasible,
    InvalidDistribution,
    InvalidState,
    NotFound,
    NotTeammates,
    ParseError,
    SchemaVersionMismatch,
    SelfEvaluation,
    TeamForgeError,
    UnknownRole,
)
from .pipeline import (
    Activity,
    ActivityStatus,
    AllocationConfig,
    allocate,
    convergence_status,
    ingest_feedback,
    plan_allocation,
)
from .roles import (
    NUM_ROLES,
    ROLES,
    EvaluationHistory,
    EvaluationRecord,
    Role,
    Roster,
    StudentId,
    Team,
    TeamStructure,
    canonical_structure,
    make_roster,
    role_from_label,
    validate_structure,
)
from .sim import ConvergenceReport, SyntheticStudent, run_rounds, synth_cohort
from .solver import (
    SizeBounds,
    SolveBudget,
    SolveReport,
    feasible,
    random_structure,
    size_profile,
    solve_exact,
    solve_heuristic,
    structure_value,
)
from .storage import TeamStore, import_evaluations_csv, import_roster_csv
from .value import (
    expected_team_value,
    expected_team_value_bruteforce,
    repeat_count,
    team_value,
)

__version__ = "0.1.0"
