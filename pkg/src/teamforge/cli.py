"""Batch command-line interface: allocate, posterior, simulate.

Exit codes are part of the contract: 0 success, 2 infeasible roster/bounds,
3 input parse error, 4 invalid parameters. For fixed inputs and seed the
standard output is byte-identical across runs; line formats:

  allocate    ->  ``method=<random|exact|heuristic>`` and ``objective=<value:.9f>``
  posterior   ->  eight ``<RoleLabel> <probability:.6f>`` lines, then ``map <RoleLabel>``
  simulate    ->  a fixed-width table ``round  map_match  map_stable  objective``
"""

from __future__ import annotations

import json
import sys

import click

from .bayes import map_role, posterior
from .errors import Infeasible, ParseError, TeamForgeError, UnknownRole
from .pipeline import AllocationConfig, plan_allocation
from .roles import ROLES, EvaluationHistory
from .sim import SIM_CONFIG, run_rounds, synth_cohort
from .solver import SizeBounds, SolveBudget
from .storage import import_evaluations_csv, read_roster_csv

EXIT_INFEASIBLE = 2
EXIT_PARSE = 3
EXIT_PARAMS = 4


def _fail(code: int, message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


@click.group()
def main() -> None:
    """Iterative Belbin-role team formation."""


@main.command()
@click.option("--roster", "roster_path", required=True, type=click.Path(exists=True))
@click.option("--history", "history_path", required=True, type=click.Path(exists=True))
@click.option("--min", "size_min", required=True, type=int)
@click.option("--max", "size_max", required=True, type=int)
@click.option("--seed", default=0, type=int, show_default=True)
@click.option("--exact-cap", default=20, type=int, show_default=True)
@click.option("--out", "out_path", required=True, type=click.Path())
def allocate(roster_path: str, history_path: str, size_min: int, size_max: int,
             seed: int, exact_cap: int, out_path: str) -> None:
    """Partition a roster into teams using the accumulated peer evaluations."""
    try:
        roster, _ = read_roster_csv(roster_path)
        records = import_evaluations_csv(history_path)
    except (ParseError, UnknownRole, TeamForgeError) as exc:
        _fail(EXIT_PARSE, str(exc))
    history = EvaluationHistory.from_records(records)

    try:
        bounds = SizeBounds(size_min, size_max)
    except ValueError as exc:
        _fail(EXIT_PARAMS, str(exc))
    cfg = AllocationConfig(exact_cap=exact_cap, budget=SolveBudget(max_iterations=500))
    try:
        report = plan_allocation(roster, history, bounds, seed=seed, cfg=cfg)
    except Infeasible as exc:
        _fail(EXIT_INFEASIBLE, str(exc))

    with open(out_path, "w", encoding="utf-8") as fh:
        json.dump({
            "method": report.method,
            "objective": report.value,
            "optimal": report.optimal,
            "iterations": report.iterations,
            "seed": seed,
            "size_min": size_min,
            "size_max": size_max,
            "teams": [list(team.ordered_members) for team in report.structure],
        }, fh, indent=2, sort_keys=True)
        fh.write("\n")

    click.echo(f"method={report.method}")
    click.echo(f"objective={report.value:.9f}")


@main.command("posterior")
@click.option("--history", "history_path", required=True, type=click.Path(exists=True))
@click.option("--student", "student_id", required=True)
def posterior_cmd(history_path: str, student_id: str) -> None:
    """Print a student's role probabilities and MAP role."""
    try:
        records = import_evaluations_csv(history_path)
    except (ParseError, UnknownRole, TeamForgeError) as exc:
        _fail(EXIT_PARSE, str(exc))
    history = EvaluationHistory.from_records(records)
    probs = posterior(history, student_id)
    for role in ROLES:
        click.echo(f"{role.label} {probs[role]:.6f}")
    click.echo(f"map {map_role(probs).label}")


@main.command()
@click.option("--students", required=True, type=int)
@click.option("--rounds", required=True, type=int)
@click.option("--noise", required=True, type=float,
              help="Probability a vote misses the true role (accuracy = 1 - noise).")
@click.option("--seed", default=0, type=int, show_default=True)
@click.option("--min", "size_min", default=4, type=int, show_default=True)
@click.option("--max", "size_max", default=6, type=int, show_default=True)
def simulate(students: int, rounds: int, noise: float, seed: int,
             size_min: int, size_max: int) -> None:
    """Run the closed loop on a synthetic cohort and print convergence rates."""
    if not 0.0 <= noise <= 1.0:
        _fail(EXIT_PARAMS, f"noise must be in [0, 1], got {noise}")
    if students < 1 or rounds < 1:
        _fail(EXIT_PARAMS, "students and rounds must be >= 1")
    try:
        bounds = SizeBounds(size_min, size_max)
    except ValueError as exc:
        _fail(EXIT_PARAMS, str(exc))

    cohort = synth_cohort(students, None, accuracy=1.0 - noise, seed=seed)
    try:
        report = run_rounds(cohort, rounds, bounds, seed=seed, cfg=SIM_CONFIG)
    except Infeasible as exc:
        _fail(EXIT_INFEASIBLE, str(exc))

    click.echo("round  map_match  map_stable  objective")
    for i in range(report.rounds):
        click.echo(f"{i + 1:<5d}  {report.true_match[i]:>9.6f}  "
                   f"{report.stable[i]:>10.6f}  {report.objective[i]:>9.6f}")
    click.echo(f"final map_match={report.true_match[-1]:.6f}")


if __name__ == "__main__":
    main()
