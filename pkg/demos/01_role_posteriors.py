"""How peer votes turn into role posteriors.

Every student carries a probability distribution over the eight Belbin
roles. With no votes the distribution is uniform (Laplace smoothing); each
vote shifts mass toward the voted role, moderated by a classroom-wide
prior built from everyone's votes.
"""

from teamforge import (
    EvaluationHistory,
    EvaluationRecord,
    Role,
    likelihood,
    map_role,
    posterior,
    prior,
)

history = EvaluationHistory()

print("== before any feedback ==")
p = posterior(history, "ana")
for role in Role:
    print(f"  {role.label:<22} {p[role]:.4f}")
print(f"  MAP role: {map_role(p).label}  (uniform; ties go to the lowest ordinal)")

# Ana's teammates file their impressions after the first activity: two see
# a Plant (idea generator), one sees a MonitorEvaluator.
history = history.extend([
    EvaluationRecord("activity-1", "bruno", "ana", Role.Plant, 1),
    EvaluationRecord("activity-1", "carla", "ana", Role.Plant, 2),
    EvaluationRecord("activity-1", "duc", "ana", Role.MonitorEvaluator, 3),
])

print("\n== after activity 1 (votes: Plant x2, MonitorEvaluator x1) ==")
print(f"  likelihood(Plant)            = {likelihood(history, 'ana', Role.Plant):.4f}  (smoothed 3/11)")
print(f"  prior(Plant)                 = {prior(history, Role.Plant):.4f}")
p = posterior(history, "ana")
for role in Role:
    bar = "#" * round(p[role] * 40)
    print(f"  {role.label:<22} {p[role]:.4f} {bar}")
print(f"  MAP role: {map_role(p).label}")

# More consistent feedback sharpens the picture; a stray contrary vote
# barely moves it.
history = history.extend([
    EvaluationRecord("activity-2", "bruno", "ana", Role.Plant, 4),
    EvaluationRecord("activity-2", "erik", "ana", Role.Plant, 5),
    EvaluationRecord("activity-2", "carla", "ana", Role.Shaper, 6),
])

print("\n== after activity 2 (more Plant votes) ==")
p = posterior(history, "ana")
for role in Role:
    bar = "#" * round(p[role] * 40)
    print(f"  {role.label:<22} {p[role]:.4f} {bar}")
print(f"  MAP role: {map_role(p).label}")

# A correction: Carla re-submits her activity-2 vote. Last write wins, the
# history does not grow.
before = len(history)
history = history.add(EvaluationRecord("activity-2", "carla", "ana", Role.Plant, 7))
print(f"\n== corrected vote: history length {before} -> {len(history)} ==")
print(f"  posterior(Plant) now {posterior(history, 'ana')[Role.Plant]:.4f}")
