"""The full loop on a synthetic classroom: allocate, vote, learn, repeat.

Round 1 is allocated randomly (no evidence yet). After each round every
student rates every teammate, posteriors update, and later rounds allocate
from the learned distributions. Watch MAP roles converge to ground truth
and the structure objective climb.
"""

from teamforge import SizeBounds
from teamforge.sim import balanced_cohort, run_rounds, synth_cohort

print("== balanced cohort, 30 students, 70% vote accuracy, 4 rounds ==")
cohort = balanced_cohort(30, accuracy=0.7)
report = run_rounds(cohort, rounds=4, bounds=SizeBounds(4, 6), seed=7)

print("round  MAP==true  MAP stable  objective")
for i in range(report.rounds):
    print(f"{i + 1:<5d}  {report.true_match[i]:>9.3f}  {report.stable[i]:>10.3f}"
          f"  {report.objective[i]:>9.3f}")

print("\n== same loop with noisier voters (accuracy 0.4) ==")
noisy = balanced_cohort(30, accuracy=0.4)
report = run_rounds(noisy, rounds=4, bounds=SizeBounds(4, 6), seed=7)
print("round  MAP==true  MAP stable  objective")
for i in range(report.rounds):
    print(f"{i + 1:<5d}  {report.true_match[i]:>9.3f}  {report.stable[i]:>10.3f}"
          f"  {report.objective[i]:>9.3f}")

print("\n== skewed cohort: thinking roles dominate the classroom ==")
from teamforge import Role

weights = {role: 1.0 for role in Role}
weights[Role.Plant] = 4.0
weights[Role.MonitorEvaluator] = 3.0
skewed = synth_cohort(30, weights, accuracy=0.7, seed=3)
report = run_rounds(skewed, rounds=3, bounds=SizeBounds(4, 6), seed=3)
print("round  MAP==true  objective")
for i in range(report.rounds):
    print(f"{i + 1:<5d}  {report.true_match[i]:>9.3f}  {report.objective[i]:>9.3f}")
print("(with many same-role students, repeats are unavoidable and the")
print(" objective tops out lower than in the balanced classroom)")
