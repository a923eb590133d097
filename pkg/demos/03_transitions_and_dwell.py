"""Transition matrices, aggregates and stimulus-focus share.

Consecutive sample pairs build a 4x4 quadrant matrix and a 3x3 AoI
matrix. Cross-quadrant moves aggregate into four groups (toward the
stimuli, away from them, within the menu, within the stimuli), and
inter-sample gaps charge dwell time to the earlier sample's quadrant.
"""
from gazescore import (
    GazeSample,
    Quadrant,
    aggregate_transitions,
    aoi_metrics,
    build_aoi_matrix,
    build_quadrant_matrix,
    dwell_summary,
)
from gazescore.spatial import AoiLabel

Q1, Q2, Q3, Q4 = Quadrant
L, R, OUT = AoiLabel

print("1. Quadrant transition matrix for the path Q1 -> Q3 -> Q3 -> Q4 -> Q2:")
matrix = build_quadrant_matrix([Q1, Q3, Q3, Q4, Q2])
print("   counts (rows=from, cols=to, order Q1..Q4):")
for row in matrix.counts:
    print("   ", row.tolist())

agg = aggregate_transitions(matrix)
print(f"\n2. Aggregates exclude repeats: toward stimuli {agg.nsq_to_sq}, "
      f"away {agg.sq_to_nsq}, menu internal {agg.nsq_to_nsq}, "
      f"stimuli internal {agg.sq_to_sq}, total {agg.total}")

print("\n3. AoI switching metrics:")
labels = [L, L, R, OUT, R, L]
aoi = aoi_metrics(build_aoi_matrix(labels))
print(f"   {[l.value for l in labels]}")
print(f"   left/right switches {aoi.left_right_transitions}, "
      f"balance {aoi.balance:.3f}, efficiency {aoi.efficiency:.3f}")

print("\n4. Dwell times and stimulus focus (gap goes to the earlier sample):")
times = [0, 28586, 57682, 107372, 196919]
samples = [GazeSample(t, 1.0, 1.0) for t in times]
dwell = dwell_summary(samples, [Q1, Q2, Q3, Q4, Q1])
for q, ms in dwell.time_in_quadrant.items():
    print(f"   {q.value}: {ms:>6} ms")
print(f"   session {dwell.session_duration_ms} ms, "
      f"stimulus focus {dwell.stimuli_focus_pct:.1f}%")
