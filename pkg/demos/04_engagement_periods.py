"""Engagement period detection and temporal efficiency.

An engagement period is a maximal run of same-AoI samples spanning at
least 400 ms; runs of 2500 ms or more count as sustained attention.
Glances shorter than the minimum are filtered out, and any label change
(including a dropout to outside) ends the run.
"""
from gazescore import detect_engagement_periods, temporal_metrics
from gazescore.spatial import AoiLabel

L, R, OUT = AoiLabel


def track(*segments):
    """Build (t, label) samples at 50 ms steps from (label, count) pairs."""
    samples, t = [], 0
    for label, count in segments:
        for _ in range(count):
            samples.append((t, label))
            t += 50
    return samples


samples = track(
    (OUT, 4),   # scanning the scene
    (L, 30),    # left dwell, interrupted by a tracker dropout...
    (OUT, 2),
    (L, 28),    # ...then resumed on the same object
    (OUT, 3),
    (R, 12),    # 550 ms on the right object: a period, not sustained
    (OUT, 2),
    (L, 4),     # 150 ms glance: filtered
    (OUT, 5),
)

periods = detect_engagement_periods(samples)
print("Detected periods:")
for p in periods:
    kind = "sustained" if p.sustained else "brief"
    print(f"   {p.aoi.value:>5}  [{p.t_start_ms:>5}, {p.t_end_ms:>5}] ms  "
          f"duration {p.duration_ms:>5} ms  ({kind})")

duration = samples[-1][0]
metrics = temporal_metrics(periods, duration)
print(f"\nSession duration {duration} ms")
print(f"   engagement share     {metrics.eta_temporal:.3f}")
print(f"   mean period duration {metrics.mu_engagement_ms:.0f} ms")
print(f"   sustained proportion {metrics.sigma_sustained:.2f} "
      f"({metrics.sustained_count} of {metrics.period_count})")

print("\nA dropout-tolerant read of the same data bridges short outside gaps:")
bridged = detect_engagement_periods(samples, gap_tolerance_ms=200)
print(f"   strict: {len(periods)} periods, tolerant: {len(bridged)} periods")
