"""The level-adaptive score, term by term.

The base score weighs transitions toward the stimuli (+3 each) against
moves away from them (-1.5 each), adds a level-specific bonus, an AoI
quality term, and a stimulus-focus term with level-specific thresholds.
A bounded temporal impact then shifts the base score, scaled by a
multiplier that shrinks as the base score grows, and the result clamps
to [0, 100].
"""
from gazescore import (
    LevelFeatures,
    ScoringConfig,
    TemporalMetrics,
    bonus_aoi,
    bonus_duration,
    bonus_sustained,
    final_score,
    penalty_excess,
    psi_focus,
    temporal_multiplier,
)

print("1. Focus term at each level (threshold / weight / band bonus):")
for sf in (30, 55, 70):
    row = "  ".join(f"level {lv}: {psi_focus(sf, lv):6.2f}" for lv in (1, 2, 3))
    print(f"   focus {sf:>2}% -> {row}")

print("\n2. Temporal bonuses and the excess penalty:")
print(f"   engagement share 0.50 -> {bonus_aoi(0.50):+.2f}")
print(f"   engagement share 0.05 -> {bonus_aoi(0.05):+.2f}")
print(f"   3 sustained periods   -> {bonus_sustained(3):+.2f}")
print(f"   mean period 10 s      -> {bonus_duration(10):+.2f}")
print(f"   mean period 1 s       -> {bonus_duration(1):+.2f}")
print(f"   12 periods            -> {-penalty_excess(12):+.2f}")

print("\n3. The multiplier steps down as the base score rises:")
for base in (40, 60, 80, 90):
    print(f"   base {base} -> multiplier {temporal_multiplier(base)}")

print("\n4. A full worked breakdown (level 1):")
features = LevelFeatures(
    level=1,
    nsq_to_sq=10,
    sq_to_nsq=4,
    focus_aoi_pct=40.9,
    interactions=111,
    aoi_transitions=140,
    aoi_switches=28,
    aoi_efficiency=0.2,
    sf_pct=70.7,
    temporal=TemporalMetrics(
        eta_temporal=0.5,
        mu_engagement_ms=10_000,
        sigma_sustained=0.5,
        period_count=6,
        sustained_count=3,
        session_duration_ms=200_000,
    ),
)
breakdown = final_score(features, ScoringConfig())
print(f"   base score        {breakdown.base_score:8.2f}")
print(f"     level bonus     {breakdown.level_bonus:8.2f}")
print(f"     focus term      {breakdown.focus_score:8.2f}")
print(f"   temporal impact   {breakdown.temporal_impact:8.2f} (capped at 15)")
print(f"   multiplier        {breakdown.multiplier:8.2f}")
print(f"   final score       {breakdown.final_score:8.2f} (clamped to [0, 100])")
