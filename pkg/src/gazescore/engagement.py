"""Engagement period detection and temporal efficiency metrics.

An engagement period is a maximal run of consecutive samples sharing the
same non-outside AoI label whose span (last timestamp minus first) reaches
the minimum duration. Periods at or above the sustained threshold are
flagged as sustained attention.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

from .spatial import AoiLabel

MIN_DURATION_MS = 400
SUSTAINED_MS = 2500


@dataclass(frozen=True)
class EngagementPeriod:
    t_start_ms: int
    t_end_ms: int
    aoi: AoiLabel
    sustained: bool

    @property
    def duration_ms(self) -> int:
        return self.t_end_ms - self.t_start_ms


@dataclass(frozen=True)
class TemporalMetrics:
    eta_temporal: float
    mu_engagement_ms: float
    sigma_sustained: float
    period_count: int
    sustained_count: int
    session_duration_ms: int


def detect_engagement_periods(
    labeled_samples: Sequence[tuple[int, AoiLabel]],
    min_duration_ms: int = MIN_DURATION_MS,
    sustained_ms: int = SUSTAINED_MS,
    gap_tolerance_ms: int = 0,
) -> list[EngagementPeriod]:
    """Maximal same-AoI runs with span >= min_duration_ms, time ordered.

    Any sample with a different label ends the run. With a positive
    ``gap_tolerance_ms``, outside-labeled interruptions no longer than
    the tolerance are bridged (for data with tracker dropouts); a switch
    to the other AoI always terminates. Default tolerance is 0, the
    strict reading.
    """
    if min_duration_ms > sustained_ms:
        raise ValueError(
            f"minimum duration {min_duration_ms} exceeds sustained threshold {sustained_ms}"
        )
    periods: list[EngagementPeriod] = []
    side: AoiLabel | None = None
    run_start = 0
    run_last = 0

    def close_run() -> None:
        if side is not None and run_last - run_start >= min_duration_ms:
            periods.append(
                EngagementPeriod(
                    t_start_ms=run_start,
                    t_end_ms=run_last,
                    aoi=side,
                    sustained=(run_last - run_start) >= sustained_ms,
                )
            )

    i = 0
    n = len(labeled_samples)
    while i < n:
        t, label = labeled_samples[i]
        if label is AoiLabel.OUTSIDE:
            if side is not None and gap_tolerance_ms > 0:
                # Bridge a short dropout if the same side resumes in time.
                j = i
                while (
                    j < n
                    and labeled_samples[j][1] is AoiLabel.OUTSIDE
                    and labeled_samples[j][0] - run_last <= gap_tolerance_ms
                ):
                    j += 1
                if (
                    j < n
                    and labeled_samples[j][1] is side
                    and labeled_samples[j][0] - run_last <= gap_tolerance_ms
                ):
                    i = j
                    continue
            close_run()
            side = None
        elif label is side:
            run_last = t
        else:
            close_run()
            side = label
            run_start = t
            run_last = t
        i += 1
    close_run()
    return periods


def classify_sustained(
    periods: Sequence[EngagementPeriod], sustained_ms: int = SUSTAINED_MS
) -> list[EngagementPeriod]:
    """Re-flag periods against a sustained threshold (comparison is >=)."""
    return [replace(p, sustained=p.duration_ms >= sustained_ms) for p in periods]


def temporal_metrics(
    periods: Sequence[EngagementPeriod], session_duration_ms: int
) -> TemporalMetrics:
    """Engagement share, mean period duration and sustained proportion.

    All three ratios fall back to 0 when their denominator is 0.
    """
    if session_duration_ms < 0:
        raise ValueError(f"session duration must be >= 0, got {session_duration_ms}")
    total = sum(p.duration_ms for p in periods)
    count = len(periods)
    sustained = sum(1 for p in periods if p.sustained)
    return TemporalMetrics(
        eta_temporal=total / session_duration_ms if session_duration_ms > 0 else 0.0,
        mu_engagement_ms=total / count if count else 0.0,
        sigma_sustained=sustained / count if count else 0.0,
        period_count=count,
        sustained_count=sustained,
        session_duration_ms=session_duration_ms,
    )
