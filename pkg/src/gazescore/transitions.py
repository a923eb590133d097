"""Transition matrices, dwell times and focus shares for a labeled session.

Both matrices count consecutive label pairs including repeats (diagonal
cells), so total matrix mass is n-1 for n samples. Cross-quadrant
aggregates exclude the diagonal.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .ingest import GazeSample
from .spatial import AoiLabel, Quadrant

_QUADRANT_INDEX = {q: i for i, q in enumerate(Quadrant)}
_AOI_INDEX = {a: i for i, a in enumerate(AoiLabel)}

QUADRANT_ORDER = tuple(Quadrant)
AOI_ORDER = tuple(AoiLabel)


@dataclass(frozen=True)
class QuadrantTransitionMatrix:
    """4x4 counts indexed (from, to) in Q1..Q4 order."""

    counts: np.ndarray

    def count(self, source: Quadrant, target: Quadrant) -> int:
        return int(self.counts[_QUADRANT_INDEX[source], _QUADRANT_INDEX[target]])


@dataclass(frozen=True)
class AoITransitionMatrix:
    """3x3 counts indexed (from, to) in left/right/outside order."""

    counts: np.ndarray

    def count(self, source: AoiLabel, target: AoiLabel) -> int:
        return int(self.counts[_AOI_INDEX[source], _AOI_INDEX[target]])


@dataclass(frozen=True)
class TransitionAggregates:
    nsq_to_sq: int
    sq_to_nsq: int
    nsq_to_nsq: int
    sq_to_sq: int
    total: int


@dataclass(frozen=True)
class AoiMetrics:
    left_right_transitions: int
    balance: float
    efficiency: float
    fixations_left: int
    fixations_right: int
    aoi_total: int


@dataclass(frozen=True)
class DwellSummary:
    time_in_quadrant: dict[Quadrant, int]
    session_duration_ms: int
    stimuli_focus_pct: float


def _pair_counts(indices: Sequence[int], size: int) -> np.ndarray:
    counts = np.zeros((size, size), dtype=np.int64)
    for a, b in zip(indices, indices[1:]):
        counts[a, b] += 1
    return counts


def build_quadrant_matrix(labels: Sequence[Quadrant]) -> QuadrantTransitionMatrix:
    """Count consecutive quadrant pairs; empty/singleton input gives zeros."""
    indices = [_QUADRANT_INDEX[q] for q in labels]
    return QuadrantTransitionMatrix(_pair_counts(indices, 4))


def build_aoi_matrix(labels: Sequence[AoiLabel]) -> AoITransitionMatrix:
    indices = [_AOI_INDEX[a] for a in labels]
    return AoITransitionMatrix(_pair_counts(indices, 3))


def aggregate_transitions(matrix: QuadrantTransitionMatrix) -> TransitionAggregates:
    """Group the cross-quadrant cells; diagonal cells count nowhere.

    nsq_to_sq sums the four {Q1,Q2} -> {Q3,Q4} cells, sq_to_nsq the
    reverse four, nsq_to_nsq the Q1<->Q2 pair, sq_to_sq the Q3<->Q4
    pair; the total is the sum of all four groups.
    """
    c = matrix.counts
    nsq = [0, 1]
    sq = [2, 3]
    nsq_to_sq = int(c[np.ix_(nsq, sq)].sum())
    sq_to_nsq = int(c[np.ix_(sq, nsq)].sum())
    nsq_to_nsq = int(c[0, 1] + c[1, 0])
    sq_to_sq = int(c[2, 3] + c[3, 2])
    return TransitionAggregates(
        nsq_to_sq=nsq_to_sq,
        sq_to_nsq=sq_to_nsq,
        nsq_to_nsq=nsq_to_nsq,
        sq_to_sq=sq_to_sq,
        total=nsq_to_sq + sq_to_nsq + nsq_to_nsq + sq_to_sq,
    )


def aoi_metrics(matrix: AoITransitionMatrix, changes_only: bool = False) -> AoiMetrics:
    """Left/right switching metrics from the AoI matrix.

    ``changes_only`` narrows the total-mass denominator to label-change
    cells (off-diagonal) instead of all consecutive pairs.
    """
    c = matrix.counts
    li, ri = _AOI_INDEX[AoiLabel.LEFT], _AOI_INDEX[AoiLabel.RIGHT]
    switches = int(c[li, ri] + c[ri, li])
    fixations_left = int(c[li, :].sum())
    fixations_right = int(c[ri, :].sum())
    total = int(c.sum() - np.trace(c)) if changes_only else int(c.sum())
    balance = abs(fixations_left - fixations_right) / max(fixations_left + fixations_right, 1)
    efficiency = switches / total if total > 0 else 0.0
    return AoiMetrics(
        left_right_transitions=switches,
        balance=balance,
        efficiency=efficiency,
        fixations_left=fixations_left,
        fixations_right=fixations_right,
        aoi_total=total,
    )


def dwell_summary(
    samples: Sequence[GazeSample], labels: Sequence[Quadrant]
) -> DwellSummary:
    """Per-quadrant dwell times with each gap charged to the earlier sample.

    Integer arithmetic throughout, so the per-quadrant times sum to the
    session duration exactly. Fewer than two samples means no elapsed
    time: all durations zero and a zero focus share.
    """
    if len(samples) != len(labels):
        raise ValueError(f"{len(samples)} samples vs {len(labels)} labels")
    time_in = {q: 0 for q in Quadrant}
    if len(samples) < 2:
        return DwellSummary(time_in_quadrant=time_in, session_duration_ms=0, stimuli_focus_pct=0.0)
    for i in range(len(samples) - 1):
        time_in[labels[i]] += samples[i + 1].t_ms - samples[i].t_ms
    duration = samples[-1].t_ms - samples[0].t_ms
    stimulus_ms = time_in[Quadrant.Q3] + time_in[Quadrant.Q4]
    focus = 100.0 * stimulus_ms / duration if duration > 0 else 0.0
    return DwellSummary(
        time_in_quadrant=time_in, session_duration_ms=duration, stimuli_focus_pct=focus
    )


def aoi_sample_share_pct(labels: Sequence[AoiLabel]) -> float:
    """Share of samples inside either AoI, in percent."""
    if not labels:
        return 0.0
    inside = sum(1 for label in labels if label is not AoiLabel.OUTSIDE)
    return 100.0 * inside / len(labels)


def aoi_time_share_pct(
    samples: Sequence[GazeSample], labels: Sequence[AoiLabel]
) -> float:
    """Share of session time spent inside either AoI, in percent.

    Uses the same earlier-sample gap attribution as dwell_summary. This
    is the dwell-based counterpart of the engagement-period ratio and is
    reported separately from it.
    """
    if len(samples) != len(labels):
        raise ValueError(f"{len(samples)} samples vs {len(labels)} labels")
    if len(samples) < 2:
        return 0.0
    inside_ms = 0
    for i in range(len(samples) - 1):
        if labels[i] is not AoiLabel.OUTSIDE:
            inside_ms += samples[i + 1].t_ms - samples[i].t_ms
    duration = samples[-1].t_ms - samples[0].t_ms
    return 100.0 * inside_ms / duration if duration > 0 else 0.0
