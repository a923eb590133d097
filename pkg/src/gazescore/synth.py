"""Deterministic synthetic gaze sessions with controllable statistics.

Sessions are built constructively: dwell blocks, engagement runs and
transition boundaries are placed to hit the requested counts exactly,
and seeded coordinate jitter stays strictly inside quadrant and AoI
boundaries so labels are unaffected. The same seed always yields the
same session.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .ingest import (
    GameEvent,
    GazeSample,
    LevelSession,
    ObjectPlacement,
    SessionSet,
    merge_levels,
    write_level_csv,
)
from .spatial import AoiLabel, Quadrant, ScreenGeometry

GEOMETRY = ScreenGeometry()

LEFT_OBJECT = (480.0, 810.0)
RIGHT_OBJECT = (1440.0, 810.0)
AOI_W = 200.0
AOI_H = 150.0

# Filler sample boxes per quadrant (screen coordinates, y down), chosen
# to avoid both AoI rectangles and all quadrant boundaries.
_SAFE_BOX = {
    Quadrant.Q1: (100.0, 860.0, 60.0, 480.0),
    Quadrant.Q2: (1060.0, 1820.0, 60.0, 480.0),
    Quadrant.Q3: (60.0, 340.0, 580.0, 700.0),
    Quadrant.Q4: (1580.0, 1860.0, 580.0, 700.0),
}


class ProfileError(ValueError):
    """Infeasible or inconsistent synthesis profile."""


@dataclass(frozen=True)
class SynthProfile:
    seed: int = 0
    level: int = 1
    duration_ms: int = 60000
    sample_interval_ms: int = 16
    target_sf_pct: float = 60.0
    target_aoi_dwell_share: float = 0.25
    n_objects: int = 4
    engagement_period_lengths_ms: tuple[int, ...] = (3000, 2600, 800)
    event_accuracy: tuple[float, float] = (0.8, 0.9)
    n_clicks: int = 12
    n_answers: int = 20
    noise_px: float = 6.0
    quadrant_dwell_ms: tuple[int, int, int, int] | None = None
    student_id: str = "SYNTH"

    def __post_init__(self) -> None:
        if self.level not in (1, 2, 3):
            raise ProfileError(f"level must be 1, 2 or 3, got {self.level}")
        if self.duration_ms <= 0 or self.sample_interval_ms <= 0:
            raise ProfileError("duration and sample interval must be positive")
        if not 0 <= self.target_sf_pct <= 100:
            raise ProfileError("target_sf_pct must lie in [0, 100]")
        if not 0 <= self.target_aoi_dwell_share <= 1:
            raise ProfileError("target_aoi_dwell_share must lie in [0, 1]")
        for p in self.event_accuracy:
            if not 0 <= p <= 1:
                raise ProfileError("event accuracy probabilities must lie in [0, 1]")
        if any(length <= 0 for length in self.engagement_period_lengths_ms):
            raise ProfileError("engagement period lengths must be positive")
        if self.noise_px < 0:
            raise ProfileError("noise_px must be >= 0")
        if self.n_objects < 1:
            raise ProfileError("n_objects must be >= 1")


@dataclass(frozen=True)
class _Run:
    """A run of consecutive samples sharing a quadrant and AoI state.

    ``side=None`` means outside any AoI (filler). ``exact_span_ms``
    forces the run to span exactly that many ms by adding one off-grid
    sample at the end when the span is not a grid multiple.
    """

    quadrant: Quadrant
    side: AoiLabel | None
    n: int = 0
    exact_span_ms: int | None = None

    def sample_count(self, dt: int) -> int:
        if self.exact_span_ms is None:
            return self.n
        k = self.exact_span_ms // dt
        return k + (2 if self.exact_span_ms % dt else 1)


def _object_for(side: AoiLabel) -> tuple[float, float]:
    return LEFT_OBJECT if side is AoiLabel.LEFT else RIGHT_OBJECT


def _compile(
    runs: list[_Run], dt: int, rng: np.random.Generator, noise_px: float
) -> tuple[list[GazeSample], list[ObjectPlacement]]:
    """Emit samples and placements for a run list on a dt grid."""
    samples: list[GazeSample] = []
    placements: list[ObjectPlacement] = []
    active: AoiLabel | None = None
    t = 0
    for run in runs:
        if run.exact_span_ms is None:
            offsets = [i * dt for i in range(run.n)]
            footprint = run.n * dt
        else:
            span = run.exact_span_ms
            offsets = [i * dt for i in range(span // dt + 1)]
            if span % dt:
                offsets.append(span)
            footprint = span + dt
        for j, off in enumerate(offsets):
            ts = t + off
            if run.side is None:
                x_lo, x_hi, y_lo, y_hi = _SAFE_BOX[run.quadrant]
                cx, cy = (x_lo + x_hi) / 2, (y_lo + y_hi) / 2
                ax = min(noise_px, (x_hi - x_lo) / 2)
                ay = min(noise_px, (y_hi - y_lo) / 2)
            else:
                if j == 0 and active is not run.side:
                    ox, oy = _object_for(run.side)
                    placements.append(
                        ObjectPlacement(
                            t_ms=ts, obj_x_px=ox, obj_y_px=oy, aoi_w_px=AOI_W, aoi_h_px=AOI_H
                        )
                    )
                    active = run.side
                cx, cy = _object_for(run.side)
                ax = min(noise_px, AOI_W / 2 - 15)
                ay = min(noise_px, AOI_H / 2 - 15)
            x = float(cx + rng.uniform(-ax, ax))
            y = float(cy + rng.uniform(-ay, ay))
            samples.append(GazeSample(t_ms=ts, x_px=x, y_px=y))
        t += footprint
    return samples, placements


def _make_events(
    duration_ms: int,
    n_clicks: int,
    correct_clicks: int,
    n_answers: int,
    correct_answers: int,
) -> tuple[GameEvent, ...]:
    """Evenly spaced events; the incorrect ones sit at the tail slots."""
    events: list[GameEvent] = []
    for kind, total, correct, phase in (
        ("mouse_click", n_clicks, correct_clicks, 1),
        ("answer", n_answers, correct_answers, 2),
    ):
        for i in range(total):
            t = duration_ms * (i + 1) // (total + 2) + phase
            events.append(GameEvent(t_ms=t, kind=kind, correct=i < correct))
    events.sort(key=lambda e: e.t_ms)
    return tuple(events)


def _aoi_block(
    quadrant: Quadrant, items: list[_Run], total_samples: int, dt: int
) -> list[_Run]:
    """One quadrant block: padded filler, then items separated by filler."""
    minimum = sum(item.sample_count(dt) for item in items) + len(items) + 1
    pad = total_samples - minimum
    if pad < 0:
        raise ProfileError(
            f"stimulus block too small: need {minimum} samples, have {total_samples}"
        )
    runs: list[_Run] = [_Run(quadrant, None, 1 + pad)]
    for item in items:
        runs.append(item)
        runs.append(_Run(quadrant, None, 1))
    return runs


def _period_run(quadrant: Quadrant, side: AoiLabel, span_ms: int, dt: int) -> _Run:
    if span_ms % dt == 0:
        return _Run(quadrant, side, span_ms // dt + 1)
    return _Run(quadrant, side, exact_span_ms=span_ms)


def generate_session(profile: SynthProfile) -> LevelSession:
    """Build a session whose measured statistics track the profile.

    Guarantees: deterministic per seed; embedded engagement periods are
    detected at exactly the requested lengths; measured stimulus focus
    and AoI dwell share land within 3 percentage points of their
    targets. Infeasible combinations raise ProfileError.
    """
    dt = profile.sample_interval_ms
    rng = np.random.default_rng(profile.seed)
    lengths = list(profile.engagement_period_lengths_ms)
    if any(length < 400 for length in lengths):
        raise ProfileError("engagement period lengths below 400 ms would not be detected")

    if profile.quadrant_dwell_ms is not None:
        gaps = {q: max(1, round(d / dt)) for q, d in zip(Quadrant, profile.quadrant_dwell_ms)}
        pairs = sum(gaps.values())
    else:
        pairs = profile.duration_ms // dt
        if pairs < 20:
            raise ProfileError("session too short for the sample interval")
        sq_gaps = round(profile.target_sf_pct / 100 * pairs)
        nsq_gaps = pairs - sq_gaps
        gaps = {
            Quadrant.Q1: (nsq_gaps + 1) // 2,
            Quadrant.Q2: nsq_gaps // 2,
            Quadrant.Q3: (sq_gaps + 1) // 2,
            Quadrant.Q4: sq_gaps // 2,
        }
    duration = pairs * dt

    # Engagement and glance content, alternating sides.
    left_items: list[_Run] = []
    right_items: list[_Run] = []
    period_time = 0
    for i, length in enumerate(lengths):
        if i % 2 == 0:
            left_items.append(_period_run(Quadrant.Q3, AoiLabel.LEFT, length, dt))
        else:
            right_items.append(_period_run(Quadrant.Q4, AoiLabel.RIGHT, length, dt))
        period_time += length + dt

    aoi_time_target = round(profile.target_aoi_dwell_share * duration)
    glance_time = aoi_time_target - period_time
    if glance_time < -dt * max(1, len(lengths)):
        raise ProfileError(
            f"engagement periods occupy {period_time} ms, beyond the AoI dwell "
            f"target of {aoi_time_target} ms"
        )
    glance_n = max(2, min(math.ceil(400 / dt) - 1, 10))
    for i in range(max(0, glance_time) // (glance_n * dt)):
        if i % 2 == 0:
            left_items.append(_Run(Quadrant.Q3, AoiLabel.LEFT, glance_n))
        else:
            right_items.append(_Run(Quadrant.Q4, AoiLabel.RIGHT, glance_n))

    if profile.quadrant_dwell_ms is not None:
        # Ends inside Q4, so its final sample contributes no dwell gap.
        runs = [
            _Run(Quadrant.Q1, None, gaps[Quadrant.Q1]),
            _Run(Quadrant.Q2, None, gaps[Quadrant.Q2]),
            *_aoi_block(Quadrant.Q3, left_items, gaps[Quadrant.Q3], dt),
            *_aoi_block(Quadrant.Q4, right_items, gaps[Quadrant.Q4] + 1, dt),
        ]
    else:
        # Ends on a non-stimulus block so stimulus gaps equal stimulus samples.
        runs = [
            _Run(Quadrant.Q1, None, gaps[Quadrant.Q1]),
            *_aoi_block(Quadrant.Q3, left_items, gaps[Quadrant.Q3], dt),
            *_aoi_block(Quadrant.Q4, right_items, gaps[Quadrant.Q4], dt),
            _Run(Quadrant.Q2, None, gaps[Quadrant.Q2] + 1),
        ]

    samples, placements = _compile(runs, dt, rng, profile.noise_px)

    # Top up placements so at least n_objects appear; extras arrive after
    # the last AoI run and never capture filler samples.
    for i in range(max(0, profile.n_objects - len(placements))):
        side = AoiLabel.LEFT if i % 2 == 0 else AoiLabel.RIGHT
        ox, oy = _object_for(side)
        placements.append(
            ObjectPlacement(
                t_ms=samples[-1].t_ms - i * dt - dt + 1,
                obj_x_px=ox,
                obj_y_px=oy,
                aoi_w_px=AOI_W,
                aoi_h_px=AOI_H,
            )
        )
    placements.sort(key=lambda p: p.t_ms)

    click_p, answer_p = profile.event_accuracy
    events = _make_events(
        duration,
        profile.n_clicks,
        round(click_p * profile.n_clicks),
        profile.n_answers,
        round(answer_p * profile.n_answers),
    )
    return LevelSession(
        student_id=profile.student_id,
        level=profile.level,
        samples=tuple(samples),
        events=events,
        placements=tuple(placements),
        geometry=GEOMETRY,
    )


# ---------------------------------------------------------------------------
# Case-study fixture: a three-level session set whose analyzed statistics
# match the published case-study tables (cross-quadrant transitions
# 105/107/92, AoI focus 40.9/29.6/16.0 percent, the event tallies, and a
# level-3 temporal impact of exactly -1.1).
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _FixturePlan:
    level: int
    seed: int
    dt: int
    pairs: int
    group_switches: int        # boundaries in each direction (NSQ<->SQ)
    nn: int                    # Q1<->Q2 switches, all in the first NSQ visit
    ss: int                    # Q3<->Q4 switches, all in the first SQ visit
    n_pairs: int               # leading ss boundaries realized as AoI switch pairs
    sq_gaps: int
    periods: tuple[tuple[int, AoiLabel], ...]   # (sample count, side)
    singles: tuple[tuple[int, AoiLabel], ...]
    small_visit: int
    clicks: tuple[int, int]    # (total, correct)
    answers: tuple[int, int]


def _sides(counts: list[int]) -> tuple[tuple[int, AoiLabel], ...]:
    return tuple(
        (n, AoiLabel.LEFT if i % 2 == 0 else AoiLabel.RIGHT) for i, n in enumerate(counts)
    )


_FIXTURE_PLANS = (
    _FixturePlan(
        level=1,
        seed=101,
        dt=16,
        pairs=12500,
        group_switches=25,
        nn=27,
        ss=28,
        n_pairs=2,
        sq_gaps=9062,
        periods=_sides([939, 875, 813, 751, 688, 501, 376]),
        singles=_sides([10] * 16 + [6]),
        small_visit=8,
        clicks=(18, 15),
        answers=(36, 36),
    ),
    _FixturePlan(
        level=2,
        seed=102,
        dt=16,
        pairs=10000,
        group_switches=26,
        nn=27,
        ss=28,
        n_pairs=12,
        sq_gaps=6820,
        periods=_sides([751, 601, 501, 401, 301, 161]),
        singles=_sides([2] * 110),
        small_visit=8,
        clicks=(11, 11),
        answers=(34, 33),
    ),
    _FixturePlan(
        level=3,
        seed=103,
        dt=25,
        pairs=3200,
        group_switches=28,
        nn=16,
        ss=20,
        n_pairs=20,
        sq_gaps=1728,
        periods=_sides([36] * 12),
        singles=_sides([2] * 20),
        small_visit=8,
        clicks=(13, 10),
        answers=(34, 31),
    ),
)


def _phase_runs(plan: _FixturePlan, phase: int, items: list[_Run], extra: int) -> list[_Run]:
    """One Q3/Q4 sub-block of the content visit.

    A phase carries a head (tail) AoI sample when the boundary before
    (after) it is realized as a direct left/right switch pair.
    """
    quadrant = Quadrant.Q3 if phase % 2 == 0 else Quadrant.Q4
    side = AoiLabel.LEFT if phase % 2 == 0 else AoiLabel.RIGHT
    head = phase > 0 and (phase - 1) < plan.n_pairs
    tail = phase < plan.ss and phase < plan.n_pairs
    runs: list[_Run] = []
    if head:
        runs.append(_Run(quadrant, side, 1))
    if items:
        runs.append(_Run(quadrant, None, 1 + extra))
        for item in items:
            runs.append(item)
            runs.append(_Run(quadrant, None, 1))
    elif extra > 0 or (not head and not tail):
        runs.append(_Run(quadrant, None, max(1, extra)))
    if tail:
        runs.append(_Run(quadrant, side, 1))
    return runs


def _fixture_runs(plan: _FixturePlan) -> list[_Run]:
    dt = plan.dt
    left_items = [
        _Run(Quadrant.Q3, AoiLabel.LEFT, n)
        for n, side in (*plan.periods, *plan.singles)
        if side is AoiLabel.LEFT
    ]
    right_items = [
        _Run(Quadrant.Q4, AoiLabel.RIGHT, n)
        for n, side in (*plan.periods, *plan.singles)
        if side is AoiLabel.RIGHT
    ]

    k = plan.group_switches
    sq_samples = plan.sq_gaps + 1      # session ends inside a stimulus visit
    nsq_samples = plan.pairs - plan.sq_gaps
    first_sq_budget = sq_samples - k * plan.small_visit
    first_nsq_budget = nsq_samples - (k - 1) * plan.small_visit

    phase_items: list[list[_Run]] = [[] for _ in range(plan.ss + 1)]
    phase_items[0] = left_items
    if plan.ss >= 1:
        phase_items[1] = right_items
    minimum = sum(
        run.sample_count(dt)
        for p in range(plan.ss + 1)
        for run in _phase_runs(plan, p, phase_items[p], 0)
    )
    extra = first_sq_budget - minimum
    if extra < 0:
        raise RuntimeError(
            f"fixture level {plan.level}: stimulus visit over budget by {-extra}"
        )
    first_sq: list[_Run] = []
    for p in range(plan.ss + 1):
        first_sq.extend(_phase_runs(plan, p, phase_items[p], extra if p == 0 else 0))

    nsq_blocks = plan.nn + 1
    if first_nsq_budget < nsq_blocks:
        raise RuntimeError(f"fixture level {plan.level}: non-stimulus visit over budget")
    first_nsq = [
        _Run(
            Quadrant.Q1 if i % 2 == 0 else Quadrant.Q2,
            None,
            first_nsq_budget - (nsq_blocks - 1) if i == 0 else 1,
        )
        for i in range(nsq_blocks)
    ]

    runs: list[_Run] = list(first_sq)
    for visit in range(k):
        if visit == 0:
            runs.extend(first_nsq)
        else:
            runs.append(
                _Run(Quadrant.Q1 if visit % 2 == 0 else Quadrant.Q2, None, plan.small_visit)
            )
        runs.append(
            _Run(Quadrant.Q4 if visit % 2 == 0 else Quadrant.Q3, None, plan.small_visit)
        )
    return runs


def _verify_fixture(plan: _FixturePlan, runs: list[_Run]) -> None:
    """Label-level closure check; planner bugs fail loudly."""
    labels: list[tuple[Quadrant, AoiLabel | None]] = []
    for run in runs:
        labels.extend([(run.quadrant, run.side)] * run.sample_count(plan.dt))
    n = len(labels)
    if n != plan.pairs + 1:
        raise RuntimeError(f"fixture level {plan.level}: {n} samples, wanted {plan.pairs + 1}")
    sq = sum(1 for q, _ in labels[:-1] if q.is_stimulus)
    if sq != plan.sq_gaps:
        raise RuntimeError(
            f"fixture level {plan.level}: {sq} stimulus gaps, wanted {plan.sq_gaps}"
        )
    cross = sum(1 for a, b in zip(labels, labels[1:]) if a[0] is not b[0])
    expected = 2 * plan.group_switches + plan.nn + plan.ss
    if cross != expected:
        raise RuntimeError(
            f"fixture level {plan.level}: {cross} transitions, wanted {expected}"
        )
    switches = sum(
        1
        for a, b in zip(labels, labels[1:])
        if a[1] is not None and b[1] is not None and a[1] is not b[1]
    )
    if switches != plan.n_pairs:
        raise RuntimeError(
            f"fixture level {plan.level}: {switches} AoI switches, wanted {plan.n_pairs}"
        )
    aoi = sum(1 for _, s in labels if s is not None)
    expected_aoi = sum(c for c, _ in (*plan.periods, *plan.singles)) + 2 * plan.n_pairs
    if aoi != expected_aoi:
        raise RuntimeError(
            f"fixture level {plan.level}: {aoi} AoI samples, wanted {expected_aoi}"
        )


def generate_table_fixture(student_id: str = "S10") -> SessionSet:
    """Three-level case-study fixture with table-exact derived statistics."""
    sessions = []
    for plan in _FIXTURE_PLANS:
        runs = _fixture_runs(plan)
        _verify_fixture(plan, runs)
        rng = np.random.default_rng(plan.seed)
        samples, placements = _compile(runs, plan.dt, rng, noise_px=6.0)
        events = _make_events(
            samples[-1].t_ms,
            plan.clicks[0],
            plan.clicks[1],
            plan.answers[0],
            plan.answers[1],
        )
        sessions.append(
            LevelSession(
                student_id=student_id,
                level=plan.level,
                samples=tuple(samples),
                events=events,
                placements=tuple(placements),
                geometry=GEOMETRY,
            )
        )
    return merge_levels(sessions)


def write_session_set(session_set: SessionSet, out_dir: str | Path) -> list[Path]:
    """Write every session as ``<student>_level<k>.csv`` under out_dir."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for (student, level), session in sorted(session_set.sessions.items()):
        written.append(write_level_csv(session, out_dir / f"{student}_level{level}.csv"))
    return written
