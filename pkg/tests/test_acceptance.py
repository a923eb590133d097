"""Acceptance suite: one test per release criterion, each printing a
pass line with its measured values. Run with ``pytest tests/test_acceptance.py -s``.
"""
from __future__ import annotations

import dataclasses
import itertools
import json
import time

import numpy as np
import pytest

import gazescore as gs
from gazescore.engagement import EngagementPeriod
from gazescore.ingest import GameEvent
from gazescore.spatial import AoiLabel, Quadrant
from gazescore.transitions import dwell_summary

MODEL_PAIRS = [99.7, 99.0, 98.9]
TRUTH_PAIRS = [94.4, 97.8, 87.2]

L, R, OUT = AoiLabel.LEFT, AoiLabel.RIGHT, AoiLabel.OUTSIDE


def _report(name: str, detail: str) -> None:
    print(f"[PASS] {name}: {detail}")


def test_criterion_1_game_accuracy_rows():
    start = time.perf_counter()
    rows = [((15, 18), (36, 36), 94.4), ((11, 11), (33, 34), 97.8), ((10, 13), (31, 34), 87.2)]
    measured = []
    for (ck, ct), (ak, at), expected in rows:
        events = [GameEvent(i, "mouse_click", i < ck) for i in range(ct)]
        events += [GameEvent(i, "answer", i < ak) for i in range(at)]
        accuracy = gs.game_accuracy(events).accuracy_pct
        assert accuracy == pytest.approx(expected, abs=0.05)
        measured.append(round(accuracy, 2))
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    _report("criterion 1", f"game accuracies {measured} in {elapsed:.3f}s")


def test_criterion_2_spearman_published_pairs():
    start = time.perf_counter()
    rho = gs.spearman(MODEL_PAIRS, TRUTH_PAIRS)
    assert rho == 0.5
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    _report("criterion 2", f"spearman {rho} in {elapsed:.3f}s")


def test_criterion_3_error_metrics_and_pearson_oracle():
    value_mae = gs.mae(MODEL_PAIRS, TRUTH_PAIRS)
    value_rmse = gs.rmse(MODEL_PAIRS, TRUTH_PAIRS)
    assert value_mae == pytest.approx(6.07, abs=0.1)
    assert value_rmse == pytest.approx(7.45, abs=0.1)

    # Independent two-pass oracle for the product-moment coefficient.
    m = np.asarray(MODEL_PAIRS)
    t = np.asarray(TRUTH_PAIRS)
    dm, dt = m - m.mean(), t - t.mean()
    oracle = float((dm * dt).sum() / np.sqrt((dm**2).sum() * (dt**2).sum()))
    assert oracle == pytest.approx(0.31, abs=0.01)
    assert gs.pearson(MODEL_PAIRS, TRUTH_PAIRS) == pytest.approx(oracle, abs=1e-12)

    # The report footnote documents the pair-only scope of the correlations.
    fixture = gs.generate_table_fixture()
    analyses, validation = gs.analyze_student(fixture, "S10")
    note = gs.build_report("S10", analyses, validation)["validation"]["note"]
    assert "pairs" in note
    _report(
        "criterion 3",
        f"mae {value_mae:.3f}, rmse {value_rmse:.3f}, pearson oracle {oracle:.3f}",
    )


def test_criterion_4_stimulus_focus_stages():
    stages = [
        ((28586, 29096, 49690, 89547), 70.7),
        ((30855, 20597, 52274, 58268), 68.2),
        ((20835, 62012, 64887, 26850), 52.5),
    ]
    measured = []
    for dwells, expected in stages:
        times = np.cumsum((0,) + dwells).tolist()
        labels = [Quadrant.Q1, Quadrant.Q2, Quadrant.Q3, Quadrant.Q4, Quadrant.Q1]
        samples = [gs.GazeSample(t, 1.0, 1.0) for t in times]
        sf = dwell_summary(samples, labels).stimuli_focus_pct
        assert sf == pytest.approx(expected, abs=0.05)
        measured.append(round(sf, 3))
    _report("criterion 4", f"stimulus focus stages {measured}")


def test_criterion_5_scoring_formula_suite():
    start = time.perf_counter()
    tol = 1e-9

    assert gs.psi_focus(25, 1) == pytest.approx(0.0, abs=tol)
    assert gs.psi_focus(60, 2) == pytest.approx(19.5, abs=tol)
    assert gs.psi_focus(70, 3) == pytest.approx(25.0, abs=tol)

    assert gs.bonus_aoi(0.5) == pytest.approx(3.0, abs=tol)
    assert gs.bonus_aoi(0.05) == pytest.approx(-1.0, abs=tol)
    assert gs.bonus_aoi(0.2) == pytest.approx(0.0, abs=tol)
    assert gs.bonus_sustained(0) == pytest.approx(0.0, abs=tol)
    assert gs.bonus_sustained(2) == pytest.approx(3.0, abs=tol)
    assert gs.bonus_sustained(5) == pytest.approx(4.0, abs=tol)
    assert gs.bonus_duration(10) == pytest.approx(0.4, abs=tol)
    assert gs.bonus_duration(1) == pytest.approx(-1.6, abs=tol)
    assert gs.bonus_duration(5) == pytest.approx(0.0, abs=tol)
    assert gs.penalty_excess(8) == pytest.approx(0.0, abs=tol)
    assert gs.penalty_excess(10) == pytest.approx(1.2, abs=tol)
    assert gs.penalty_excess(20) == pytest.approx(4.0, abs=tol)

    for s_base, expected in [(40, 1.0), (50, 0.9), (70, 0.7), (85, 0.4)]:
        assert gs.temporal_multiplier(s_base) == expected

    def metrics(**kw):
        base = dict(eta_temporal=0.0, mu_engagement_ms=0.0, sigma_sustained=0.0,
                    period_count=0, sustained_count=0, session_duration_ms=100_000)
        base.update(kw)
        return gs.TemporalMetrics(**base)

    def level_features(**kw):
        base = dict(level=1, nsq_to_sq=0, sq_to_nsq=0, focus_aoi_pct=0.0,
                    interactions=0, aoi_transitions=0, aoi_switches=0,
                    aoi_efficiency=0.0, sf_pct=0.0, temporal=metrics())
        base.update(kw)
        return gs.LevelFeatures(**base)

    assert gs.level_bonus(
        level_features(level=1, focus_aoi_pct=40.9, interactions=111)
    ) == pytest.approx(63.68, abs=tol)
    assert gs.level_bonus(level_features(level=3)) == pytest.approx(0.0, abs=tol)
    assert gs.level_bonus(
        level_features(level=2, focus_aoi_pct=20, aoi_transitions=10)
    ) == pytest.approx(23.0, abs=tol)

    composed = level_features(
        level=1, nsq_to_sq=10, sq_to_nsq=4, focus_aoi_pct=40.9, interactions=111,
        aoi_efficiency=0.2, sf_pct=70.7,
    )
    assert gs.base_score(composed) == pytest.approx(107.96, abs=tol)

    dead = level_features(
        level=1, sf_pct=20, temporal=metrics(eta_temporal=0.2, mu_engagement_ms=5000,
                                             period_count=4),
    )
    assert gs.temporal_impact(dead) == pytest.approx(0.0, abs=tol)

    hot = level_features(
        level=3, sf_pct=70,
        temporal=metrics(eta_temporal=0.5, mu_engagement_ms=10_000,
                         period_count=6, sustained_count=3),
    )
    assert gs.temporal_impact(hot) == pytest.approx(15.0, abs=tol)

    clamped = gs.final_score(
        level_features(
            level=1, nsq_to_sq=10, sq_to_nsq=4, focus_aoi_pct=40.9, interactions=111,
            aoi_efficiency=0.2, sf_pct=70.7,
            temporal=metrics(eta_temporal=0.5, mu_engagement_ms=10_000,
                             period_count=6, sustained_count=3),
        )
    )
    assert clamped.multiplier == 0.4
    assert clamped.final_score == pytest.approx(100.0, abs=tol)

    floor = gs.final_score(
        level_features(level=1, sq_to_nsq=20, sf_pct=20,
                       temporal=metrics(eta_temporal=0.2, mu_engagement_ms=5000))
    )
    assert floor.base_score == pytest.approx(-30.0, abs=tol)
    assert floor.final_score == pytest.approx(0.0, abs=tol)

    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    _report("criterion 5", f"all worked scoring examples at 1e-9 in {elapsed:.3f}s")


def _oracle_periods(labeled, min_ms=400, sustained_ms=2500):
    periods = []
    for label, group in itertools.groupby(labeled, key=lambda s: s[1]):
        run = list(group)
        if label is OUT:
            continue
        span = run[-1][0] - run[0][0]
        if span >= min_ms:
            periods.append(EngagementPeriod(run[0][0], run[-1][0], label, span >= sustained_ms))
    return periods


def test_criterion_6_engagement_oracle_equivalence():
    rng = np.random.default_rng(2024)
    for _ in range(1000):
        n = int(rng.integers(0, 501))
        labels = [(L, R, OUT)[i] for i in rng.integers(0, 3, n)]
        times = np.cumsum(rng.integers(1, 250, n)).tolist()
        labeled = list(zip(times, labels))
        assert gs.detect_engagement_periods(labeled) == _oracle_periods(labeled)
    _report("criterion 6", "1000 random sequences match the maximal-run oracle exactly")


def test_criterion_7_transition_oracle_equivalence():
    rng = np.random.default_rng(77)
    quadrants = list(Quadrant)
    for _ in range(1000):
        n = int(rng.integers(0, 300))
        labels = [quadrants[i] for i in rng.integers(0, 4, n)]
        matrix = gs.build_quadrant_matrix(labels)
        assert matrix.counts.sum() == max(0, n - 1)
        agg = gs.aggregate_transitions(matrix)
        off_diagonal = int(matrix.counts.sum() - np.trace(matrix.counts))
        assert agg.total == off_diagonal
        reversed_matrix = gs.build_quadrant_matrix(labels[::-1])
        assert np.array_equal(reversed_matrix.counts, matrix.counts.T)
    _report("criterion 7", "matrix mass, totals and reversal-transpose hold on 1000 sequences")


def test_criterion_8_property_suite():
    rng = np.random.default_rng(8)

    def metrics_random():
        return gs.TemporalMetrics(
            eta_temporal=float(rng.uniform(0, 1)),
            mu_engagement_ms=float(rng.uniform(0, 60_000)),
            sigma_sustained=float(rng.uniform(0, 1)),
            period_count=int(rng.integers(0, 60)),
            sustained_count=int(rng.integers(0, 30)),
            session_duration_ms=int(rng.integers(1, 400_000)),
        )

    for _ in range(10_000):
        features = gs.LevelFeatures(
            level=int(rng.integers(1, 4)),
            nsq_to_sq=int(rng.integers(0, 200)),
            sq_to_nsq=int(rng.integers(0, 200)),
            focus_aoi_pct=float(rng.uniform(0, 100)),
            interactions=int(rng.integers(0, 300)),
            aoi_transitions=int(rng.integers(0, 20_000)),
            aoi_switches=int(rng.integers(0, 500)),
            aoi_efficiency=float(rng.uniform(0, 1)),
            sf_pct=float(rng.uniform(0, 100)),
            temporal=metrics_random(),
        )
        breakdown = gs.final_score(features)
        assert 0.0 <= breakdown.final_score <= 100.0
        assert abs(breakdown.temporal_impact) <= 15.0 + 1e-9

    base = gs.LevelFeatures(
        level=2, nsq_to_sq=5, sq_to_nsq=3, focus_aoi_pct=10, interactions=0,
        aoi_transitions=0, aoi_switches=0, aoi_efficiency=0.0, sf_pct=45,
        temporal=gs.TemporalMetrics(0, 0, 0, 0, 0, 0),
    )
    up = dataclasses.replace(base, nsq_to_sq=base.nsq_to_sq + 1)
    away = dataclasses.replace(base, sq_to_nsq=base.sq_to_nsq + 1)
    assert gs.base_score(up) - gs.base_score(base) == pytest.approx(3.0, abs=1e-9)
    assert gs.base_score(away) - gs.base_score(base) == pytest.approx(-1.5, abs=1e-9)

    for _ in range(400):
        n = int(rng.integers(2, 12))
        m = rng.uniform(0, 100, n).tolist()
        t = rng.uniform(0, 100, n).tolist()
        assert gs.mae(m, t) <= gs.rmse(m, t) + 1e-12
        pear = gs.pearson(m, t)
        spear = gs.spearman(m, t)
        if pear is not None:
            assert -1 - 1e-9 <= pear <= 1 + 1e-9
            scaled = gs.pearson([3.5 * v + 11 for v in m], t)
            assert scaled == pytest.approx(pear, abs=1e-9)
        if spear is not None:
            assert -1 - 1e-9 <= spear <= 1 + 1e-9
            warped = gs.spearman([v**3 + v for v in m], t)
            assert warped == pytest.approx(spear, abs=1e-9)
    _report("criterion 8", "10000 fuzzed score vectors and 400 metric series hold all bounds")


def test_criterion_9_fixture_closure(tmp_path):
    start = time.perf_counter()
    fixture = gs.generate_table_fixture()

    # Through the file interface: write, reload, analyze.
    paths = gs.write_session_set(fixture, tmp_path / "fx")
    assert len(paths) == 3
    sessions = [
        gs.load_level_csv(tmp_path / "fx" / f"S10_level{level}.csv", level, "S10")
        for level in (1, 2, 3)
    ]
    reloaded = gs.merge_levels(sessions)
    analyses, validation = gs.analyze_student(reloaded, "S10")

    totals = [a.aggregates.total for a in analyses]
    assert totals == [105, 107, 92]
    focus = [a.features.focus_aoi_pct for a in analyses]
    for measured, expected in zip(focus, [40.9, 29.6, 16.0]):
        assert measured == pytest.approx(expected, abs=0.2)

    finals = [a.breakdown.final_score for a in analyses]
    for measured, expected in zip(finals, [99.7, 99.0, 98.9]):
        assert measured == pytest.approx(expected, abs=5.0)
    assert validation is not None and validation.spearman_rho == 0.5

    report_a = json.dumps(gs.build_report("S10", analyses, validation), indent=2)
    analyses_b, validation_b = gs.analyze_student(reloaded, "S10")
    report_b = json.dumps(gs.build_report("S10", analyses_b, validation_b), indent=2)
    assert report_a == report_b

    plot_a = {p.name: p.read_bytes() for p in gs.emit_plot_data(analyses, tmp_path / "a")}
    plot_b = {p.name: p.read_bytes() for p in gs.emit_plot_data(analyses_b, tmp_path / "b")}
    assert plot_a == plot_b

    elapsed = time.perf_counter() - start
    assert elapsed < 10.0
    _report(
        "criterion 9",
        f"transitions {totals}, focus {[round(f, 2) for f in focus]}, "
        f"finals {[round(f, 2) for f in finals]}, byte-identical outputs, {elapsed:.2f}s",
    )
