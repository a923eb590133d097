from __future__ import annotations

import pytest

from gazescore.pipeline import analyze_session
from gazescore.synth import (
    ProfileError,
    SynthProfile,
    generate_session,
    generate_table_fixture,
)


class TestDeterminism:
    def test_same_seed_identical(self):
        a = generate_session(SynthProfile(seed=7, duration_ms=40_000))
        b = generate_session(SynthProfile(seed=7, duration_ms=40_000))
        assert a == b

    def test_different_seed_differs(self):
        a = generate_session(SynthProfile(seed=7, duration_ms=40_000))
        b = generate_session(SynthProfile(seed=8, duration_ms=40_000))
        assert a.samples != b.samples

    def test_fixture_deterministic(self):
        assert generate_table_fixture() == generate_table_fixture()


class TestGenerateSession:
    def test_quadrant_dwell_profile_reproduces_published_focus(self):
        profile = SynthProfile(
            seed=1,
            target_sf_pct=70.7,
            quadrant_dwell_ms=(28_586, 29_096, 49_690, 89_547),
            engagement_period_lengths_ms=(3200, 2592, 800),
            target_aoi_dwell_share=0.1,
        )
        session = generate_session(profile)
        analysis = analyze_session(session)
        assert analysis.features.sf_pct == pytest.approx(70.7, abs=0.1)

    def test_single_embedded_sustained_period(self):
        profile = SynthProfile(
            seed=2,
            duration_ms=30_000,
            engagement_period_lengths_ms=(2600,),
            target_aoi_dwell_share=0.12,
        )
        analysis = analyze_session(generate_session(profile))
        assert analysis.temporal.period_count == 1
        assert analysis.temporal.sustained_count == 1
        assert analysis.periods[0].duration_ms == 2600

    def test_non_grid_period_length_survives_exactly(self):
        profile = SynthProfile(
            seed=3,
            duration_ms=30_000,
            engagement_period_lengths_ms=(2601, 455),
            target_aoi_dwell_share=0.15,
        )
        analysis = analyze_session(generate_session(profile))
        assert sorted(p.duration_ms for p in analysis.periods) == [455, 2601]

    def test_sf_and_share_tolerances(self):
        profile = SynthProfile(seed=4, duration_ms=90_000, target_sf_pct=55.0,
                               target_aoi_dwell_share=0.3)
        analysis = analyze_session(generate_session(profile))
        assert analysis.features.sf_pct == pytest.approx(55.0, abs=3.0)
        assert analysis.features.aoi_time_share_pct == pytest.approx(30.0, abs=3.0)

    def test_event_tallies(self):
        profile = SynthProfile(seed=5, duration_ms=40_000, n_clicks=10, n_answers=20,
                               event_accuracy=(0.8, 0.95))
        session = generate_session(profile)
        clicks = [e for e in session.events if e.kind == "mouse_click"]
        answers = [e for e in session.events if e.kind == "answer"]
        assert len(clicks) == 10 and sum(e.correct for e in clicks) == 8
        assert len(answers) == 20 and sum(e.correct for e in answers) == 19

    def test_placement_floor(self):
        profile = SynthProfile(seed=6, duration_ms=40_000, n_objects=9)
        session = generate_session(profile)
        assert len(session.placements) >= 9

    def test_closure_across_seeds(self):
        for seed in range(100):
            profile = SynthProfile(
                seed=seed,
                duration_ms=30_000,
                target_sf_pct=50 + (seed % 30),
                target_aoi_dwell_share=0.15 + (seed % 5) / 50,
                engagement_period_lengths_ms=(2600, 900, 455),
            )
            analysis = analyze_session(generate_session(profile))
            assert analysis.features.sf_pct == pytest.approx(profile.target_sf_pct, abs=3.0)
            assert analysis.features.aoi_time_share_pct == pytest.approx(
                100 * profile.target_aoi_dwell_share, abs=3.0
            )
            assert sorted(p.duration_ms for p in analysis.periods) == [455, 900, 2600]
            assert analysis.temporal.sustained_count == 1


class TestProfileErrors:
    def test_period_exceeding_duration(self):
        with pytest.raises(ProfileError):
            generate_session(
                SynthProfile(seed=0, duration_ms=5000,
                             engagement_period_lengths_ms=(6000,),
                             target_aoi_dwell_share=1.0)
            )

    def test_periods_beyond_aoi_share(self):
        with pytest.raises(ProfileError, match="AoI dwell"):
            generate_session(
                SynthProfile(seed=0, duration_ms=60_000,
                             engagement_period_lengths_ms=(20_000, 20_000),
                             target_aoi_dwell_share=0.1)
            )

    def test_sub_threshold_period(self):
        with pytest.raises(ProfileError, match="400"):
            generate_session(SynthProfile(engagement_period_lengths_ms=(399,)))

    def test_bad_probability(self):
        with pytest.raises(ProfileError):
            SynthProfile(event_accuracy=(1.5, 0.5))

    def test_bad_level(self):
        with pytest.raises(ProfileError):
            SynthProfile(level=4)

    def test_negative_duration(self):
        with pytest.raises(ProfileError):
            SynthProfile(duration_ms=-1)


@pytest.fixture(scope="module")
def analyses():
    fixture = generate_table_fixture()
    return {
        session.level: analyze_session(session)
        for session in fixture.for_student("S10")
    }


class TestTableFixture:
    def test_transition_totals(self, analyses):
        assert analyses[1].aggregates.total == 105
        assert analyses[2].aggregates.total == 107
        assert analyses[3].aggregates.total == 92

    def test_aoi_focus_shares(self, analyses):
        assert analyses[1].features.focus_aoi_pct == pytest.approx(40.9, abs=0.2)
        assert analyses[2].features.focus_aoi_pct == pytest.approx(29.6, abs=0.2)
        assert analyses[3].features.focus_aoi_pct == pytest.approx(16.0, abs=0.2)

    def test_event_accuracies(self, analyses):
        assert analyses[1].game.accuracy_pct == pytest.approx(94.4, abs=0.05)
        assert analyses[2].game.accuracy_pct == pytest.approx(97.8, abs=0.05)
        assert analyses[3].game.accuracy_pct == pytest.approx(87.2, abs=0.05)

    def test_level_three_temporal_impact(self, analyses):
        assert analyses[3].breakdown.temporal_impact == pytest.approx(-1.1, abs=1e-9)

    def test_final_scores_near_published(self, analyses):
        published = {1: 99.7, 2: 99.0, 3: 98.9}
        for level, expected in published.items():
            assert analyses[level].breakdown.final_score == pytest.approx(expected, abs=5.0)

    def test_score_ranks_match_published_order(self, analyses):
        scores = [analyses[level].breakdown.final_score for level in (1, 2, 3)]
        assert scores[0] < scores[2] < scores[1]

    def test_no_constraint_violations(self, analyses):
        for analysis in analyses.values():
            assert analysis.violations == ()
