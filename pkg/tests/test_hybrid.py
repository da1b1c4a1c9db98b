"""Hybrid combiner, baselines, and grid-search optimizer tests."""

import random
import warnings

import pytest

from crpla import channel, coding
from crpla.errors import InvalidPilotCount, InvalidRange, NarrowMarginWarning
from crpla.hybrid import OptimizationGrid, baseline_cd, baseline_ch, hybrid_bits, optimize
from crpla.params import SystemParams

# Regression anchors, frozen after the first verified computation.
GOLDEN_CD_30DB_R06 = 498.80089782213764
GOLDEN_CD_50DB_R03 = 1499.727633355125


def make(**overrides):
    base = dict(
        n=10,
        F=100,
        pilot_count=1,
        b_M=600,
        p_FA=1e-7,
        lambda_B=1e5,
        lambda_T=3e4,
        h_min=0.9,
        h_max=1.0,
    )
    base.update(overrides)
    return SystemParams(**base)


@pytest.fixture(autouse=True)
def _quiet_margin_warnings():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NarrowMarginWarning)
        yield


class TestHybridBits:
    def test_tagged_and_split(self):
        report = hybrid_bits(make())
        assert report.mechanism == "HYBRID"
        assert report.alpha_used == pytest.approx(0.1)
        assert report.h_min_used == 0.9
        geo = channel.equivalent_key_bits(make(), 0.5e-7)
        rates = coding.b_key_hybrid(make(), 0.5e-7)
        assert report.b_ch == geo.b_ch
        assert report.b_key == rates.b_key
        assert report.b_tot == report.b_ch + report.b_key

    def test_degenerate_span_keeps_only_coding(self):
        report = hybrid_bits(make(h_min=1.0))
        assert report.b_ch == 0.0
        assert report.b_tot == report.b_key > 0.0

    def test_strong_eavesdropper_keeps_only_channel(self):
        report = hybrid_bits(make(lambda_T=9.9e4))
        assert report.b_key == 0.0
        assert report.b_tot == report.b_ch > 0.0

    @pytest.mark.parametrize("pilots", [0, 10])
    def test_interior_pilots_required(self, pilots):
        with pytest.raises(InvalidPilotCount):
            hybrid_bits(make(pilot_count=pilots))

    def test_split_validated(self):
        with pytest.raises(InvalidRange):
            hybrid_bits(make(), split=0.0)


class TestBaselines:
    def test_ch_forces_configuration(self):
        report = baseline_ch(make())
        assert report.mechanism == "CH"
        assert report.alpha_used == 1.0
        assert report.h_min_used == 0.0
        assert report.b_key == 0.0

    def test_ch_matches_direct_geometry_call(self):
        params = make(lambda_B=1e3)
        forced = params.replace(pilot_count=10, h_min=0.0)
        direct = channel.equivalent_key_bits(forced, params.p_FA)
        assert baseline_ch(params).b_ch == direct.b_ch

    def test_ch_monotone_in_snr(self):
        low = baseline_ch(make(lambda_B=1e2, lambda_T=30.0)).b_tot
        high = baseline_ch(make(lambda_B=1e5)).b_tot
        assert high > low

    def test_ch_monotone_in_frames(self):
        few = baseline_ch(make(F=50, lambda_B=1e5)).b_tot
        many = baseline_ch(make(F=200, lambda_B=1e5)).b_tot
        assert many > few

    def test_cd_forces_configuration(self):
        report = baseline_cd(make())
        assert report.mechanism == "CD"
        assert report.alpha_used == 0.0
        assert report.h_min_used == 1.0
        assert report.b_ch == 0.0

    def test_cd_golden_values(self):
        mid = make(lambda_B=1e3, lambda_T=600.0)
        assert baseline_cd(mid).b_key == pytest.approx(GOLDEN_CD_30DB_R06, rel=1e-12)
        high = make(lambda_B=1e5, lambda_T=3e4)
        assert baseline_cd(high).b_key == pytest.approx(GOLDEN_CD_50DB_R03, rel=1e-12)

    def test_cd_vanishing_secrecy_gap(self):
        report = baseline_cd(make(lambda_B=1e3, lambda_T=1e3))
        assert report.b_key == 0.0

    def test_cd_oversized_message(self):
        report = baseline_cd(make(lambda_B=1e3, lambda_T=1.0, b_M=100_000))
        assert report.b_key == 0.0


class TestOptimizationGrid:
    def test_defaults_resolve(self):
        pilots, h_values = OptimizationGrid().resolve(make())
        assert pilots == tuple(range(1, 10))
        assert len(h_values) == 101
        assert h_values[0] == 0.0
        assert h_values[-1] == 1.0

    def test_rejects_bad_pilots(self):
        with pytest.raises(InvalidPilotCount):
            OptimizationGrid(pilot_counts=(0,)).resolve(make())
        with pytest.raises(InvalidPilotCount):
            OptimizationGrid(pilot_counts=()).resolve(make())

    def test_rejects_out_of_range_h(self):
        with pytest.raises(InvalidRange):
            OptimizationGrid(h_min_values=(1.5,)).resolve(make())


class TestOptimize:
    def test_single_cell_identity(self):
        grid = OptimizationGrid(
            pilot_counts=(2,), h_min_values=(0.85,), include_channel_only=False
        )
        best = optimize(make(), grid)
        cell = hybrid_bits(make(pilot_count=2, h_min=0.85))
        assert best == cell

    def test_dominates_every_cell(self):
        params = make()
        grid = OptimizationGrid(
            pilot_counts=(1, 3, 5, 9), h_min_values=(0.0, 0.5, 0.9, 1.0)
        )
        best = optimize(params, grid)
        for pilots in grid.pilot_counts:
            for h_min in grid.h_min_values:
                cell = hybrid_bits(params.replace(pilot_count=pilots, h_min=h_min))
                assert best.b_tot >= cell.b_tot
        assert best.b_tot >= baseline_ch(params).b_tot

    def test_order_invariance(self):
        params = make(lambda_B=1e3, lambda_T=900.0)
        pilots = list(range(1, 10))
        h_values = [k / 20.0 for k in range(21)]
        reference = optimize(
            params, OptimizationGrid(tuple(pilots), tuple(h_values))
        )
        rng = random.Random(99)
        for _ in range(3):
            rng.shuffle(pilots)
            rng.shuffle(h_values)
            shuffled = optimize(
                params, OptimizationGrid(tuple(pilots), tuple(h_values))
            )
            assert shuffled == reference

    def test_saturates_to_channel_baseline(self):
        # strong attacker: coding never pays, optimum is the alpha=1 endpoint
        params = make(lambda_T=9e4)
        best = optimize(params)
        assert best == baseline_ch(params)

    def test_channel_candidate_excluded_when_disabled(self):
        params = make(lambda_T=9e4)
        best = optimize(params, OptimizationGrid(include_channel_only=False))
        assert best.mechanism == "HYBRID"
        assert best.b_tot < baseline_ch(params).b_tot

    def test_headline_point_beats_both_baselines(self):
        params = make()  # 50 dB, ratio 0.3
        best = optimize(params)
        assert best.b_tot > baseline_ch(params).b_tot
        assert best.b_tot > baseline_cd(params).b_tot
        assert best.h_min_used > 0.8

    def test_near_endpoint_tracks_channel_baseline(self):
        # interior point right next to the channel-only corner
        for lambda_b in (1e2, 1e3, 1e5):
            params = make(lambda_B=lambda_b, lambda_T=0.3 * lambda_b, h_min=0.01, pilot_count=9)
            near = hybrid_bits(params).b_tot
            anchor = baseline_ch(params).b_tot
            assert abs(near - anchor) / anchor < 0.1
