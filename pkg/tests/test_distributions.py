"""Tests for alphabets, joint distributions, binning, and CSV ingestion."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import datagen
from pidcmp.distributions import (
    Alphabet,
    BinningConfig,
    CountRange,
    GridRecord,
    JointDistribution,
    TrialRecord,
    bin_quantile,
    build_joint,
    categorize_output,
    ingest_grid,
    ingest_trials,
    marginal,
    match_support,
    parse_output_categories,
    read_grid_csv,
    read_trials_csv,
)


class TestAlphabet:
    def test_basic(self):
        al = Alphabet(("x", "y", "z"))
        assert len(al) == 3
        assert al.index("y") == 1
        assert al.labels == ("x", "y", "z")

    def test_unknown_label(self):
        al = Alphabet((0, 1))
        with pytest.raises(KeyError):
            al.index(2)

    def test_duplicate_labels_rejected(self):
        with pytest.raises(ValueError):
            Alphabet(("a", "a"))


class TestJointDistribution:
    def test_build_joint_normalizes(self):
        w = np.zeros((2, 2, 2))
        w[0, 0, 0] = 2.0
        w[1, 1, 1] = 2.0
        d = build_joint((Alphabet((0, 1)),) * 3, w)
        assert d.pmf[0, 0, 0] == pytest.approx(0.5)
        assert d.pmf.sum() == pytest.approx(1.0)

    def test_pmf_immutable(self):
        w = np.full((2, 2, 2), 0.125)
        d = build_joint((Alphabet((0, 1)),) * 3, w)
        with pytest.raises(ValueError):
            d.pmf[0, 0, 0] = 1.0

    def test_unnormalized_pmf_rejected(self):
        al = (Alphabet((0, 1)),) * 3
        with pytest.raises(ValueError):
            JointDistribution(al[0], al[1], al[2], np.full((2, 2, 2), 0.2))

    def test_negative_weight_rejected(self):
        w = np.full((2, 2, 2), 0.125)
        w[0, 0, 0] = -0.125
        with pytest.raises(ValueError):
            build_joint((Alphabet((0, 1)),) * 3, w)

    def test_nonfinite_weight_rejected(self):
        w = np.full((2, 2, 2), 0.125)
        w[0, 0, 0] = np.nan
        with pytest.raises(ValueError):
            build_joint((Alphabet((0, 1)),) * 3, w)

    def test_zero_total_weight_rejected(self):
        with pytest.raises(ValueError):
            build_joint((Alphabet((0, 1)),) * 3, np.zeros((2, 2, 2)))

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValueError):
            build_joint((Alphabet((0, 1, 2)),) + (Alphabet((0, 1)),) * 2, np.full((2, 2, 2), 0.125))

    def test_shape_property(self, xor_dist):
        assert xor_dist.shape == (2, 2, 2)


class TestMarginal:
    def test_single_axis(self, copy_dist):
        m = marginal(copy_dist, "y")
        assert m == pytest.approx([0.5, 0.5])

    def test_pair_sums_correctly(self, and_dist):
        m = marginal(and_dist, "ba")
        assert m.shape == (2, 2)
        assert m.sum() == pytest.approx(1.0)
        assert m[1, 1] == pytest.approx(0.25)

    def test_order_insensitive(self, and_dist):
        assert np.array_equal(marginal(and_dist, "by"), marginal(and_dist, "yb"))

    def test_axis_order_is_y_b_a(self, unique_dist):
        m = marginal(unique_dist, "yb")
        # y mirrors b in this distribution, so the yb marginal is diagonal.
        assert m[0, 0] == pytest.approx(0.5)
        assert m[1, 1] == pytest.approx(0.5)
        assert m[0, 1] == pytest.approx(0.0)

    def test_unknown_variable_rejected(self, xor_dist):
        with pytest.raises(ValueError):
            marginal(xor_dist, "x")

    def test_duplicate_variable_rejected(self, xor_dist):
        with pytest.raises(ValueError):
            marginal(xor_dist, "yy")

    def test_empty_selection_rejected(self, xor_dist):
        with pytest.raises(ValueError):
            marginal(xor_dist, "")


class TestBinQuantile:
    def test_tied_values_share_a_bin(self):
        bins = bin_quantile([1, 1, 1, 2, 3, 4, 5, 6], 4)
        assert bins == [0, 0, 0, 1, 2, 2, 3, 3]

    def test_even_split(self):
        bins = bin_quantile([1, 2, 3, 4, 5, 6, 7, 8], 4)
        assert bins == [0, 0, 1, 1, 2, 2, 3, 3]

    def test_input_order_preserved(self):
        bins = bin_quantile([8, 1, 5, 4, 2, 7, 3, 6], 4)
        assert bins == [3, 0, 2, 1, 0, 3, 1, 2]

    def test_fewer_distinct_than_bins_rejected(self):
        with pytest.raises(ValueError):
            bin_quantile([1.0, 1.0, 2.0], 3)

    def test_single_bin_rejected(self):
        with pytest.raises(ValueError):
            bin_quantile([1.0, 2.0], 1)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            bin_quantile([], 2)

    def test_nonfinite_rejected(self):
        with pytest.raises(ValueError):
            bin_quantile([1.0, float("nan"), 2.0], 2)

    @given(
        st.lists(st.integers(min_value=0, max_value=30), min_size=8, max_size=60),
        st.integers(min_value=2, max_value=5),
    )
    def test_partition_properties(self, values, k):
        if len(set(values)) < k:
            return
        floats = [float(v) for v in values]
        bins = bin_quantile(floats, k)
        assert len(bins) == len(values)
        assert set(bins) <= set(range(k))
        # Equal raw values always land in the same bin.
        seen = {}
        for v, b in zip(values, bins):
            assert seen.setdefault(v, b) == b
        # Bin index is monotone in the raw value.
        for v1, b1 in seen.items():
            for v2, b2 in seen.items():
                if v1 < v2:
                    assert b1 <= b2


class TestCountRange:
    @pytest.mark.parametrize(
        "text,lo,hi,label",
        [
            ("0", 0, 0, "0"),
            ("3", 3, 3, "3"),
            ("1-2", 1, 2, "1-2"),
            ("2+", 2, None, "2+"),
        ],
    )
    def test_parse_and_label(self, text, lo, hi, label):
        r = CountRange.parse(text)
        assert (r.lo, r.hi) == (lo, hi)
        assert r.label == label

    def test_contains(self):
        assert CountRange.parse("1-2").contains(2)
        assert not CountRange.parse("1-2").contains(3)
        assert CountRange.parse("2+").contains(100)
        assert not CountRange.parse("2+").contains(1)

    @pytest.mark.parametrize("bad", ["", "x", "3-1", "-1", "1-", "+2", "1--2"])
    def test_bad_syntax_rejected(self, bad):
        with pytest.raises(ValueError):
            CountRange.parse(bad)


class TestBinningConfig:
    def test_parse_output_categories(self):
        cats = parse_output_categories("0,1-2,3+")
        assert [c.label for c in cats] == ["0", "1-2", "3+"]

    def test_categorize_output(self):
        cats = parse_output_categories("0,1-2,3+")
        cfg = BinningConfig(cats, 3)
        assert categorize_output(0, cfg) == 0
        assert categorize_output(2, cfg) == 1
        assert categorize_output(40, cfg) == 2

    def test_uncovered_count_rejected(self):
        cfg = BinningConfig(parse_output_categories("0,2-3"), 2)
        with pytest.raises(ValueError):
            categorize_output(1, cfg)

    def test_negative_count_rejected(self):
        cfg = BinningConfig(parse_output_categories("0,1+"), 2)
        with pytest.raises(ValueError):
            categorize_output(-1, cfg)

    def test_overlapping_categories_rejected(self):
        with pytest.raises(ValueError):
            BinningConfig(parse_output_categories("0-2,2+"), 2)

    def test_open_ended_must_be_last(self):
        with pytest.raises(ValueError):
            BinningConfig(parse_output_categories("0+,5"), 2)

    def test_descending_categories_rejected(self):
        with pytest.raises(ValueError):
            BinningConfig(parse_output_categories("3-4,0-2"), 2)

    def test_single_category_rejected(self):
        with pytest.raises(ValueError):
            BinningConfig(parse_output_categories("0+"), 2)

    def test_too_few_input_bins_rejected(self):
        with pytest.raises(ValueError):
            BinningConfig(parse_output_categories("0,1+"), 1)


class TestRecords:
    def test_trial_record_bad_condition(self):
        with pytest.raises(ValueError):
            TrialRecord("u01", "placebo", 1.0, 1.0, 0)

    def test_trial_record_negative_spikes(self):
        with pytest.raises(ValueError):
            TrialRecord("u01", "control", 1.0, 1.0, -1)

    def test_trial_record_nonfinite_mean(self):
        with pytest.raises(ValueError):
            TrialRecord("u01", "control", float("inf"), 1.0, 0)

    def test_grid_record_negative_level(self):
        with pytest.raises(ValueError):
            GridRecord(-10, 0, 0)


def _four_corner_trials():
    rows = []
    for basal, apical, spikes in [
        (0.0, 0.0, 0),
        (0.0, 9.0, 1),
        (5.0, 0.0, 0),
        (5.0, 9.0, 3),
    ]:
        rows.append(TrialRecord("u01", "control", basal, apical, spikes))
    return rows


class TestIngestTrials:
    def test_hand_built_joint(self):
        cfg = BinningConfig(parse_output_categories("0,1+"), 2)
        d = ingest_trials(_four_corner_trials(), cfg)
        assert d.shape == (2, 2, 2)
        expect = np.zeros((2, 2, 2))
        expect[0, 0, 0] = 0.25  # silent, low basal, low apical
        expect[1, 0, 1] = 0.25  # spiking, low basal, high apical
        expect[0, 1, 0] = 0.25
        expect[1, 1, 1] = 0.25
        np.testing.assert_allclose(d.pmf, expect, atol=1e-15)

    def test_equal_trial_weights(self):
        cfg = BinningConfig(parse_output_categories("0,1+"), 2)
        rows = _four_corner_trials() + [TrialRecord("u01", "control", 0.0, 0.0, 0)]
        d = ingest_trials(rows, cfg)
        assert d.pmf[0, 0, 0] == pytest.approx(0.4)

    def test_output_labels_are_category_labels(self):
        cfg = BinningConfig(parse_output_categories("0,1-2,3+"), 2)
        d = ingest_trials(_four_corner_trials(), cfg)
        assert [c.label for c in d.alpha_y.labels] == ["0", "1-2", "3+"]

    def test_empty_rejected(self):
        cfg = BinningConfig(parse_output_categories("0,1+"), 2)
        with pytest.raises(ValueError):
            ingest_trials([], cfg)

    def test_too_few_distinct_levels_rejected(self):
        cfg = BinningConfig(parse_output_categories("0,1+"), 2)
        rows = [
            TrialRecord("u01", "control", 1.0, 0.0, 0),
            TrialRecord("u01", "control", 1.0, 9.0, 1),
        ]
        with pytest.raises(ValueError):
            ingest_trials(rows, cfg)


class TestIngestGrid:
    def setup_method(self):
        self.records = datagen.synthetic_grid()
        self.cfg = parse_output_categories("0,1-2,3+")

    def test_basic_cell(self):
        d = ingest_grid(self.records, (0, 100), (0, 100), self.cfg)
        # 11 x 11 grid points, uniform weight over live cells.
        assert d.pmf.sum() == pytest.approx(1.0)
        assert d.shape[1] == 11
        assert d.shape[2] == 11
        y_total = marginal(d, "y").sum()
        assert y_total == pytest.approx(1.0)

    def test_each_grid_point_weighted_equally(self):
        d = ingest_grid(self.records, (0, 50), (0, 50), self.cfg)
        nz = d.pmf[d.pmf > 0]
        assert np.allclose(nz, nz[0])
        assert nz.size == 6 * 6

    def test_misaligned_range_rejected(self):
        with pytest.raises(ValueError):
            ingest_grid(self.records, (0, 95), (0, 100), self.cfg)

    def test_empty_intersection_rejected(self):
        with pytest.raises(ValueError):
            ingest_grid(self.records, (210, 260), (0, 100), self.cfg)

    def test_duplicate_cell_rejected(self):
        rows = list(self.records) + [self.records[0]]
        with pytest.raises(ValueError):
            ingest_grid(rows, (0, 100), (0, 100), self.cfg)

    def test_input_alphabets_are_levels(self):
        d = ingest_grid(self.records, (0, 30), (0, 20), self.cfg)
        assert d.alpha_b.labels == (0, 10, 20, 30)
        assert d.alpha_a.labels == (0, 10, 20)


class TestMatchSupport:
    def test_intersection_kept(self):
        a = [
            TrialRecord("u01", "control", 0.0, 0.0, 0),
            TrialRecord("u01", "control", 1.0, 1.0, 1),
        ]
        b = [
            TrialRecord("u01", "treatment", 1.0, 1.0, 2),
            TrialRecord("u01", "treatment", 2.0, 2.0, 3),
        ]
        ka, kb = match_support(a, b)
        assert [r.spike_count for r in ka] == [1]
        assert [r.spike_count for r in kb] == [2]

    def test_disjoint_support_rejected(self):
        a = [TrialRecord("u01", "control", 0.0, 0.0, 0)]
        b = [TrialRecord("u01", "treatment", 1.0, 1.0, 0)]
        with pytest.raises(ValueError):
            match_support(a, b)

    def test_empty_side_rejected(self):
        a = [TrialRecord("u01", "control", 0.0, 0.0, 0)]
        with pytest.raises(ValueError):
            match_support(a, [])


class TestCsvRoundTrip:
    def test_trials_round_trip(self, tmp_path):
        rows = datagen.synthetic_trials()[:200]
        path = tmp_path / "trials.csv"
        datagen.write_trials_csv(rows, path)
        back = read_trials_csv(path)
        assert back == rows

    def test_grid_round_trip(self, tmp_path):
        rows = datagen.synthetic_grid()
        path = tmp_path / "grid.csv"
        datagen.write_grid_csv(rows, path)
        back = read_grid_csv(path)
        assert back == rows

    def test_blank_lines_skipped(self, tmp_path):
        rows = datagen.synthetic_grid()[:5]
        path = tmp_path / "grid.csv"
        datagen.write_grid_csv(rows, path)
        path.write_text(path.read_text() + "\n\n")
        assert read_grid_csv(path) == rows

    def test_trials_header_mismatch(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("unit,condition,basal,apical,spikes\n")
        with pytest.raises(ValueError):
            read_trials_csv(path)

    def test_grid_header_mismatch(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("b,a,n\n0,0,0\n")
        with pytest.raises(ValueError):
            read_grid_csv(path)

    def test_field_count_error_reports_line(self, tmp_path):
        rows = datagen.synthetic_grid()[:3]
        path = tmp_path / "grid.csv"
        datagen.write_grid_csv(rows, path)
        path.write_text(path.read_text() + "10,20\n")
        with pytest.raises(ValueError, match="line 5"):
            read_grid_csv(path)

    def test_bad_value_error_reports_line(self, tmp_path):
        rows = datagen.synthetic_grid()[:3]
        path = tmp_path / "grid.csv"
        datagen.write_grid_csv(rows, path)
        path.write_text(path.read_text() + "10,20,many\n")
        with pytest.raises(ValueError, match="line 5"):
            read_grid_csv(path)


def test_quantile_bins_match_manual_quartiles():
    rng = np.random.default_rng(7)
    vals = rng.normal(size=101).tolist()
    bins = bin_quantile(vals, 4)
    order = np.argsort(np.asarray(vals), kind="stable")
    sizes = [sum(1 for b in bins if b == j) for j in range(4)]
    assert sum(sizes) == 101
    # Quartile boundaries at ceil(n*j/4) when no ties are present.
    assert sizes == [26, 25, 25, 25]
    sorted_bins = [bins[i] for i in order]
    assert sorted_bins == sorted(sorted_bins)


def test_spike_labels_preserve_count_order():
    cats = parse_output_categories("0,1,2,3+")
    assert [c.label for c in cats] == ["0", "1", "2", "3+"]
    assert math.inf not in [c.hi for c in cats[:-1]]
    assert cats[-1].hi is None
