import math

import numpy as np
import pytest

from ordpat2d import (
    EmptyInputError,
    InvalidInputError,
    PatternHistogram,
    TieBreakPolicy,
    TypeHistogram,
    alt_params,
    analyze,
    checkerboard,
    js_complexity,
    pattern_histogram,
    permutation_entropy,
    ramp,
    tau_kappa,
    type_histogram,
    white_noise,
)


def reference_entropy(p):
    """Independent hand-coded evaluation of the normalized entropy."""
    h = 0.0
    for pk in p:
        if pk > 0:
            h -= pk * math.log(pk)
    return h / math.log(24)


def reference_complexity(p):
    """Independent hand-coded evaluation of the complexity, raw-nat bracket."""
    def raw(q):
        return -sum(x * math.log(x) for x in q if x > 0)

    pe = [1.0 / 24.0] * 24
    mix = [(a + b) / 2.0 for a, b in zip(p, pe)]
    q_max = 0.5 * (math.log(96) - 25.0 / 24.0 * math.log(25))
    q = (raw(mix) - raw(p) / 2.0 - raw(pe) / 2.0) / q_max
    return reference_entropy(p) * q


def block_uniform(block):
    p = np.zeros(24)
    p[8 * block:8 * (block + 1)] = 1.0 / 8.0
    return PatternHistogram(p, 800)


class TestHistograms:
    def test_all_threes(self):
        h = type_histogram(np.full((3, 4), 3, dtype=np.uint8))
        np.testing.assert_allclose(h.q, [0, 0, 1])
        assert h.count == 12

    def test_uniform_types(self):
        h = type_histogram(np.array([[1, 2, 3], [1, 2, 3]]))
        np.testing.assert_allclose(h.q, [1 / 3, 1 / 3, 1 / 3])

    def test_empty_rejected(self):
        with pytest.raises(EmptyInputError):
            type_histogram(np.empty((0, 5)))
        with pytest.raises(EmptyInputError):
            pattern_histogram(np.empty((0,)))

    def test_pattern_blocks_sum_to_types(self):
        grid = white_noise(40, 40, seed=4)
        from ordpat2d import extract_fields

        types, indices = extract_fields(grid, 1)
        th = type_histogram(types)
        ph = pattern_histogram(indices)
        np.testing.assert_allclose(ph.type_histogram().q, th.q, atol=1e-15)
        assert abs(ph.p.sum() - 1.0) < 1e-12

    def test_histogram_validation(self):
        with pytest.raises(InvalidInputError):
            TypeHistogram(np.array([0.5, 0.5, 0.5]), 10)
        with pytest.raises(InvalidInputError):
            PatternHistogram(np.full(24, 0.1), 10)


class TestTauKappa:
    def test_white_noise_point(self):
        assert tau_kappa(TypeHistogram(np.array([1, 1, 1]) / 3, 9)) == (0.0, 0.0)

    def test_smooth_extreme(self):
        tau, kappa = tau_kappa(TypeHistogram(np.array([1.0, 0.0, 0.0]), 9))
        assert tau == pytest.approx(2 / 3, abs=1e-15)
        assert kappa == 0.0

    def test_checkerboard_extreme(self):
        tau, kappa = tau_kappa(TypeHistogram(np.array([0.0, 0.0, 1.0]), 9))
        assert tau == pytest.approx(-1 / 3, abs=1e-15)
        assert kappa == -1.0

    def test_contrast_orthogonality(self):
        tau_w = np.array([2 / 3, -1 / 3, -1 / 3])
        kappa_w = np.array([0.0, 1.0, -1.0])
        ones = np.ones(3)
        assert tau_w @ kappa_w == 0.0
        assert abs(tau_w @ ones) < 1e-15
        assert kappa_w @ ones == 0.0


class TestAltParams:
    @pytest.mark.parametrize("q, expected", [
        ((1 / 3, 1 / 3, 1 / 3), (0.0, 0.0)),
        ((1.0, 0.0, 0.0), (-1 / 3, 1.0)),
        ((0.0, 0.0, 1.0), (2 / 3, 0.0)),
    ])
    def test_values(self, q, expected):
        got = alt_params(TypeHistogram(np.array(q), 9))
        assert got == pytest.approx(expected, abs=1e-15)


class TestEntropyComplexity:
    def test_uniform_is_maximal(self):
        p = PatternHistogram(np.full(24, 1 / 24), 240)
        assert permutation_entropy(p) == pytest.approx(1.0, abs=1e-15)
        assert js_complexity(p) == pytest.approx(0.0, abs=1e-15)

    def test_degenerate_is_zero(self):
        p = np.zeros(24)
        p[4] = 1.0
        ph = PatternHistogram(p, 10)
        assert permutation_entropy(ph) == 0.0
        assert js_complexity(ph) == 0.0

    def test_block_uniform_entropy(self):
        ph = block_uniform(0)
        assert permutation_entropy(ph) == pytest.approx(
            math.log(8) / math.log(24), abs=1e-15)

    def test_against_reference_implementation(self):
        rng = np.random.default_rng(12)
        cases = [block_uniform(i) for i in range(3)]
        for _ in range(50):
            w = rng.random(24) ** 3
            cases.append(PatternHistogram(w / w.sum(), 100))
        for ph in cases:
            assert permutation_entropy(ph) == pytest.approx(
                reference_entropy(ph.p), abs=1e-12)
            assert js_complexity(ph) == pytest.approx(
                reference_complexity(ph.p), abs=1e-12)

    def test_ranges(self):
        rng = np.random.default_rng(3)
        for _ in range(200):
            w = rng.random(24) ** 5
            ph = PatternHistogram(w / w.sum(), 100)
            assert 0.0 <= permutation_entropy(ph) <= 1.0
            assert js_complexity(ph) >= 0.0

    def test_invariant_under_within_block_relabeling(self):
        rng = np.random.default_rng(8)
        w = rng.random(24)
        p = w / w.sum()
        shuffled = p.copy()
        for block in range(3):
            seg = shuffled[8 * block:8 * (block + 1)]
            shuffled[8 * block:8 * (block + 1)] = rng.permutation(seg)
        a, b = PatternHistogram(p, 50), PatternHistogram(shuffled, 50)
        assert permutation_entropy(a) == pytest.approx(permutation_entropy(b), abs=1e-12)
        assert js_complexity(a) == pytest.approx(js_complexity(b), abs=1e-12)
        np.testing.assert_allclose(a.type_histogram().q, b.type_histogram().q, atol=1e-12)


class TestAnalyze:
    def test_white_noise_near_origin(self):
        fv = analyze(white_noise(512, 512, seed=21), 1)
        # 4 asymptotic standard deviations with U = 511**2
        u = 511 ** 2
        assert abs(fv.tau) < 4 * math.sqrt(11 / 45 / u)
        assert abs(fv.kappa) < 4 * math.sqrt(35 / 45 / u)
        assert fv.count == u

    def test_ramp_is_pure_type_one(self):
        fv = analyze(ramp(40, 40, 1.0, 1.0), 1, TieBreakPolicy("deterministic"))
        assert fv.q1 == 1.0
        assert fv.tau == pytest.approx(2 / 3, abs=1e-15)

    def test_checkerboard_extreme(self):
        fv = analyze(checkerboard(20, 20), 1, TieBreakPolicy("deterministic"))
        assert (fv.tau, fv.kappa) == (pytest.approx(-1 / 3, abs=1e-15), -1.0)

    def test_feature_ranges_and_block_sums(self):
        for seed in range(5):
            fv = analyze(white_noise(32, 32, seed=seed), 2)
            assert -1 / 3 - 1e-12 <= fv.tau <= 2 / 3 + 1e-12
            assert -1.0 <= fv.kappa <= 1.0
            assert 0.0 <= fv.entropy <= 1.0
            assert fv.complexity >= 0.0
            np.testing.assert_allclose(
                fv.patterns.reshape(3, 8).sum(axis=1), [fv.q1, fv.q2, fv.q3],
                atol=1e-12)

    def test_records_delay_and_source(self):
        fv = analyze(white_noise(16, 16, seed=0), 3, source="probe")
        assert fv.delay == 3
        assert fv.source == "probe"
        assert fv.count == 13 * 13
