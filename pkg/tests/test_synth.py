import numpy as np
import pytest

from ordpat2d import (
    FractalSpec,
    InvalidInputError,
    TieBreakPolicy,
    analyze,
    checkerboard,
    extract_fields,
    fractal_surface,
    ramp,
    white_noise,
)


class TestWhiteNoise:
    def test_seed_determinism(self):
        np.testing.assert_array_equal(white_noise(8, 9, seed=5), white_noise(8, 9, seed=5))
        assert not np.array_equal(white_noise(8, 9, seed=5), white_noise(8, 9, seed=6))

    def test_no_ties_in_practice(self):
        grid = white_noise(64, 64, seed=0)
        assert np.unique(grid).size == grid.size

    def test_type_frequencies_near_third(self):
        fv = analyze(white_noise(256, 256, seed=1), 1)
        u = 255 ** 2
        assert abs(fv.tau) < 4 * np.sqrt(11 / 45 / u)
        assert abs(fv.kappa) < 4 * np.sqrt(35 / 45 / u)

    def test_size_validation(self):
        with pytest.raises(InvalidInputError):
            white_noise(1, 10)


class TestCheckerboard:
    def test_values(self):
        grid = checkerboard(3, 3, low=2.0, high=5.0)
        np.testing.assert_array_equal(grid, [[2, 5, 2], [5, 2, 5], [2, 5, 2]])

    def test_all_type_three_at_odd_delays(self):
        grid = checkerboard(12, 12)
        for d in (1, 3):
            types, _ = extract_fields(grid, d, TieBreakPolicy("deterministic"))
            assert (types == 3).all()

    def test_feature_extreme(self):
        fv = analyze(checkerboard(16, 16), 1, TieBreakPolicy("deterministic"))
        assert (fv.q1, fv.q2, fv.q3) == (0.0, 0.0, 1.0)
        assert fv.kappa == -1.0

    def test_even_delay_is_tie_break_artifact(self):
        # windows at d=2 are constant; the deterministic flat-index order
        # then makes every window an increasing ramp (type I)
        types, _ = extract_fields(checkerboard(10, 10), 2, TieBreakPolicy("deterministic"))
        assert (types == 1).all()

    def test_ordering_validation(self):
        with pytest.raises(InvalidInputError):
            checkerboard(4, 4, low=1.0, high=1.0)


class TestRamp:
    def test_plane_values(self):
        grid = ramp(3, 4, a=2.0, b=-1.0, c=5.0)
        assert grid[0, 0] == 5.0
        assert grid[2, 3] == 2.0 * 2 - 1.0 * 3 + 5.0

    @pytest.mark.parametrize("a,b", [(1, 1), (1, -1), (-1, 1), (-1, -1)])
    def test_all_sign_combinations_type_one(self, a, b):
        for d in (1, 2, 5):
            fv = analyze(ramp(12, 12, a, b), d, TieBreakPolicy("deterministic"))
            assert fv.q1 == 1.0

    def test_zero_slope_rejected(self):
        with pytest.raises(InvalidInputError):
            ramp(4, 4, 0.0, 1.0)
        with pytest.raises(InvalidInputError):
            ramp(4, 4, 1.0, 0.0)


class TestFractalSurface:
    def test_dimensions(self):
        assert fractal_surface(FractalSpec(level=4, hurst=0.5)).shape == (17, 17)

    def test_seed_determinism(self):
        spec = FractalSpec(level=5, hurst=0.3, seed=42)
        np.testing.assert_array_equal(fractal_surface(spec), fractal_surface(spec))
        other = fractal_surface(FractalSpec(level=5, hurst=0.3, seed=43))
        assert not np.array_equal(fractal_surface(spec), other)

    def test_smoothness_grows_with_hurst(self):
        lo = [analyze(fractal_surface(FractalSpec(7, 0.1, seed=s)), 5).tau
              for s in range(5)]
        hi = [analyze(fractal_surface(FractalSpec(7, 0.9, seed=s)), 5).tau
              for s in range(5)]
        assert np.mean(hi) > np.mean(lo)

    def test_spec_validation(self):
        with pytest.raises(InvalidInputError):
            FractalSpec(level=0, hurst=0.5)
        with pytest.raises(InvalidInputError):
            FractalSpec(level=3, hurst=1.0)
        with pytest.raises(InvalidInputError):
            FractalSpec(level=3, hurst=0.5, sigma0=0.0)
