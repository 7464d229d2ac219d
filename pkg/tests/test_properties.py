"""Property-based invariance checks (hypothesis)."""

import numpy as np
from hypothesis import given, settings, strategies as st

from ordpat2d import (
    TieBreakPolicy,
    analyze,
    classify_type,
    extract_fields,
    normalize,
    tile,
)

distinct_windows = st.permutations(range(4)).map(
    lambda p: tuple(float(v) * 1.5 - 2.0 for v in p))


def distinct_grid(seed, rows, cols):
    # shuffled integers: distinct values, well-separated gaps
    rng = np.random.default_rng(seed)
    return rng.permutation(rows * cols).reshape(rows, cols).astype(float)


@given(distinct_windows)
def test_rotation_closure(window):
    w1, w2, w3, w4 = window
    assert classify_type(w3, w1, w4, w2) == classify_type(w1, w2, w3, w4)


@given(distinct_windows)
def test_monotone_map_preserves_type(window):
    transformed = tuple(np.exp(0.5 * w) for w in window)
    assert classify_type(*transformed) == classify_type(*window)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.integers(5, 16), st.integers(5, 16),
       st.sampled_from(["affine", "cube", "exp", "sqrt"]))
def test_monotone_invariance_of_fields(seed, rows, cols, fname):
    grid = distinct_grid(seed, rows, cols)
    f = {
        "affine": lambda x: 2.5 * x + 7.0,
        "cube": lambda x: x ** 3,
        "exp": lambda x: np.exp(x / grid.size),
        "sqrt": lambda x: np.sqrt(x + 1.0),
    }[fname]
    policy = TieBreakPolicy("noise", seed=seed % 1000)
    t1, i1 = extract_fields(grid, 1, policy)
    t2, i2 = extract_fields(f(grid), 1, policy)
    np.testing.assert_array_equal(t1, t2)
    np.testing.assert_array_equal(i1, i2)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 4), st.integers(1, 4),
       st.integers(2, 5), st.integers(2, 5))
def test_tile_partition_exact(seed, grid_rows, grid_cols, tile_rows, tile_cols):
    grid = distinct_grid(seed, grid_rows * tile_rows, grid_cols * tile_cols)
    tiles = tile(grid, tile_rows, tile_cols, grid_rows, grid_cols)
    rebuilt = np.block(
        [[tiles[i * grid_cols + j] for j in range(grid_cols)]
         for i in range(grid_rows)])
    np.testing.assert_array_equal(rebuilt, grid)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.integers(6, 20), st.integers(6, 20))
def test_normalize_then_analyze_equal(seed, rows, cols):
    grid = distinct_grid(seed, rows, cols)
    policy = TieBreakPolicy("noise", seed=seed % 1000)
    before = analyze(grid, 1, policy)
    after = analyze(normalize(grid), 1, policy)
    assert (before.q1, before.q2, before.q3) == (after.q1, after.q2, after.q3)
    assert (before.tau, before.kappa) == (after.tau, after.kappa)
    np.testing.assert_array_equal(before.patterns, after.patterns)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 3))
def test_feature_ranges_always_hold(seed, d):
    grid = distinct_grid(seed, 12, 12)
    fv = analyze(grid, d)
    assert -1 / 3 - 1e-12 <= fv.tau <= 2 / 3 + 1e-12
    assert -1.0 <= fv.kappa <= 1.0
    assert 0.0 <= fv.entropy <= 1.0
    assert fv.complexity >= 0.0
