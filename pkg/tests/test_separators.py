import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from disksever import (Instance, Line, axis_parallel_separator, best_line_for_slope,
                       build_graph, classify_all, exact_centerpoint, gen_random, gen_snake,
                       line_through_point_separator, optimal_line_separator,
                       random_line_separator)
from disksever.separators import (FOUR_FIFTHS, TWO_THIRDS, SeparatorValidationError,
                                  balance_cap, critical_angles, crossings_through_point,
                                  sample_slopes)

from conftest import random_instance
from oracles import event_angles, grid_oracle, slope_oracle

disk_lists = st.lists(st.tuples(st.floats(-20, 20), st.floats(-20, 20), st.floats(0.1, 4.0)),
                      min_size=1, max_size=25)


def make(disks):
    return Instance([d[:2] for d in disks], [d[2] for d in disks])


def test_balance_cap():
    assert balance_cap(TWO_THIRDS, 3) == 2
    assert balance_cap(TWO_THIRDS, 71) == 48
    assert balance_cap(FOUR_FIFTHS, 10) == 8
    assert balance_cap(0.5, 7) == 4


def test_snake_vertical_line_through_connector():
    inst = gen_snake(11)
    crossed, left, right = classify_all(Line.vertical(6.0), inst)
    assert crossed.tolist() == [35] and left == right == 35


@given(disk_lists, st.floats(0, math.pi), st.sampled_from([0.5, TWO_THIRDS, 0.8, 1.0]))
def test_slope_sweep_matches_offset_oracle(disks, angle, alpha):
    inst = make(disks)
    res = best_line_for_slope(inst, angle, alpha)
    # a line through the median center projection is always balanced
    assert res is not None
    best, _ = slope_oracle(inst.centers, inst.radii, res.line.nx, res.line.ny, alpha)
    assert res.size == best[0]
    res.validate(inst)


grid_disks = st.lists(st.tuples(st.integers(-160, 160).map(lambda v: v / 8),
                                st.integers(-160, 160).map(lambda v: v / 8),
                                st.floats(0.1, 4.0)), min_size=1, max_size=25)


@given(grid_disks, st.floats(0, math.pi))
def test_slope_beats_centerpoint_line(disks, angle):
    inst = make(disks)
    p = exact_centerpoint(inst.centers)
    through = crossings_through_point(inst, p, [angle])[0]
    assert best_line_for_slope(inst, angle).size <= through


def test_slope_line_flip_symmetry(rng):
    inst = random_instance(rng, 200, 20.0)
    a = best_line_for_slope(inst, 0.7)
    b = best_line_for_slope(inst, 0.7 + math.pi)
    assert a.size == b.size


def test_sample_slopes_nested_and_deterministic():
    short = sample_slopes(7, 5)
    long = sample_slopes(7, 50)
    assert [s.angle for s in short] == [s.angle for s in long[:5]]
    assert all(0 <= s.angle < math.pi for s in long)
    assert [s.angle for s in sample_slopes(8, 5)] != [s.angle for s in short]


def test_random_separator_deterministic_and_monotone(rng):
    inst = random_instance(rng, 400, 25.0)
    a = random_line_separator(inst, 20, seed=3)
    b = random_line_separator(inst, 20, seed=3)
    assert a.size == b.size and a.line == b.line
    sizes = [random_line_separator(inst, k, seed=3).size for k in (1, 2, 5, 20, 60)]
    assert sizes == sorted(sizes, reverse=True)
    runs = random_line_separator(inst, 20, seed=3, reduce="all")
    assert min(r.size for r in runs) == a.size
    assert a.trials_used == 20


def test_random_separator_rejects_bad_args(rng):
    inst = random_instance(rng, 10)
    with pytest.raises(ValueError):
        random_line_separator(inst, 0)
    with pytest.raises(ValueError):
        random_line_separator(inst, 3, alpha=0.3)
    with pytest.raises(ValueError):
        best_line_for_slope(inst, float("nan"))


def test_validate_catches_tampering(rng):
    inst = random_instance(rng, 30)
    res = random_line_separator(inst, 5)
    bad = type(res)(res.line, res.crossed[:-1], res.left, res.right + 1, res.alpha, "x")
    with pytest.raises(SeparatorValidationError):
        bad.validate(inst)
    skew = type(res)(Line.horizontal(-100.0), np.array([], int), 0, 30, TWO_THIRDS, "x")
    with pytest.raises(SeparatorValidationError):
        skew.validate(inst)


def test_line_through_point_threshold(rng):
    inst = random_instance(rng, 300, 20.0)
    p = exact_centerpoint(inst.centers)
    full = line_through_point_separator(inst, p, 30, seed=1)
    angles = [s.angle for s in sample_slopes(1, 30)]
    counts = crossings_through_point(inst, p, angles)
    assert full.size == counts.min()
    early = line_through_point_separator(inst, p, 30, seed=1, threshold=counts[0])
    assert early.trials_used == 1 and early.size == counts[0]
    assert early.is_balanced()


def test_axis_parallel_small_cases():
    for n in range(1, 6):
        inst = Instance([[i * 3.0, 0.0] for i in range(n)], np.ones(n))
        res = axis_parallel_separator(inst)
        assert res.left <= balance_cap(FOUR_FIFTHS, n) and res.right <= balance_cap(FOUR_FIFTHS, n)
        assert (res.line.nx, res.line.ny) in ((0.0, 1.0), (1.0, 0.0))


def axis_oracle(inst):
    """Every horizontal/vertical candidate of the quantile construction, recounted."""
    n = inst.n
    q = n // 5
    best = None
    for axis, make_line in ((1, Line.horizontal), (0, Line.vertical)):
        s = np.sort(inst.centers[:, axis])
        lo = (s[q - 1] + s[q]) / 2 if s[q - 1] < s[q] else s[q]
        hi = (s[n - q - 1] + s[n - q]) / 2 if s[n - q - 1] < s[n - q] else s[n - q - 1]
        if hi - lo < 2:
            positions = [(lo + hi) / 2]
        else:
            positions = [lo + i for i in range(1, int(math.ceil(hi - lo - 1)) + 1)]
        for pos in positions:
            size = classify_all(make_line(pos), inst)[0].size
            if best is None or size < best:
                best = size
    return best


@pytest.mark.parametrize("n,L", [(6, 3.0), (50, 10.0), (500, 30.0), (2000, 100.0), (3000, 500.0)])
def test_axis_parallel_matches_oracle(n, L):
    inst = gen_random(n, L, seed=n, require_connected=False)
    res = axis_parallel_separator(inst)
    assert res.size == axis_oracle(inst)
    cap = balance_cap(FOUR_FIFTHS, n)
    assert res.left <= cap and res.right <= cap
    m = build_graph(inst).m
    assert res.size <= 382 * math.sqrt(m + n / 10)


def test_critical_angles_match_independent_solver(rng):
    inst = random_instance(rng, 8, 6.0, 0.3, 2.0)
    ours = critical_angles(inst)
    theirs = event_angles(inst.centers, inst.radii)
    # every independently solved angle appears (modulo pi) in our list
    diff = np.abs(theirs[:, None] - ours[None, :])
    diff = np.minimum(diff, math.pi - diff)
    assert diff.min(axis=1).max() < 1e-9


@pytest.mark.parametrize("seed", range(8))
def test_optimal_matches_grid_oracle(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 11))
    inst = random_instance(rng, n, 6.0, 0.3, 1.5)
    res = optimal_line_separator(inst)
    assert res.size == grid_oracle(inst.centers, inst.radii, TWO_THIRDS)
    res.validate(inst)


@given(st.lists(st.tuples(st.floats(0, 8), st.floats(0, 8)), min_size=2, max_size=9))
def test_optimal_matches_oracle_on_unit_disks(points):
    inst = Instance(points, np.ones(len(points)))
    assert optimal_line_separator(inst).size == grid_oracle(inst.centers, inst.radii,
                                                            TWO_THIRDS, grid=720)


@pytest.mark.parametrize("seed", range(20))
def test_optimal_rotation_and_translation_invariant(seed):
    rng = np.random.default_rng(100 + seed)
    inst = random_instance(rng, int(rng.integers(2, 14)), 8.0, 0.3, 2.0)
    moved = inst.transformed(rng.uniform(0, 2 * math.pi), tuple(rng.uniform(-50, 50, 2)))
    assert optimal_line_separator(inst).size == optimal_line_separator(moved).size


def test_optimal_not_worse_than_random(rng):
    inst = random_instance(rng, 60, 12.0)
    assert optimal_line_separator(inst).size <= random_line_separator(inst, 50).size


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_optimal_snake_is_one(q):
    assert optimal_line_separator(gen_snake(q)).size == 1


def test_single_disk():
    inst = Instance([[0.0, 0.0]], [1.0])
    assert optimal_line_separator(inst).size == 0
    assert random_line_separator(inst, 3).size == 0


def test_axis_parallel_on_snake():
    inst = gen_snake(11)
    res = axis_parallel_separator(inst)
    assert res.size <= 11 and max(res.left, res.right) <= 57
    assert res.size == axis_oracle(inst)


def test_snake_random_lines_cross_at_least_one():
    res = random_line_separator(gen_snake(33), 100, seed=42)
    assert res.size >= 1


@pytest.mark.parametrize("seed", range(10))
def test_slope_rotation_equivariance(seed):
    rng = np.random.default_rng(300 + seed)
    inst = random_instance(rng, 150, 15.0, 0.5, 1.5)
    theta = rng.uniform(0, math.pi)
    moved = inst.transformed(theta)
    for s in sample_slopes(seed, 5):
        a = best_line_for_slope(inst, s.angle).size
        b = best_line_for_slope(moved, s.angle + theta).size
        assert a == b
