import math

import numpy as np
import pytest

from mopyramid.metrics import Front, gd, igd, merge_pseudo_optimal, read_front, write_front
from mopyramid.pareto import nondominated_mask, nondominated_points

from util import oracle_nondominated_mask


def test_nondominated_mask_matches_quadratic_oracle():
    rng = np.random.default_rng(2)
    for m in (2, 3):
        for _ in range(20):
            pts = rng.integers(0, 6, size=(rng.integers(1, 60), m)).astype(float)
            assert np.array_equal(nondominated_mask(pts), oracle_nondominated_mask(pts))


def test_nondominated_mask_keeps_duplicate_optima():
    pts = np.array([[0.0, 1.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]])
    assert nondominated_mask(pts).tolist() == [True, True, True, False]


def test_nondominated_points_unique_and_sorted():
    pts = np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 1.0], [2.0, 2.0]])
    out = nondominated_points(pts)
    assert out.tolist() == [[0.0, 1.0], [1.0, 0.0]]


def test_front_rejects_dominated_and_collapses_duplicates():
    with pytest.raises(ValueError):
        Front([[0.0, 0.0], [1.0, 1.0]])
    front = Front([[0.0, 1.0], [0.0, 1.0], [1.0, 0.0]])
    assert len(front) == 2
    filtered = Front.nondominated([[0.0, 0.0], [1.0, 1.0], [0.0, 0.0]])
    assert len(filtered) == 1
    with pytest.raises(ValueError):
        Front(np.zeros((0, 2)))


def test_igd_zero_iff_reference_covered():
    ref = Front([[0.0, 2.0], [1.0, 1.0], [2.0, 0.0]])
    assert igd(ref, ref) == 0.0
    superset = Front([[-1.0, 3.0], [0.0, 2.0], [1.0, 1.0], [2.0, 0.0]])
    assert igd(superset, ref) == 0.0  # extra points never hurt
    partial = Front([[0.0, 2.0], [2.0, 0.0]])
    assert igd(partial, ref) > 0.0


def test_igd_hand_value():
    ref = np.array([[0.0, 0.0], [1.0, 1.0]])
    s = np.array([[0.0, 0.0]])
    assert igd(s, ref) == pytest.approx(math.sqrt(2.0) / 2.0)


def test_gd_hand_value_and_subset():
    ref = np.array([[0.0, 0.0], [1.0, 1.0]])
    assert gd(np.array([[2.0, 2.0]]), ref) == pytest.approx(math.sqrt(2.0))
    assert gd(np.array([[1.0, 1.0]]), ref) == 0.0


def test_gd_is_igd_with_swapped_arguments():
    rng = np.random.default_rng(9)
    for _ in range(20):
        a = nondominated_points(rng.uniform(0, 5, size=(12, 2)))
        b = nondominated_points(rng.uniform(0, 5, size=(12, 2)))
        assert gd(a, b) == pytest.approx(igd(b, a))


def test_igd_monotone_under_solution_growth():
    rng = np.random.default_rng(4)
    ref = nondominated_points(rng.uniform(0, 5, size=(20, 2)))
    s = rng.uniform(0, 5, size=(5, 2))
    base = igd(s, ref)
    widened = np.vstack([s, rng.uniform(0, 5, size=(5, 2))])
    assert igd(widened, ref) <= base + 1e-12


def test_normalized_distances_divide_by_reference_span():
    ref = np.array([[0.0, 0.0], [10.0, 2.0]])
    s = np.array([[10.0, 0.0]])
    # raw: distances 10 and 2; normalized: both corners at distance 1
    assert igd(s, ref) == pytest.approx((10.0 + 2.0) / 2.0)
    assert igd(s, ref, normalized=True) == pytest.approx(1.0)
    assert gd(s, ref, normalized=True) == pytest.approx(1.0)


def test_igd_rejects_empty():
    with pytest.raises(ValueError):
        igd(np.zeros((0, 2)), np.array([[0.0, 0.0]]))


def test_merge_pseudo_optimal():
    f1 = Front([[0.0, 2.0], [2.0, 0.0]])
    assert merge_pseudo_optimal([f1]) == f1
    dominated = Front([[1.0, 3.0], [3.0, 1.0]])
    assert merge_pseudo_optimal([f1, dominated]) == f1
    # idempotent
    merged = merge_pseudo_optimal([f1, dominated])
    assert merge_pseudo_optimal([merged]) == merged


def test_merge_matches_bruteforce_filter_on_random_union():
    rng = np.random.default_rng(21)
    batches = [rng.integers(0, 20, size=(50, 2)).astype(float) for _ in range(4)]
    union = np.vstack(batches)
    expected = np.unique(union[oracle_nondominated_mask(union)], axis=0)
    merged = merge_pseudo_optimal([Front.nondominated(b) for b in batches])
    assert np.array_equal(merged.points, expected)


def test_front_file_roundtrip_and_validation(tmp_path):
    front = Front([[0.0, 2.5], [1.0, 1.0], [2.5, 0.0]])
    path = tmp_path / "front.txt"
    write_front(front, path)
    assert read_front(path) == front
    # identical rewrite is byte-identical
    first = path.read_bytes()
    write_front(front, path)
    assert path.read_bytes() == first

    bad = tmp_path / "bad.txt"
    bad.write_text("0.0 0.0\n1.0 1.0\n", encoding="utf-8")
    with pytest.raises(ValueError):
        read_front(bad)
    assert len(read_front(bad, raw=True)) == 1
