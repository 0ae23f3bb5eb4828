import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subsetnet import (
    ErrorModel,
    ExitHistogram,
    SubsetInstance,
    build_grid,
    enumerate_subset_sums,
    simulate,
    simulate_simplistic,
    simulate_traced,
)
from subsetnet.analytics import exact_exit_distribution, noise_distribution
from subsetnet.export import histogram_csv, read_histogram_csv
from subsetnet.grid import GridLayout
from subsetnet.simulator import CHUNK_SIZE

G567 = build_grid(SubsetInstance((5, 6, 7)))
G237 = build_grid(SubsetInstance((2, 3, 7)))


def test_error_model_validation():
    assert ErrorModel().is_ideal
    assert not ErrorModel(0.01).is_ideal
    assert not ErrorModel(0.0, (0.4,)).is_ideal
    for bad in (-0.1, 1.0):
        with pytest.raises(ValueError):
            ErrorModel(bad)
    with pytest.raises(ValueError):
        ErrorModel(0.0, (0.0,))
    with pytest.raises(ValueError):
        simulate(G567, ErrorModel(0.0, (0.5, 0.5)), 10, 1)


def test_ideal_only_correct_exits():
    N = 800_000
    h = simulate(G237, ErrorModel(), N, 11)
    mult = enumerate_subset_sums(SubsetInstance((2, 3, 7))).as_array()
    assert h.total == N
    assert np.all(h.counts[mult == 0] == 0)
    sigma = math.sqrt(N * (1 / 8) * (7 / 8))
    assert np.all(np.abs(h.counts[mult > 0] - N / 8) <= 4 * sigma)


def test_flip_free_fraction():
    N = 1_000_000
    h = simulate_traced(G567, ErrorModel(0.01), N, 5)
    p = 0.99**15
    assert abs(h.correct.sum() / N - p) <= 3 * math.sqrt(p * (1 - p) / N)
    assert round(p, 2) == 0.86


def test_per_junction_flip_rate():
    # Z = 2: one pass junction, so faulty fraction is the flip rate
    N, p = 200_000, 0.07
    h = simulate_simplistic(2, p, N, 3)
    assert abs(h.faulty.sum() / N - p) <= 4 * math.sqrt(p * (1 - p) / N)


def test_thread_count_does_not_change_result():
    n = 3 * CHUNK_SIZE + 17
    a = simulate_traced(G567, ErrorModel(0.05), n, 2024, threads=1)
    b = simulate_traced(G567, ErrorModel(0.05), n, 2024, threads=8)
    assert a == b
    assert histogram_csv(a) == histogram_csv(b)


def test_same_seed_same_histogram_different_seed_differs():
    a = simulate(G567, ErrorModel(0.02), 5000, 1)
    assert a == simulate(G567, ErrorModel(0.02), 5000, 1)
    assert a != simulate(G567, ErrorModel(0.02), 5000, 2)


def test_traced_agrees_with_untraced():
    a = simulate(G567, ErrorModel(0.03), 20_000, 9)
    b = simulate_traced(G567, ErrorModel(0.03), 20_000, 9)
    assert np.array_equal(a.counts, b.counts)
    assert np.array_equal(b.correct + b.faulty, b.counts)


def test_traced_ideal_has_no_faulty_agents():
    h = simulate_traced(G567, ErrorModel(), 10_000, 4)
    assert h.faulty.sum() == 0


def test_single_agent():
    h = simulate_traced(G567, ErrorModel(0.3), 1, 77)
    assert h.total == 1
    assert np.count_nonzero(h.counts) == 1
    assert (h.correct + h.faulty).sum() == 1


def test_precondition_errors():
    for n in (0, -3):
        with pytest.raises(ValueError):
            simulate(G567, ErrorModel(), n, 1)
    with pytest.raises(ValueError):
        simulate(G567, ErrorModel(), 10, -1)
    with pytest.raises(ValueError):
        simulate(G567, ErrorModel(), 10, 2**64)
    with pytest.raises(ValueError):
        simulate_simplistic(0, 0.1, 10, 1)


def test_simplistic_ideal_splits_evenly():
    N = 100_000
    h = simulate_simplistic(18, 0.0, N, 8)
    assert h.counts[0] + h.counts[18] == N
    assert abs(h.counts[0] - N / 2) <= 4 * math.sqrt(N / 4)


def test_simplistic_large_error_peaks_at_centre():
    h = simulate_simplistic(18, 0.15, 1_000_000, 21)
    d = h.faulty_distribution()
    assert int(np.argmax(d)) in (8, 9, 10)
    assert d[9] > 2 * d[1]


def test_simplistic_small_error_is_flat():
    h = simulate_simplistic(18, 0.01, 1_000_000, 22)
    d = h.faulty_distribution()[1:18]
    n_f = h.faulty.sum()
    sigma = math.sqrt((1 / 17) * (16 / 17) / n_f)
    assert np.all(np.abs(d - 1 / 17) < 4 * sigma + 0.001)


def test_simplistic_matches_error_path_model():
    h = simulate_simplistic(12, 0.2, 400_000, 5)
    d = h.faulty_distribution()
    ref = noise_distribution(12, 0.2).p_non
    n_f = h.faulty.sum()
    assert np.all(np.abs(d - ref) <= 4 * np.sqrt(ref * (1 - ref) / n_f) + 1e-12)


def test_split_ratio_is_honoured():
    grid = build_grid(SubsetInstance((5,)))
    N = 100_000
    h = simulate(grid, ErrorModel(0.0, (0.3,)), N, 6)
    assert abs(h.counts[5] / N - 0.3) <= 4 * math.sqrt(0.21 / N)


def test_exact_distribution_conserves_and_prices_flip_free():
    c, f = exact_exit_distribution(G567, ErrorModel(0.15))
    assert c.sum() + f.sum() == pytest.approx(1.0, abs=1e-12)
    assert c.sum() == pytest.approx(0.85**15, rel=1e-12)
    c0, f0 = exact_exit_distribution(G237, ErrorModel())
    mult = enumerate_subset_sums(SubsetInstance((2, 3, 7))).as_array()
    assert f0.sum() == 0
    assert c0 == pytest.approx(mult / 8)


def test_exact_distribution_matches_path_model_on_simplistic_grid():
    c, f = exact_exit_distribution(GridLayout.simplistic(14), ErrorModel(0.1))
    f[0] = f[-1] = 0
    assert f / f.sum() == pytest.approx(noise_distribution(14, 0.1).p_non, abs=1e-12)


def test_traced_faulty_distribution_matches_exact():
    N = 1_000_000
    h = simulate_traced(G567, ErrorModel(0.15), N, 31)
    _, f = exact_exit_distribution(G567, ErrorModel(0.15))
    f[0] = f[-1] = 0
    ref = f / f.sum()
    assert np.max(np.abs(h.faulty_distribution() - ref)) < 0.005


def test_faulty_distribution_requires_trace():
    with pytest.raises(ValueError):
        simulate(G567, ErrorModel(), 10, 1).faulty_distribution()
    with pytest.raises(ValueError):
        simulate_traced(G567, ErrorModel(), 10, 1).faulty_distribution()


def test_histogram_csv_round_trip():
    h = simulate_traced(G237, ErrorModel(0.1), 500, 3)
    text = histogram_csv(h)
    assert text.splitlines()[0] == "exit,count,correct,faulty"
    assert read_histogram_csv(text) == h
    plain = simulate(G237, ErrorModel(0.1), 500, 3)
    assert histogram_csv(plain).splitlines()[0] == "exit,count"


def test_histogram_rejects_inconsistent_split():
    with pytest.raises(ValueError):
        ExitHistogram([3, 1], correct=[1, 1], faulty=[1, 1])


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.integers(1, 6), min_size=1, max_size=4),
    st.floats(0, 0.5),
    st.integers(1, 3000),
    st.integers(0, 2**64 - 1),
)
def test_conservation(elements, p, n, seed):
    grid = build_grid(SubsetInstance(elements))
    h = simulate_traced(grid, ErrorModel(p), n, seed)
    assert h.total == n
    assert np.all(h.counts >= 0)
    if p == 0:
        mult = enumerate_subset_sums(SubsetInstance(elements)).as_array()
        assert np.all(h.counts[mult == 0] == 0)
