import numpy as np
import pytest

from uvdkit import (
    EmbeddingTrajectory,
    decompose,
    random_subgoals,
    relabel,
    uniform_labels,
)
from uvdkit.decompose import SubgoalDecomposition, budgets_from_indices

from .oracles import relabel_oracle


def make_decomp(indices):
    return SubgoalDecomposition(
        subgoal_indices=tuple(indices), budgets=budgets_from_indices(indices)
    )


class TestRelabel:
    def test_two_subgoal_example(self):
        labels = relabel(make_decomp([4, 9]), T=10)
        assert labels == [4, 4, 4, 4, 4, 9, 9, 9, 9, 9]

    def test_subgoal_frame_is_its_own_goal(self):
        labels = relabel(make_decomp([4, 9]), T=10)
        assert labels[4] == 4 and labels[9] == 9

    def test_matches_brute_force_oracle(self):
        rng = np.random.default_rng(0)
        for _ in range(25):
            t = int(rng.integers(3, 300))
            count = int(rng.integers(1, max(2, t // 10)))
            picks = sorted(rng.choice(t - 1, size=count, replace=False).tolist())
            indices = [int(p) for p in picks if p < t - 1] + [t - 1]
            decomp = make_decomp(sorted(set(indices)))
            assert relabel(decomp, t) == relabel_oracle(decomp.subgoal_indices, t)

    def test_nondecreasing_and_pointwise_geq_t(self):
        labels = relabel(make_decomp([7, 30, 59]), T=60)
        assert all(lab >= t for t, lab in enumerate(labels))
        assert labels == sorted(labels)

    def test_distinct_labels_are_exactly_the_subgoal_set(self):
        rng = np.random.default_rng(1)
        traj = EmbeddingTrajectory(frames=rng.normal(size=(120, 5)).astype(np.float32))
        decomp = decompose(traj)
        labels = relabel(decomp, traj.T)
        assert set(labels) == set(decomp.subgoal_indices)

    def test_inconsistent_length_rejected(self):
        with pytest.raises(ValueError):
            relabel(make_decomp([4, 9]), T=11)


class TestUniformLabels:
    def test_window_one_forces_successor(self):
        assert uniform_labels(5, window=1, seed=0) == [1, 2, 3, 4, 4]

    def test_final_step_labels_itself(self):
        assert uniform_labels(50, window=7, seed=3)[-1] == 49

    def test_labels_within_window(self):
        labels = uniform_labels(100, window=10, seed=4)
        for t in range(99):
            assert t + 1 <= labels[t] <= min(t + 10, 99)

    def test_seed_determinism(self):
        assert uniform_labels(80, 5, seed=9) == uniform_labels(80, 5, seed=9)

    def test_invalid_window(self):
        with pytest.raises(ValueError):
            uniform_labels(10, window=0, seed=0)


class TestRandomSubgoals:
    def test_sorted_distinct_ending_at_last_frame(self):
        for seed in range(20):
            out = random_subgoals(100, seed)
            assert out == sorted(out)
            assert len(set(out)) == len(out)
            assert out[-1] == 99

    def test_seed_determinism(self):
        assert random_subgoals(64, 5) == random_subgoals(64, 5)

    def test_count_distribution_uniform_over_three_choices(self):
        counts = {3: 0, 4: 0, 5: 0}
        n = 10_000
        for seed in range(n):
            counts[len(random_subgoals(100, seed)) - 1] += 1
        p = 1.0 / 3.0
        sigma = (n * p * (1 - p)) ** 0.5
        for c in counts.values():
            assert abs(c - n * p) <= 3 * sigma

    def test_too_short_rejected(self):
        with pytest.raises(ValueError):
            random_subgoals(5, 0)
