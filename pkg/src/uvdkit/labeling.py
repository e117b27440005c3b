"""Goal relabeling for goal-conditioned imitation, plus heuristic baselines.

Each timestep is assigned the first subgoal at or after it ("at or after"
because the final frame must be its own goal). The Uniform and Random
baselines replicate the heuristic labelings used as comparison points:
Uniform draws a goal within a fixed-size forward window, Random picks 3-5
arbitrary subgoal frames. Both are seeded with numpy's PCG64 generator,
which is reproducible across platforms.
"""

from __future__ import annotations

import numpy as np

from .decompose import SubgoalDecomposition


def relabel(decomp: SubgoalDecomposition, T: int) -> list[int]:
    """labels[t] = smallest subgoal index g with g >= t."""
    subgoals = np.asarray(decomp.subgoal_indices)
    if subgoals[-1] != T - 1:
        raise ValueError(
            f"decomposition ends at {subgoals[-1]}, inconsistent with T={T}"
        )
    positions = np.searchsorted(subgoals, np.arange(T), side="left")
    return [int(subgoals[p]) for p in positions]


def uniform_labels(T: int, window: int, seed: int) -> list[int]:
    """For each t, a goal drawn uniformly from {t+1, ..., min(t+window, T-1)};
    the final timestep labels itself."""
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    if T < 2:
        raise ValueError(f"T must be >= 2, got {T}")
    rng = np.random.default_rng(seed)
    labels = []
    for t in range(T - 1):
        hi = min(t + window, T - 1)
        labels.append(int(rng.integers(t + 1, hi + 1)))
    labels.append(T - 1)
    return labels


def random_subgoals(T: int, seed: int) -> list[int]:
    """3 to 5 distinct random frames from {0, ..., T-2}, sorted, with the
    final frame appended so the last goal is always present."""
    if T < 6:
        raise ValueError(f"T must be >= 6 to draw distinct subgoals, got {T}")
    rng = np.random.default_rng(seed)
    count = int(rng.integers(3, 6))
    picks = rng.choice(T - 1, size=count, replace=False)
    return sorted(int(p) for p in picks) + [T - 1]
