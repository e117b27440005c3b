"""Recursive subgoal discovery on smoothed goal-distance curves.

Starting from the final frame as the last subgoal, each pass computes the
L2 distance of every earlier frame to the current goal, smooths that curve,
and looks for the latest strict local maximum at least min_interval frames
before the goal. The frame just before that maximum becomes the next
(earlier) subgoal, and the pass repeats on the shortened prefix until the
goal index is within min_interval of the start.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .smoothing import SmootherConfig, smooth_curve
from .trajectory import EmbeddingTrajectory

DEFAULT_MIN_INTERVAL = 20


@dataclass(frozen=True)
class DecomposerConfig:
    min_interval: int = DEFAULT_MIN_INTERVAL
    smoother: SmootherConfig = field(default_factory=SmootherConfig)

    def __post_init__(self):
        if self.min_interval < 1:
            raise ValueError(
                f"min_interval must be >= 1, got {self.min_interval}"
            )


@dataclass(frozen=True)
class DistanceCurve:
    """Per-frame L2 distances to a goal frame, raw and smoothed."""

    raw: np.ndarray
    smoothed: np.ndarray
    goal_index: int


@dataclass(frozen=True)
class SubgoalDecomposition:
    """Strictly increasing subgoal frame indices ending at T-1, with the
    per-subgoal frame budgets used by relay inference."""

    subgoal_indices: tuple[int, ...]
    budgets: tuple[int, ...]

    def __post_init__(self):
        idx = self.subgoal_indices
        if not idx:
            raise ValueError("decomposition must contain at least one subgoal")
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ValueError(f"subgoal indices not strictly increasing: {idx}")
        if len(self.budgets) != len(idx):
            raise ValueError("one budget per subgoal required")
        expected = budgets_from_indices(idx)
        if tuple(self.budgets) != expected:
            raise ValueError(
                f"budgets {self.budgets} inconsistent with indices {idx}"
            )

    @property
    def num_subgoals(self) -> int:
        return len(self.subgoal_indices)

    def to_dict(self) -> dict:
        return {
            "subgoals": list(self.subgoal_indices),
            "budgets": list(self.budgets),
        }


def budgets_from_indices(indices) -> tuple[int, ...]:
    """budgets[0] = indices[0] + 1; budgets[i] = indices[i] - indices[i-1]."""
    indices = list(indices)
    return tuple(
        [indices[0] + 1] + [b - a for a, b in zip(indices, indices[1:])]
    )


def distance_curve(
    traj: EmbeddingTrajectory,
    end: int,
    smoother: SmootherConfig = SmootherConfig(),
) -> DistanceCurve:
    """L2 distances of frames 0..end to frame ``end``, raw and smoothed."""
    if not 0 <= end < traj.T:
        raise IndexError(f"end={end} out of range for T={traj.T}")
    frames = traj.frames64()
    raw = _distances_to_goal(frames, end)
    return DistanceCurve(raw=raw, smoothed=smooth_curve(raw, smoother), goal_index=end)


def _distances_to_goal(frames64: np.ndarray, end: int) -> np.ndarray:
    diff = frames64[: end + 1] - frames64[end]
    return np.sqrt(np.einsum("ij,ij->i", diff, diff))


def find_monotonicity_breaks(smoothed) -> list[int]:
    """Indices of strict local maxima (both immediate neighbors smaller).

    Endpoints never qualify; plateaus are not maxima.
    """
    d = np.asarray(smoothed, dtype=np.float64)
    if d.shape[0] < 3:
        return []
    interior = (d[1:-1] > d[:-2]) & (d[1:-1] > d[2:])
    return [int(i) + 1 for i in np.flatnonzero(interior)]


def decompose(
    traj: EmbeddingTrajectory,
    config: DecomposerConfig = DecomposerConfig(),
) -> SubgoalDecomposition:
    """Run the recursive subgoal discovery over a full trajectory."""
    frames = traj.frames64()
    min_interval = config.min_interval
    goal = traj.T - 1
    found = [goal]
    while goal > min_interval:
        raw = _distances_to_goal(frames, goal)
        smoothed = smooth_curve(raw, config.smoother)
        breaks = find_monotonicity_breaks(smoothed)
        qualifying = [e for e in breaks if goal - e > min_interval]
        if not qualifying:
            break
        goal = int(qualifying[-1]) - 1
        found.append(goal)
    found.reverse()
    return SubgoalDecomposition(
        subgoal_indices=tuple(found),
        budgets=budgets_from_indices(found),
    )
