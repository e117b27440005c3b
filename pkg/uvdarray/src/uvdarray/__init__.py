"""In-process array bindings for subgoal decomposition and shaped rewards.

ML pipelines that already hold frame embeddings as numeric arrays can call
the decomposer and reward shaper directly, without serializing to trajectory
files. Both functions are thin delegations into ``uvdkit`` — no numerics are
reimplemented here — so their outputs are bit-for-bit identical to the
``uvd decompose`` / ``uvd reward`` command-line runs on the same data saved
as a trajectory file.

Calls are pure and reentrant; this module holds no mutable state. Input
buffers are validated (2-D shape, finite values) and copied once into a
contiguous float32 matrix at the boundary; callers' arrays are never
modified.
"""

from __future__ import annotations

import numpy as np

from uvdkit import (
    DecomposerConfig,
    EmbeddingTrajectory,
    RewardWeights,
    SmootherConfig,
    decompose,
    shaped_reward_trace,
)
from uvdkit.decompose import SubgoalDecomposition, budgets_from_indices

__all__ = ["decompose_array", "shaped_rewards_array"]


def _bind(buffer) -> EmbeddingTrajectory:
    # one validated copy at the boundary; EmbeddingTrajectory enforces the
    # shape/finiteness invariants with the core's own error messages
    return EmbeddingTrajectory(frames=np.asarray(buffer))


def decompose_array(buffer, min_interval: int = 20, bandwidth: float = 0.08) -> list[int]:
    """Discover subgoal frame indices in a T x K embedding buffer.

    Returns the ordered subgoal indices; the last entry is always T - 1.
    """
    config = DecomposerConfig(
        min_interval=min_interval, smoother=SmootherConfig(bandwidth=bandwidth)
    )
    return list(decompose(_bind(buffer), config).subgoal_indices)


def shaped_rewards_array(
    buffer,
    subgoals,
    alpha: float = 5.0,
    beta: float = 3.0,
    gamma: float = 6.0,
    epsilon: float = 0.2,
) -> tuple[list[float], list[int]]:
    """Score every transition of a T x K buffer against a subgoal sequence.

    ``subgoals`` is an ordered list of frame indices ending at T - 1 (as
    produced by :func:`decompose_array`). Returns ``(rewards, switches)``:
    T - 1 per-transition rewards and the step indices where the active
    subgoal's threshold event fired.
    """
    traj = _bind(buffer)
    indices = [int(g) for g in subgoals]
    decomp = SubgoalDecomposition(
        subgoal_indices=tuple(indices), budgets=budgets_from_indices(indices)
    )
    weights = RewardWeights(alpha=alpha, beta=beta, gamma=gamma, epsilon=epsilon)
    trace = shaped_reward_trace(traj, decomp, weights)
    return list(trace.rewards), list(trace.switches)
