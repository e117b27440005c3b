"""Shaped rewards over subgoal decompositions.

Two reward families:

* ``simple_reward``: the plain goal-embedding distance difference between
  consecutive frames (unnormalized, scales with the embedding).
* ``shaped_reward_trace``: the weighted form. Distances to subgoal g_i are
  normalized by the inter-subgoal distance d(g_{i-1}, g_i) (the start frame
  plays the role of g_{-1}), so every segment starts near normalized
  distance 1 and ends at 0. Per step the reward is

      clip(alpha * (dbar(prev; g_i) - dbar(cur; g_i)), -alpha, alpha)
      + beta  once, when dbar(cur; g_i) first drops below epsilon
              (the active subgoal then advances for the next step)
      + gamma whenever the active subgoal is the last one and
              dbar(cur; g_m) < epsilon.

  Clipping is applied to the alpha-scaled progress term, so each progress
  term lies in [-alpha, alpha] and a step total in [-alpha, alpha+beta+gamma].
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .decompose import SubgoalDecomposition
from .errors import DegenerateSegmentError
from .trajectory import EmbeddingTrajectory

DEFAULT_ALPHA = 5.0
DEFAULT_BETA = 3.0
DEFAULT_GAMMA = 6.0
DEFAULT_EPSILON = 0.2


@dataclass(frozen=True)
class RewardWeights:
    alpha: float = DEFAULT_ALPHA
    beta: float = DEFAULT_BETA
    gamma: float = DEFAULT_GAMMA
    epsilon: float = DEFAULT_EPSILON

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        if not (0 < self.epsilon < 1):
            raise ValueError(f"epsilon must be in (0, 1), got {self.epsilon}")

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "gamma": self.gamma,
            "epsilon": self.epsilon,
        }


@dataclass(frozen=True)
class RewardTrace:
    """Per-transition rewards with the active subgoal and switch events.

    rewards[k] scores the transition from frame k to frame k+1; goal_at[k]
    is the subgoal frame index that transition was scored against; switches
    holds the (strictly increasing) step indices where the active subgoal's
    threshold event fired.
    """

    rewards: tuple[float, ...]
    goal_at: tuple[int, ...]
    switches: tuple[int, ...]

    def to_dict(self, weights: RewardWeights | None = None) -> dict:
        out = {
            "rewards": list(self.rewards),
            "goal_at": list(self.goal_at),
            "switches": list(self.switches),
        }
        if weights is not None:
            out["weights"] = weights.to_dict()
        return out


def _l2(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.linalg.norm(np.asarray(a, dtype=np.float64) - np.asarray(b, dtype=np.float64)))


def simple_reward(traj: EmbeddingTrajectory, goal: int, t: int) -> float:
    """Distance-difference reward for the transition t-1 -> t."""
    if not 0 <= goal < traj.T:
        raise IndexError(f"goal={goal} out of range for T={traj.T}")
    if not 1 <= t <= traj.T - 1:
        raise IndexError(f"t={t} out of range, need 1 <= t <= {traj.T - 1}")
    frames = traj.frames64()
    return _l2(frames[t - 1], frames[goal]) - _l2(frames[t], frames[goal])


def segment_denominators(frames64: np.ndarray, subgoal_indices) -> np.ndarray:
    """Normalizers D_i: distance between consecutive subgoal embeddings,
    with the first frame standing in before the first subgoal."""
    anchors = [0] + list(subgoal_indices)
    denoms = np.array(
        [_l2(frames64[a], frames64[b]) for a, b in zip(anchors, anchors[1:])]
    )
    zero = np.flatnonzero(denoms == 0.0)
    if zero.size:
        i = int(zero[0])
        raise DegenerateSegmentError(
            f"degenerate segment {i}: subgoal embeddings at frames "
            f"{anchors[i]} and {anchors[i + 1]} coincide"
        )
    return denoms


def normalized_distance(
    traj: EmbeddingTrajectory, decomp: SubgoalDecomposition, t: int, i: int
) -> float:
    """d(frames[t], g_i) / D_i; scale-invariant under embedding scaling."""
    if not 0 <= i < decomp.num_subgoals:
        raise IndexError(f"subgoal ordinal {i} out of range")
    if t > decomp.subgoal_indices[i]:
        raise IndexError(
            f"t={t} is past subgoal {i} at frame {decomp.subgoal_indices[i]}"
        )
    frames = traj.frames64()
    denoms = segment_denominators(frames, decomp.subgoal_indices)
    return _l2(frames[t], frames[decomp.subgoal_indices[i]]) / denoms[i]


class ShapedRewardStepper:
    """Online form of the shaped reward: feed one transition at a time.

    Used both for scoring recorded trajectories and for rewarding live
    environment rollouts; the trace functions below are thin loops over it.
    """

    def __init__(
        self,
        goal_embeddings: np.ndarray,
        denominators: np.ndarray,
        goal_ids,
        weights: RewardWeights,
    ):
        self.goals = np.asarray(goal_embeddings, dtype=np.float64)
        self.denoms = np.asarray(denominators, dtype=np.float64)
        if np.any(self.denoms == 0.0):
            raise DegenerateSegmentError("zero normalizer in segment denominators")
        self.goal_ids = list(goal_ids)
        self.weights = weights
        self.current = 0
        self._fired = [False] * len(self.goal_ids)

    @classmethod
    def for_decomposition(
        cls,
        traj: EmbeddingTrajectory,
        decomp: SubgoalDecomposition,
        weights: RewardWeights,
    ) -> "ShapedRewardStepper":
        frames = traj.frames64()
        denoms = segment_denominators(frames, decomp.subgoal_indices)
        goals = frames[list(decomp.subgoal_indices)]
        return cls(goals, denoms, decomp.subgoal_indices, weights)

    def step(self, prev_emb, cur_emb) -> tuple[float, int, bool]:
        """Score one transition; returns (reward, active goal id, switched)."""
        w = self.weights
        i = self.current
        goal = self.goals[i]
        d_prev = _l2(prev_emb, goal) / self.denoms[i]
        d_cur = _l2(cur_emb, goal) / self.denoms[i]
        reward = float(np.clip(w.alpha * (d_prev - d_cur), -w.alpha, w.alpha))
        switched = False
        if d_cur < w.epsilon and not self._fired[i]:
            self._fired[i] = True
            switched = True
            reward += w.beta
            if i < len(self.goal_ids) - 1:
                self.current = i + 1
        if i == len(self.goal_ids) - 1:
            d_final = _l2(cur_emb, self.goals[-1]) / self.denoms[-1]
            if d_final < w.epsilon:
                reward += w.gamma
        return reward, self.goal_ids[i], switched


def shaped_reward_trace(
    traj: EmbeddingTrajectory,
    decomp: SubgoalDecomposition,
    weights: RewardWeights = RewardWeights(),
) -> RewardTrace:
    """Score every transition of a trajectory against its decomposition."""
    if decomp.subgoal_indices[-1] != traj.T - 1:
        raise ValueError(
            f"decomposition ends at {decomp.subgoal_indices[-1]}, "
            f"trajectory has T={traj.T}"
        )
    stepper = ShapedRewardStepper.for_decomposition(traj, decomp, weights)
    frames = traj.frames64()
    rewards, goal_at, switches = [], [], []
    for t in range(1, traj.T):
        reward, goal_id, switched = stepper.step(frames[t - 1], frames[t])
        rewards.append(reward)
        goal_at.append(goal_id)
        if switched:
            switches.append(t)
    return RewardTrace(tuple(rewards), tuple(goal_at), tuple(switches))


def final_goal_reward_trace(
    traj: EmbeddingTrajectory,
    weights: RewardWeights = RewardWeights(),
) -> RewardTrace:
    """Baseline: single final-frame goal, no transition bonus (beta = 0)."""
    final_only = SubgoalDecomposition(
        subgoal_indices=(traj.T - 1,), budgets=(traj.T,)
    )
    no_beta = RewardWeights(
        alpha=weights.alpha, beta=0.0, gamma=weights.gamma, epsilon=weights.epsilon
    )
    return shaped_reward_trace(traj, final_only, no_beta)
