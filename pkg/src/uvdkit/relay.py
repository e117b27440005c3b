"""Inference-time goal selection.

Two strategies: exact nearest-neighbor retrieval over a goal-labeled
dataset, and the goal-relay automaton that walks an instructed subgoal
sequence. The relay advances when the raw embedding distance to the active
subgoal drops below epsilon and, when the budget check is on, the steps
spent on the current stage are within delta of the demonstration's budget.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import RelayFinishedError
from .trajectory import EmbeddingTrajectory

DEFAULT_EPSILON = 0.2
DEFAULT_DELTA = 2


@dataclass(frozen=True)
class GoalIndex:
    """Immutable lookup table: one entry per training frame, carrying the
    subgoal that frame was labeled with."""

    embeddings: np.ndarray  # N x K, float64
    goal_ids: tuple[tuple[int, int], ...]  # (trajectory ordinal, subgoal frame)
    goal_embeddings: np.ndarray  # N x K, the labeled subgoal's embedding

    @property
    def dimension(self) -> int:
        return self.embeddings.shape[1]

    def __len__(self) -> int:
        return self.embeddings.shape[0]


def build_index(dataset: list[tuple[EmbeddingTrajectory, list[int]]]) -> GoalIndex:
    """Index every (frame, labeled subgoal) pair of the dataset."""
    if not dataset:
        raise ValueError("empty dataset")
    dim = dataset[0][0].K
    chunks, ids, goal_chunks = [], [], []
    for traj_ord, (traj, labels) in enumerate(dataset):
        if traj.K != dim:
            raise ValueError(
                f"dimension mismatch: trajectory {traj_ord} has K={traj.K}, "
                f"index has K={dim}"
            )
        if len(labels) != traj.T:
            raise ValueError(
                f"trajectory {traj_ord}: {len(labels)} labels for T={traj.T}"
            )
        frames = traj.frames64()
        chunks.append(frames)
        goal_chunks.append(frames[list(labels)])
        ids.extend((traj_ord, int(g)) for g in labels)
    return GoalIndex(
        embeddings=np.vstack(chunks),
        goal_ids=tuple(ids),
        goal_embeddings=np.vstack(goal_chunks),
    )


def nearest_goal(index: GoalIndex, query) -> tuple[tuple[int, int], float]:
    """Subgoal of the entry closest to the query (ties: earliest entry)."""
    query = np.asarray(query, dtype=np.float64)
    if query.shape != (index.dimension,):
        raise ValueError(
            f"query has shape {query.shape}, index dimension is {index.dimension}"
        )
    dists = np.linalg.norm(index.embeddings - query, axis=1)
    best = int(np.argmin(dists))  # argmin returns the first minimum
    return index.goal_ids[best], float(dists[best])


@dataclass(frozen=True)
class RelayConfig:
    epsilon: float = DEFAULT_EPSILON
    delta: int = DEFAULT_DELTA
    budget_check: bool = True

    def __post_init__(self):
        if not (self.epsilon > 0):
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if self.delta < 0:
            raise ValueError(f"delta must be >= 0, got {self.delta}")


@dataclass
class RelayState:
    """Single-owner automaton walking an instructed subgoal sequence."""

    goals: np.ndarray  # m x K subgoal embeddings
    budgets: tuple[int, ...]
    goal_ids: tuple[int, ...]
    config: RelayConfig
    current: int = 0
    steps_since_switch: int = 0
    finished: bool = False
    last_distance: float = field(default=float("nan"))


def relay_init(goals, budgets, config: RelayConfig, goal_ids=None) -> RelayState:
    """Fresh automaton exposing the first subgoal."""
    goals = np.asarray(goals, dtype=np.float64)
    if goals.ndim != 2 or goals.shape[0] == 0:
        raise ValueError("goals must be a non-empty m x K matrix")
    budgets = tuple(int(b) for b in budgets)
    if len(budgets) != goals.shape[0]:
        raise ValueError("one budget per goal required")
    if goal_ids is None:
        goal_ids = tuple(range(goals.shape[0]))
    return RelayState(
        goals=goals, budgets=budgets, goal_ids=tuple(goal_ids), config=config
    )


def relay_step(state: RelayState, obs) -> tuple[int, bool]:
    """Feed one observation; returns (active goal id, switched)."""
    if state.finished:
        raise RelayFinishedError("relay automaton already finished")
    obs = np.asarray(obs, dtype=np.float64)
    if obs.shape != (state.goals.shape[1],):
        raise ValueError(
            f"observation has shape {obs.shape}, goals have K={state.goals.shape[1]}"
        )
    cfg = state.config
    i = state.current
    state.steps_since_switch += 1
    dist = float(np.linalg.norm(obs - state.goals[i]))
    state.last_distance = dist
    budget_ok = (not cfg.budget_check) or (
        abs(state.steps_since_switch - state.budgets[i]) < cfg.delta
    )
    if dist < cfg.epsilon and budget_ok:
        if i == len(state.goal_ids) - 1:
            state.finished = True
        else:
            state.current = i + 1
        state.steps_since_switch = 0
        return state.goal_ids[i], True
    return state.goal_ids[i], False
