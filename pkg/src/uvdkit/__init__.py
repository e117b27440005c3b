"""uvdkit: subgoal discovery and goal-conditioned tooling for embedding
trajectories."""

from .backend import active_backend
from .decompose import (
    DecomposerConfig,
    DistanceCurve,
    SubgoalDecomposition,
    decompose,
    distance_curve,
    find_monotonicity_breaks,
)
from .errors import (
    DegenerateSegmentError,
    RelayFinishedError,
    TrajectoryFormatError,
    TrajectoryValidationError,
    UvdError,
)
from .labeling import random_subgoals, relabel, uniform_labels
from .relay import (
    GoalIndex,
    RelayConfig,
    RelayState,
    build_index,
    nearest_goal,
    relay_init,
    relay_step,
)
from .rewards import (
    RewardTrace,
    RewardWeights,
    ShapedRewardStepper,
    final_goal_reward_trace,
    normalized_distance,
    shaped_reward_trace,
    simple_reward,
)
from .smoothing import SmootherConfig, smooth_curve
from .synth import SynthConfig, boundary_metrics, generate_synthetic, run_baseline_comparison
from .trajectory import (
    EmbeddingTrajectory,
    load_trajectory,
    save_trajectory,
    validate,
    validate_frames,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
