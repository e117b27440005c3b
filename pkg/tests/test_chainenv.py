import json
from pathlib import Path

import numpy as np
import pytest

from uvdkit.chainenv import (
    ACTIONS,
    ChainEnv,
    ChainEnvConfig,
    LearnerConfig,
    run_chain_experiment,
    scripted_demo,
)
from uvdkit.decompose import DecomposerConfig, decompose
from uvdkit.smoothing import SmootherConfig

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "uvdkit" / "fixtures"


class TestConfig:
    def test_default_config_valid(self):
        cfg = ChainEnvConfig()
        assert cfg.horizon >= cfg.shortest_path_length

    def test_duplicate_waypoints_rejected(self):
        with pytest.raises(ValueError, match="distinct"):
            ChainEnvConfig(waypoints=((1, 0), (1, 0)))

    def test_start_on_waypoint_rejected(self):
        with pytest.raises(ValueError, match="start"):
            ChainEnvConfig(start=(8, 0))

    def test_flag_scale_must_dominate_grid_diagonal(self):
        with pytest.raises(ValueError, match="flag_scale"):
            ChainEnvConfig(flag_scale=1.0)

    def test_horizon_must_cover_scripted_path(self):
        with pytest.raises(ValueError, match="horizon"):
            ChainEnvConfig(horizon=5)


class TestDynamics:
    def test_stay_leaves_position_and_embedding_unchanged(self):
        env = ChainEnv(ChainEnvConfig())
        before = env.observe().copy()
        after = env.step("stay")
        assert (env.x, env.y) == ChainEnvConfig().start
        np.testing.assert_array_equal(before, after)

    def test_flags_flip_only_in_waypoint_order(self):
        cfg = ChainEnvConfig()
        env = ChainEnv(cfg)
        # walk to the second waypoint first: no flag may flip
        env.x, env.y = cfg.waypoints[1]
        env.step("stay")  # lands on waypoint 1 with flag 0 unset
        assert env.flags == 0

    def test_stepping_onto_next_waypoint_sets_flag(self):
        cfg = ChainEnvConfig()
        env = ChainEnv(cfg)
        env.x = cfg.waypoints[0][0] - 1
        env.step("right")
        assert env.flags == 1

    def test_flags_monotone_under_random_walk(self):
        rng = np.random.default_rng(0)
        env = ChainEnv(ChainEnvConfig())
        seen = 0
        while not env.done:
            env.step(ACTIONS[rng.integers(len(ACTIONS))])
            assert env.flags & seen == seen  # no flag ever un-flips
            seen = env.flags

    def test_embedding_injective_over_position_and_flags(self):
        cfg = ChainEnvConfig()
        env = ChainEnv(cfg)
        seen = set()
        for x in range(cfg.grid_n):
            for y in range(cfg.grid_n):
                for flags in range(1 << len(cfg.waypoints)):
                    env.x, env.y, env.flags = x, y, flags
                    seen.add(env.observe().tobytes())
        assert len(seen) == cfg.grid_n * cfg.grid_n * (1 << len(cfg.waypoints))


class TestScriptedDemo:
    def test_demo_completes_all_stages(self):
        cfg = ChainEnvConfig()
        demo, actions = scripted_demo(cfg)
        assert demo.T == cfg.shortest_path_length + 1
        assert len(actions) == demo.T - 1
        # final frame has every flag component set
        assert np.all(demo.frames[-1, 2:] == cfg.flag_scale)

    def test_demo_decomposes_into_one_subgoal_per_stage(self):
        cfg = ChainEnvConfig()
        learner = LearnerConfig()
        demo, _ = scripted_demo(cfg)
        decomp = decompose(
            demo,
            DecomposerConfig(
                min_interval=learner.min_interval,
                smoother=SmootherConfig(bandwidth=learner.bandwidth),
            ),
        )
        assert decomp.num_subgoals == len(cfg.waypoints)
        assert decomp.subgoal_indices[-1] == demo.T - 1


class TestExperiment:
    def test_seeds_give_reproducible_rates(self):
        cfg = ChainEnvConfig()
        learner = LearnerConfig(episodes=150)
        a = run_chain_experiment(cfg, "uvd", learner, seeds=(0, 1))
        b = run_chain_experiment(cfg, "uvd", learner, seeds=(0, 1))
        assert a == b

    def test_unknown_reward_mode_rejected(self):
        with pytest.raises(ValueError, match="reward_mode"):
            run_chain_experiment(ChainEnvConfig(), "dense")

    def test_single_waypoint_task_solved_by_both_rewards(self):
        cfg = ChainEnvConfig(waypoints=((8, 0),), horizon=20)
        learner = LearnerConfig(episodes=400)
        for mode in ("uvd", "final_goal"):
            result = run_chain_experiment(cfg, mode, learner, seeds=(0, 1, 2))
            assert result["success_rate"] == 1.0, mode

    def test_committed_calibration_sweep_chose_current_defaults(self):
        calib = json.loads((FIXTURES / "chain_calibration.json").read_text())
        learner = LearnerConfig()
        assert calib["chosen"]["epsilon"] == learner.weights.epsilon
        assert calib["chosen"]["episodes"] == learner.episodes
        chosen_rows = [
            r for r in calib["sweep"]
            if r["epsilon"] == learner.weights.epsilon
            and r["episodes"] == learner.episodes
        ]
        assert chosen_rows and chosen_rows[0]["uvd_success"] >= 0.8
        assert chosen_rows[0]["final_goal_success"] <= 0.2
