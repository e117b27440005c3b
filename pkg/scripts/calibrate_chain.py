"""Hyperparameter sweep behind the committed gridworld learner defaults.

Sweeps the switch threshold epsilon and the episode budget over 10 seeds for
both reward modes and records the success rates; the committed defaults are
the cheapest setting where the shaped reward succeeds on every seed while
the final-goal reward stays at zero. Writes
src/uvdkit/fixtures/chain_calibration.json.
"""

from __future__ import annotations

import json
import time
from dataclasses import replace
from pathlib import Path

from uvdkit.chainenv import ChainEnvConfig, LearnerConfig, run_chain_experiment
from uvdkit.rewards import RewardWeights

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "uvdkit" / "fixtures"
SEEDS = tuple(range(10))


def main() -> None:
    config = ChainEnvConfig()
    rows = []
    for epsilon in (0.02, 0.05, 0.1, 0.2):
        for episodes in (800, 1200):
            learner = replace(
                LearnerConfig(),
                episodes=episodes,
                weights=RewardWeights(epsilon=epsilon),
            )
            row = {"epsilon": epsilon, "episodes": episodes}
            for mode in ("uvd", "final_goal"):
                start = time.perf_counter()
                result = run_chain_experiment(config, mode, learner, SEEDS)
                row[f"{mode}_success"] = result["success_rate"]
                row[f"{mode}_seconds"] = round(time.perf_counter() - start, 1)
            rows.append(row)
            print(row)
    chosen = LearnerConfig()
    out = {
        "seeds": list(SEEDS),
        "sweep": rows,
        "chosen": {
            "epsilon": chosen.weights.epsilon,
            "episodes": chosen.episodes,
            "explore_start": chosen.explore_start,
            "explore_end": chosen.explore_end,
            "min_interval": chosen.min_interval,
            "bandwidth": chosen.bandwidth,
        },
    }
    path = FIXTURES / "chain_calibration.json"
    path.write_text(json.dumps(out, indent=2) + "\n")
    print(f"committed -> {path}")


if __name__ == "__main__":
    main()
