"""Sweep the synthetic-noise scale and commit the largest level at which
boundary recovery stays at F1 >= 0.9 within +-3 frames on every suite config.

Writes src/uvdkit/fixtures/noise_calibration.json; rerun after changing the
generator, the smoother, or the committed suite.
"""

from __future__ import annotations

import json
from pathlib import Path

from uvdkit.decompose import DecomposerConfig
from uvdkit.synth import SynthConfig, run_baseline_comparison

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "uvdkit" / "fixtures"
SEEDS = [0, 1, 2, 3, 4]
TOLERANCE = 3
TARGET_F1 = 0.9
GRID = [0.0, 0.005, 0.01, 0.02, 0.03, 0.05, 0.075, 0.1, 0.15, 0.2]


def suite_at(noise_sigma: float) -> list[SynthConfig]:
    base = json.loads((FIXTURES / "bench_suite.json").read_text())
    return [
        SynthConfig(T=c["T"], K=c["K"], boundaries=tuple(c["boundaries"]),
                    noise_sigma=noise_sigma)
        for c in base
    ]


def min_config_f1(noise_sigma: float) -> float:
    result = run_baseline_comparison(
        suite_at(noise_sigma), DecomposerConfig(), TOLERANCE, SEEDS,
        uniform_window=30,
    )
    return min(result["per_config"]["uvd"])


def main() -> None:
    sweep = []
    best = None
    for sigma in GRID:
        f1 = min_config_f1(sigma)
        sweep.append({"noise_sigma": sigma, "min_config_f1": f1})
        print(f"sigma={sigma:<6} min per-config F1={f1:.3f}")
        if f1 >= TARGET_F1:
            best = sigma
    if best is None:
        raise SystemExit("no noise level meets the F1 target")
    out = {
        "noise_sigma": best,
        "tolerance": TOLERANCE,
        "target_f1": TARGET_F1,
        "seeds": SEEDS,
        "sweep": sweep,
    }
    path = FIXTURES / "noise_calibration.json"
    path.write_text(json.dumps(out, indent=2) + "\n")
    print(f"committed noise_sigma={best} -> {path}")


if __name__ == "__main__":
    main()
