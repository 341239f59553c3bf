#!/usr/bin/env python3
"""Regenerate the environment regression fixtures from Gymnasium.

Each file records 100 steps of a scripted action sequence. Observations are
computed from the environment's float64 internal state rather than the float32
observation array so the replay comparison is not limited by float32 rounding.
Row 0 holds the reset observation (action and reward are 0 there).

    pip install gymnasium
    python3 tools/fixtures/gen_fixtures.py tests/fixtures
"""
import math
import sys
from pathlib import Path

import gymnasium as gym
import numpy as np

STEPS = 100


def obs_from_state(env_id, s):
    if env_id == "CartPole-v1":
        return [float(v) for v in s]
    if env_id == "Acrobot-v1":
        return [math.cos(s[0]), math.sin(s[0]), math.cos(s[1]), math.sin(s[1]),
                float(s[2]), float(s[3])]
    if env_id == "Pendulum-v1":
        return [math.cos(s[0]), math.sin(s[0]), float(s[1])]
    raise ValueError(env_id)


def cartpole_script(state, t, rng):
    x, x_dot, th, th_dot = state
    return 1 if th + 0.3 * th_dot + 0.01 * x + 0.05 * x_dot > 0 else 0


def acrobot_script(state, t, rng):
    return int(rng.integers(0, 3))


def pendulum_script(state, t, rng):
    # Exceeds the torque limit on purpose so clipping is exercised.
    return float(2.5 * math.sin(0.15 * t) + rng.normal(0.0, 0.3))


SCRIPTS = {
    "CartPole-v1": ("pd", cartpole_script),
    "Acrobot-v1": ("random", acrobot_script),
    "Pendulum-v1": ("sine", pendulum_script),
}


def fmt(v):
    return repr(float(v))


def record(env_id, seed, out_dir):
    script_name, script = SCRIPTS[env_id]
    env = gym.make(env_id)
    env.reset(seed=seed)
    rng = np.random.default_rng(seed + 1000)
    base = env.unwrapped
    obs = obs_from_state(env_id, np.asarray(base.state, dtype=np.float64))
    names = [f"obs{i}" for i in range(len(obs))]
    rows = [["0", "0"] + [fmt(v) for v in obs] + ["0.0", "0", "0"]]
    for t in range(1, STEPS + 1):
        a = script(np.asarray(base.state, dtype=np.float64), t, rng)
        if env_id == "Pendulum-v1":
            # float64 torque straight to the unwrapped env so replay sees the same value
            _, r, term, trunc, _ = base.step(np.array([a], dtype=np.float64))
            trunc = t >= 200
        else:
            _, r, term, trunc, _ = env.step(a)
        obs = obs_from_state(env_id, np.asarray(base.state, dtype=np.float64))
        rows.append([str(t), fmt(a) if env_id == "Pendulum-v1" else str(a)]
                    + [fmt(v) for v in obs] + [fmt(r), str(int(term)), str(int(trunc))])
        if term or trunc:
            break
    path = out_dir / f"{env_id}_seed{seed}_{script_name}.csv"
    with open(path, "w") as f:
        f.write(",".join(["step", "action"] + names + ["reward", "terminated", "truncated"]) + "\n")
        for row in rows:
            f.write(",".join(row) + "\n")
    print(f"{path}: {len(rows) - 1} steps")


def main():
    out_dir = Path(sys.argv[1] if len(sys.argv) > 1 else "tests/fixtures")
    out_dir.mkdir(parents=True, exist_ok=True)
    for env_id in SCRIPTS:
        for seed in (0, 7):
            record(env_id, seed, out_dir)


if __name__ == "__main__":
    main()
