"""Physics throughput microbenchmark: spring-force evaluations per second.

Runs one full trial to trigger JIT, then times repeated trials on the
default robot and reports steps/s and spring evaluations/s.
"""

import time

import numpy as np

from wobblesim.controller import Genome, MotorConfig, random_genome
from wobblesim.morphology import StarfishSpec, build_starfish, adult_body_length
from wobblesim.physics import SimConfig, simulate_behavior
from wobblesim.wobble import MorphologyScales


def main():
    spec = StarfishSpec()
    world = build_starfish(spec, MorphologyScales())
    print(f"robot: {world.n_nodes} nodes, {world.n_springs} springs, "
          f"{world.muscle_idx.shape[0]} muscles")
    print(f"adult body length: {adult_body_length(spec):.4f}")

    sim = SimConfig(dt=0.002, duration=20.0)
    motor = MotorConfig()
    rng = np.random.default_rng(0)
    genome = random_genome(rng)

    t0 = time.perf_counter()
    summary = simulate_behavior(world, genome, sim, motor)
    t_jit = time.perf_counter() - t0
    print(f"first trial (incl. JIT): {t_jit:.2f}s, "
          f"dx={summary.displacement_x:+.4f}")

    n_trials = 5
    t0 = time.perf_counter()
    for i in range(n_trials):
        g = random_genome(rng)
        summary = simulate_behavior(world, g, sim, motor)
        print(f"  trial {i}: dx={summary.displacement_x:+.4f} "
              f"y_end={summary.com_end[1]:+.4f}")
    dt_wall = (time.perf_counter() - t0) / n_trials
    steps = sim.n_steps
    print(f"per-trial wall: {dt_wall*1e3:.1f} ms for {steps} steps "
          f"({dt_wall/steps*1e6:.2f} us/step)")
    print(f"throughput: {steps/dt_wall/1e6:.2f} M steps/s, "
          f"{steps*world.n_springs/dt_wall/1e6:.1f} M spring-evals/s")


if __name__ == "__main__":
    main()
