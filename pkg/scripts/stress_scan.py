"""Stability stress scan over the morphology-scale envelope.

Runs max-amplitude and random genomes at the extreme scales the
acceptance schedules can reach, reporting any divergence.
"""

import itertools
import time

import numpy as np

from wobblesim.controller import Genome, MotorConfig, random_genome
from wobblesim.morphology import StarfishSpec, build_starfish
from wobblesim.physics import SimConfig, SimulationDiverged, simulate_behavior
from wobblesim.wobble import MorphologyScales


def main():
    spec = StarfishSpec()
    sim = SimConfig(dt=0.002, duration=10.0)
    motor = MotorConfig()
    rng = np.random.default_rng(12345)

    # all offsets 0 / pi alternating, amplitude 1: aggressive synchronous load
    v = np.zeros(24)
    v[1::2] = 1.0
    aggressive = Genome(v)
    genomes = [aggressive] + [random_genome(rng) for _ in range(3)]

    scale_cases = []
    for m in (0.45, 0.5, 1.0, 1.5, 1.55):
        scale_cases.append(MorphologyScales(mass=m))
    for k in (0.5, 1.5):
        scale_cases.append(MorphologyScales(stiffness=k))
    for s in (0.5, 1.5):
        scale_cases.append(MorphologyScales(size=s))

    n_div = 0
    t0 = time.perf_counter()
    for sc in scale_cases:
        worst_dx = 0.0
        statuses = []
        body = build_starfish(spec, sc)
        for gi, g in enumerate(genomes):
            try:
                s = simulate_behavior(body, g, sim, motor)
                statuses.append(f"dx={s.displacement_x:+.3f}")
                worst_dx = max(worst_dx, abs(s.displacement_x))
            except SimulationDiverged as exc:
                statuses.append(f"DIVERGED@{exc.step}")
                n_div += 1
        print(f"scales ({sc.mass:.2f},{sc.stiffness:.2f},{sc.size:.2f}): "
              + "  ".join(statuses), flush=True)
    print(f"\n{n_div} divergences, wall {time.perf_counter()-t0:.0f}s")


if __name__ == "__main__":
    main()
