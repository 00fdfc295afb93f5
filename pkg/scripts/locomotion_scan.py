"""Scan actuation/friction parameters for locomotion strength on the adult."""

import itertools

import numpy as np

from wobblesim.controller import MotorConfig, random_genome
from wobblesim.morphology import StarfishSpec, adult_body_length, build_starfish
from wobblesim.physics import SimConfig, SimulationDiverged, simulate_behavior
from wobblesim.wobble import MorphologyScales

N_GENOMES = 10


def probe(spec, motor, mu, veps, sim):
    body = build_starfish(spec, MorphologyScales(),
                          friction_mu=mu, friction_vel_eps=veps)
    rng = np.random.default_rng(7)
    length = adult_body_length(spec)
    vals = []
    for _ in range(N_GENOMES):
        g = random_genome(rng)
        try:
            s = simulate_behavior(body, g, sim, motor)
            vals.append(abs(s.displacement_x) / length)
        except SimulationDiverged:
            vals.append(np.nan)
    vals = np.array(vals)
    return np.nanmean(vals), np.nanmax(vals), int(np.isnan(vals).sum())


def main():
    sim = SimConfig(dt=0.002, duration=10.0)
    print("k_musc  r     period mu   veps  | mean|dx|  max|dx|  div")
    for k_m, r, period, (mu, veps) in itertools.product(
            (60.0, 90.0, 120.0), (0.25,), (1.5, 2.0, 3.0),
            ((0.8, 0.01), (1.2, 0.005))):
        spec = StarfishSpec(muscle_stiffness=k_m)
        motor = MotorConfig(motor_period=period, contraction_range=r)
        mean_dx, max_dx, ndiv = probe(spec, motor, mu, veps, sim)
        print(f"{k_m:5.0f}  {r:.2f}  {period:.1f}    {mu:.1f}  {veps:.3f} |"
              f" {mean_dx:7.3f}  {max_dx:7.3f}  {ndiv}", flush=True)


if __name__ == "__main__":
    main()
