"""Scratch: monolithic trial kernel vs composed helpers."""

import math
import time

import numpy as np
from numba import njit

from wobblesim.controller import MotorConfig, random_genome
from wobblesim.morphology import StarfishSpec, build_starfish
from wobblesim.physics import SimConfig, simulate_behavior
from wobblesim.wobble import MorphologyScales


@njit(cache=True)
def run_trial_mono(pos_x_in, pos_y_in, vel_x_in, vel_y_in, mass, inv_mass_in,
                   spring_a, spring_b, rest_in, rest0, stiffness_in, damping_in,
                   muscle_idx, muscle_group, muscle_sign,
                   offsets, amplitudes, motor_omega, contraction,
                   gx, gy, ground_enabled, ground_y, contact_k, contact_c,
                   friction_mu, friction_vel_eps,
                   dt, n_steps, t0, sample_stride,
                   sample_t, sample_x, sample_y):
    n = pos_x_in.shape[0]
    m = spring_a.shape[0]
    km = muscle_idx.shape[0]
    ng = offsets.shape[0]

    # local copies: known non-aliasing, results copied back at the end
    pos_x = pos_x_in.copy()
    pos_y = pos_y_in.copy()
    vel_x = vel_x_in.copy()
    vel_y = vel_y_in.copy()
    rest = rest_in.copy()
    stiff = stiffness_in.copy()
    damp = damping_in.copy()
    inv_mass = inv_mass_in.copy()
    sa = spring_a.copy()
    sb = spring_b.copy()
    r0 = rest0.copy()
    fx = np.empty(n)
    fy = np.empty(n)
    signals = np.empty(ng)

    total_mass = 0.0
    for i in range(n):
        total_mass += mass[i]
    cx = 0.0
    cy = 0.0
    for i in range(n):
        cx += mass[i] * pos_x[i]
        cy += mass[i] * pos_y[i]
    sample_t[0] = t0
    sample_x[0] = cx / total_mass
    sample_y[0] = cy / total_mass

    n_deg = 0
    for istep in range(n_steps):
        t = t0 + istep * dt
        wt = motor_omega * t
        for g in range(ng):
            signals[g] = amplitudes[g] * math.sin(wt + offsets[g])
        for k in range(km):
            s = muscle_idx[k]
            rest[s] = r0[s] * (1.0 + muscle_sign[k] * contraction * signals[muscle_group[k]])
        for i in range(n):
            fx[i] = 0.0
            fy[i] = 0.0
        for s in range(m):
            a = sa[s]
            b = sb[s]
            dx = pos_x[b] - pos_x[a]
            dy = pos_y[b] - pos_y[a]
            length = math.sqrt(dx * dx + dy * dy)
            if length < 1e-12:
                n_deg += 1
                continue
            inv = 1.0 / length
            ux = dx * inv
            uy = dy * inv
            rel = (vel_x[b] - vel_x[a]) * ux + (vel_y[b] - vel_y[a]) * uy
            fmag = stiff[s] * (length - rest[s]) + damp[s] * rel
            fax = fmag * ux
            fay = fmag * uy
            fx[a] += fax
            fy[a] += fay
            fx[b] -= fax
            fy[b] -= fay
        if ground_enabled:
            for i in range(n):
                pen = ground_y - pos_y[i]
                if pen > 0.0:
                    fn = contact_k * pen - contact_c * vel_y[i]
                    if fn > 0.0:
                        fy[i] += fn
                        fx[i] -= friction_mu * fn * math.tanh(vel_x[i] / friction_vel_eps)
        for i in range(n):
            vx = vel_x[i] + dt * fx[i] * inv_mass[i] + dt * gx
            vy = vel_y[i] + dt * fy[i] * inv_mass[i] + dt * gy
            vel_x[i] = vx
            vel_y[i] = vy
            pos_x[i] += dt * vx
            pos_y[i] += dt * vy
        if (istep + 1) % sample_stride == 0:
            ksmp = (istep + 1) // sample_stride
            cx = 0.0
            cy = 0.0
            for i in range(n):
                cx += mass[i] * pos_x[i]
                cy += mass[i] * pos_y[i]
            sample_t[ksmp] = t0 + (istep + 1) * dt
            sample_x[ksmp] = cx / total_mass
            sample_y[ksmp] = cy / total_mass
            if not (math.isfinite(sample_x[ksmp]) and math.isfinite(sample_y[ksmp])):
                pos_x_in[:] = pos_x
                pos_y_in[:] = pos_y
                vel_x_in[:] = vel_x
                vel_y_in[:] = vel_y
                rest_in[:] = rest
                return istep + 1, n_deg
    pos_x_in[:] = pos_x
    pos_y_in[:] = pos_y
    vel_x_in[:] = vel_x
    vel_y_in[:] = vel_y
    rest_in[:] = rest
    return -1, n_deg


def main():
    w = build_starfish(StarfishSpec(), MorphologyScales())
    sim = SimConfig(dt=0.002, duration=20.0)
    motor = MotorConfig()
    rng = np.random.default_rng(0)
    genome = random_genome(rng)

    n_samples = sim.n_steps // sim.com_sample_stride + 1
    st = np.empty(n_samples)
    sx = np.empty(n_samples)
    sy = np.empty(n_samples)

    def call_mono():
        ww = w.copy()
        return run_trial_mono(
            ww.pos_x, ww.pos_y, ww.vel_x, ww.vel_y, ww.mass, ww.inv_mass,
            ww.spring_a, ww.spring_b, ww.rest, ww.rest0, ww.stiffness,
            ww.damping, ww.muscle_idx, ww.muscle_group, ww.muscle_sign,
            np.ascontiguousarray(genome.offsets),
            np.ascontiguousarray(genome.amplitudes),
            2 * math.pi / motor.motor_period, motor.contraction_range,
            ww.gravity[0], ww.gravity[1], ww.ground_enabled, ww.ground_y,
            ww.contact_stiffness, ww.contact_damping, ww.friction_mu,
            ww.friction_vel_eps, sim.dt, sim.n_steps, 0.0,
            sim.com_sample_stride, st, sx, sy)

    call_mono()
    t0 = time.perf_counter()
    for _ in range(5):
        call_mono()
    t_mono = (time.perf_counter() - t0) / 5
    print(f"mono : {t_mono*1e3:.1f} ms/trial ({t_mono/sim.n_steps*1e6:.2f} us/step) "
          f"dx_end={sx[-1]-sx[0]:+.5f}")

    simulate_behavior(w, genome, sim, motor)
    t0 = time.perf_counter()
    for _ in range(5):
        s = simulate_behavior(w, genome, sim, motor)
    t_comp = (time.perf_counter() - t0) / 5
    print(f"composed: {t_comp*1e3:.1f} ms/trial ({t_comp/sim.n_steps*1e6:.2f} us/step) "
          f"dx_end={s.displacement_x:+.5f}")
    print(f"speedup: {t_comp/t_mono:.2f}x")


if __name__ == "__main__":
    main()
