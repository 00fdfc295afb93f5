"""Numba inner loops for the spring-mass dynamics.

Everything here operates on flat float64/int64 arrays owned by a World;
the public API lives in physics.py.  Kernels are strict-IEEE (no
fastmath) so repeated runs are bit-identical, and cache=True keeps the
compiled artifacts across processes.

Sign conventions: spring force magnitude ``k*(len - rest) + c*rel_speed``
pulls the endpoints together when positive.  Gravity is handled as an
acceleration during integration (not accumulated into the force array)
so a free node's velocity changes by exactly ``g*dt`` per step.
"""

import math

import numpy as np
from numba import njit

DEGENERATE_LENGTH = 1e-12


@njit(cache=True)
def compute_signals(offsets, amplitudes, omega_t, out):
    for g in range(offsets.shape[0]):
        out[g] = amplitudes[g] * math.sin(omega_t + offsets[g])


@njit(cache=True)
def apply_muscle_rests(rest, rest0, muscle_idx, muscle_group, muscle_sign,
                       signals, contraction):
    for k in range(muscle_idx.shape[0]):
        s = muscle_idx[k]
        rest[s] = rest0[s] * (1.0 + muscle_sign[k] * contraction * signals[muscle_group[k]])


@njit(cache=True)
def accumulate_forces(pos_x, pos_y, vel_x, vel_y,
                      spring_a, spring_b, rest, stiffness, damping,
                      ground_enabled, ground_y, contact_k, contact_c,
                      friction_mu, friction_vel_eps,
                      fx, fy):
    """Spring + ground contact forces into fx/fy. Returns degenerate-spring count."""
    n = pos_x.shape[0]
    for i in range(n):
        fx[i] = 0.0
        fy[i] = 0.0

    n_degenerate = 0
    for s in range(spring_a.shape[0]):
        a = spring_a[s]
        b = spring_b[s]
        dx = pos_x[b] - pos_x[a]
        dy = pos_y[b] - pos_y[a]
        length = math.sqrt(dx * dx + dy * dy)
        if length < DEGENERATE_LENGTH:
            n_degenerate += 1
            continue
        inv = 1.0 / length
        ux = dx * inv
        uy = dy * inv
        rel = (vel_x[b] - vel_x[a]) * ux + (vel_y[b] - vel_y[a]) * uy
        fmag = stiffness[s] * (length - rest[s]) + damping[s] * rel
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
    return n_degenerate


@njit(cache=True)
def integrate(pos_x, pos_y, vel_x, vel_y, inv_mass, fx, fy, gx, gy, dt):
    """Semi-implicit Euler: velocities from forces + gravity, then positions."""
    for i in range(pos_x.shape[0]):
        vx = vel_x[i] + dt * fx[i] * inv_mass[i] + dt * gx
        vy = vel_y[i] + dt * fy[i] * inv_mass[i] + dt * gy
        vel_x[i] = vx
        vel_y[i] = vy
        pos_x[i] += dt * vx
        pos_y[i] += dt * vy


@njit(cache=True)
def step_once(pos_x, pos_y, vel_x, vel_y, inv_mass,
              spring_a, spring_b, rest, rest0, stiffness, damping,
              muscle_idx, muscle_group, muscle_sign, signals, contraction,
              gx, gy, ground_enabled, ground_y, contact_k, contact_c,
              friction_mu, friction_vel_eps, dt, fx, fy):
    """One dt advance with explicit muscle signals. Returns (degenerate, finite)."""
    apply_muscle_rests(rest, rest0, muscle_idx, muscle_group, muscle_sign,
                       signals, contraction)
    n_degenerate = accumulate_forces(
        pos_x, pos_y, vel_x, vel_y, spring_a, spring_b, rest, stiffness,
        damping, ground_enabled, ground_y, contact_k, contact_c,
        friction_mu, friction_vel_eps, fx, fy)
    integrate(pos_x, pos_y, vel_x, vel_y, inv_mass, fx, fy, gx, gy, dt)
    finite = True
    for i in range(pos_x.shape[0]):
        if not (math.isfinite(pos_x[i]) and math.isfinite(pos_y[i])
                and math.isfinite(vel_x[i]) and math.isfinite(vel_y[i])):
            finite = False
            break
    return n_degenerate, finite


@njit(cache=True)
def com_xy(pos_x, pos_y, mass, total_mass):
    cx = 0.0
    cy = 0.0
    for i in range(pos_x.shape[0]):
        cx += mass[i] * pos_x[i]
        cy += mass[i] * pos_y[i]
    return cx / total_mass, cy / total_mass


@njit(cache=True)
def run_trial(pos_x, pos_y, vel_x, vel_y, mass, inv_mass,
              spring_a, spring_b, rest, rest0, stiffness, damping,
              muscle_idx, muscle_group, muscle_sign,
              offsets, amplitudes, motor_omega, contraction,
              gx, gy, ground_enabled, ground_y, contact_k, contact_c,
              friction_mu, friction_vel_eps,
              dt, n_steps, t0, sample_stride,
              sample_t, sample_x, sample_y):
    """Full trial: per-step sinusoid signals, forces, integration, COM samples.

    Samples are taken at step 0 and every sample_stride steps (the caller
    guarantees sample_stride divides n_steps).  State arrays are advanced
    in place.  Returns (diverged_step, degenerate_count); diverged_step is
    -1 when the whole trial stayed finite, else the step index at whose
    sample the first non-finite center of mass was seen.
    """
    total_mass = 0.0
    for i in range(mass.shape[0]):
        total_mass += mass[i]

    signals = np.empty(offsets.shape[0])
    fx = np.empty(pos_x.shape[0])
    fy = np.empty(pos_y.shape[0])

    cx, cy = com_xy(pos_x, pos_y, mass, total_mass)
    sample_t[0] = t0
    sample_x[0] = cx
    sample_y[0] = cy

    n_degenerate = 0
    for i in range(n_steps):
        t = t0 + i * dt
        compute_signals(offsets, amplitudes, motor_omega * t, signals)
        apply_muscle_rests(rest, rest0, muscle_idx, muscle_group, muscle_sign,
                           signals, contraction)
        n_degenerate += accumulate_forces(
            pos_x, pos_y, vel_x, vel_y, spring_a, spring_b, rest, stiffness,
            damping, ground_enabled, ground_y, contact_k, contact_c,
            friction_mu, friction_vel_eps, fx, fy)
        integrate(pos_x, pos_y, vel_x, vel_y, inv_mass, fx, fy, gx, gy, dt)

        if (i + 1) % sample_stride == 0:
            k = (i + 1) // sample_stride
            cx, cy = com_xy(pos_x, pos_y, mass, total_mass)
            sample_t[k] = t0 + (i + 1) * dt
            sample_x[k] = cx
            sample_y[k] = cy
            if not (math.isfinite(cx) and math.isfinite(cy)):
                return i + 1, n_degenerate
    return -1, n_degenerate
