"""2D point-mass/spring dynamics with gravity, flat ground, and friction.

A World owns flat state arrays (struct-of-arrays for the numba kernels in
_kernels.py) and exposes PointMass/Spring views for construction and
inspection.  All operations are deterministic: the same inputs produce
bit-identical states after any number of steps.

Ground contact is a one-sided penalty: a vertical spring-damper engages
while a node is below ground_y (clamped to push only upward), and a
regularized Coulomb force ``-mu * N * tanh(vx / v_eps)`` opposes the
horizontal velocity of contacting nodes.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .controller import Genome, MotorConfig, N_GROUPS

log = logging.getLogger(__name__)

GRAVITY_MAGNITUDE = 9.81


class PhysicsError(ValueError):
    pass


class SimulationDiverged(RuntimeError):
    """Non-finite state was produced; carries where and in which trial."""

    def __init__(self, step: int, time: float, context: str = ""):
        self.step = step
        self.time = time
        self.context = context
        where = f" [{context}]" if context else ""
        super().__init__(
            f"simulation diverged at step {step} (t={time:.4f}s){where}")


@dataclass
class PointMass:
    position: np.ndarray
    velocity: np.ndarray
    mass: float

    def __post_init__(self):
        self.position = np.asarray(self.position, dtype=np.float64)
        self.velocity = np.asarray(self.velocity, dtype=np.float64)
        if self.position.shape != (2,) or self.velocity.shape != (2,):
            raise PhysicsError("position and velocity must be 2-vectors")
        if not (math.isfinite(self.mass) and self.mass > 0):
            raise PhysicsError(f"mass must be finite and > 0, got {self.mass!r}")


@dataclass
class Spring:
    node_a: int
    node_b: int
    rest_length: float
    stiffness: float
    damping: float = 0.0
    is_muscle: bool = False
    muscle_group: Optional[int] = None
    muscle_sign: float = 0.0

    def __post_init__(self):
        if self.node_a == self.node_b:
            raise PhysicsError("spring endpoints must differ")
        if not self.rest_length > 0:
            raise PhysicsError(f"rest_length must be > 0, got {self.rest_length!r}")
        if self.stiffness < 0 or self.damping < 0:
            raise PhysicsError("stiffness and damping must be >= 0")
        if self.is_muscle != (self.muscle_group is not None):
            raise PhysicsError("muscle_group must be set iff is_muscle")
        if self.is_muscle:
            if not 0 <= self.muscle_group < N_GROUPS:
                raise PhysicsError(f"muscle_group must be in [0, {N_GROUPS})")
            if self.muscle_sign not in (-1.0, 1.0):
                raise PhysicsError("muscle_sign must be +1 or -1")
        elif self.muscle_sign != 0.0:
            raise PhysicsError("non-muscle springs must have muscle_sign 0")


@dataclass(frozen=True)
class SimConfig:
    """Timestep, behavior duration, and trajectory sampling stride."""

    dt: float = 0.002
    duration: float = 60.0
    com_sample_stride: int = 50

    def __post_init__(self):
        if not (math.isfinite(self.dt) and self.dt > 0):
            raise PhysicsError(f"dt must be > 0, got {self.dt!r}")
        steps = self.duration / self.dt
        if not math.isfinite(steps) or abs(steps - round(steps)) > 1e-9 * max(1.0, steps):
            raise PhysicsError(
                f"duration {self.duration} must be an exact multiple of dt {self.dt}")
        if round(steps) < 1:
            raise PhysicsError("duration must cover at least one step")
        if self.com_sample_stride < 1:
            raise PhysicsError("com_sample_stride must be >= 1")
        if round(steps) % self.com_sample_stride != 0:
            raise PhysicsError(
                f"com_sample_stride {self.com_sample_stride} must divide the "
                f"step count {round(steps)}")

    @property
    def n_steps(self) -> int:
        return int(round(self.duration / self.dt))


class World:
    """Mutable spring-mass state plus environment constants.

    A World is exclusively owned by one evaluation; copy() before handing
    it to a trial if the original must stay pristine.
    """

    def __init__(self, pos_x, pos_y, vel_x, vel_y, mass,
                 spring_a, spring_b, rest0, rest, stiffness, damping,
                 muscle_idx, muscle_group, muscle_sign,
                 gravity=(0.0, -GRAVITY_MAGNITUDE), ground_enabled=True,
                 ground_y=0.0, contact_stiffness=1200.0, contact_damping=0.4,
                 friction_mu=1.0, friction_vel_eps=0.005, time=0.0):
        self.pos_x = np.asarray(pos_x, dtype=np.float64)
        self.pos_y = np.asarray(pos_y, dtype=np.float64)
        self.vel_x = np.asarray(vel_x, dtype=np.float64)
        self.vel_y = np.asarray(vel_y, dtype=np.float64)
        self.mass = np.asarray(mass, dtype=np.float64)
        self.inv_mass = 1.0 / self.mass
        self.spring_a = np.asarray(spring_a, dtype=np.int64)
        self.spring_b = np.asarray(spring_b, dtype=np.int64)
        self.rest0 = np.asarray(rest0, dtype=np.float64)
        self.rest = np.asarray(rest, dtype=np.float64)
        self.stiffness = np.asarray(stiffness, dtype=np.float64)
        self.damping = np.asarray(damping, dtype=np.float64)
        self.muscle_idx = np.asarray(muscle_idx, dtype=np.int64)
        self.muscle_group = np.asarray(muscle_group, dtype=np.int64)
        self.muscle_sign = np.asarray(muscle_sign, dtype=np.float64)
        self.gravity = (float(gravity[0]), float(gravity[1]))
        self.ground_enabled = bool(ground_enabled)
        self.ground_y = float(ground_y)
        self.contact_stiffness = float(contact_stiffness)
        self.contact_damping = float(contact_damping)
        self.friction_mu = float(friction_mu)
        self.friction_vel_eps = float(friction_vel_eps)
        self.time = float(time)
        self._validate()

    def _validate(self):
        n = self.pos_x.shape[0]
        if n < 1:
            raise PhysicsError("world needs at least one node")
        for arr, name in ((self.pos_y, "pos_y"), (self.vel_x, "vel_x"),
                          (self.vel_y, "vel_y"), (self.mass, "mass")):
            if arr.shape != (n,):
                raise PhysicsError(f"{name} length mismatch")
        if np.any(self.mass <= 0) or not np.all(np.isfinite(self.mass)):
            raise PhysicsError("all masses must be finite and > 0")
        m = self.spring_a.shape[0]
        if self.spring_b.shape != (m,) or self.rest0.shape != (m,):
            raise PhysicsError("spring array length mismatch")
        if m and (self.spring_a.min() < 0 or self.spring_a.max() >= n
                  or self.spring_b.min() < 0 or self.spring_b.max() >= n):
            raise PhysicsError("spring node index out of range")
        if np.any(self.spring_a == self.spring_b):
            raise PhysicsError("spring endpoints must differ")
        if np.any(self.rest0 <= 0):
            raise PhysicsError("rest lengths must be > 0")

    @classmethod
    def from_parts(cls, nodes: Sequence[PointMass], springs: Sequence[Spring],
                   **env) -> "World":
        pos = np.array([nd.position for nd in nodes], dtype=np.float64)
        vel = np.array([nd.velocity for nd in nodes], dtype=np.float64)
        mass = np.array([nd.mass for nd in nodes], dtype=np.float64)
        sa = np.array([s.node_a for s in springs], dtype=np.int64)
        sb = np.array([s.node_b for s in springs], dtype=np.int64)
        rest = np.array([s.rest_length for s in springs], dtype=np.float64)
        stiff = np.array([s.stiffness for s in springs], dtype=np.float64)
        damp = np.array([s.damping for s in springs], dtype=np.float64)
        muscle_idx = np.array([i for i, s in enumerate(springs) if s.is_muscle],
                              dtype=np.int64)
        muscle_group = np.array([springs[i].muscle_group for i in muscle_idx],
                                dtype=np.int64)
        muscle_sign = np.array([springs[i].muscle_sign for i in muscle_idx],
                               dtype=np.float64)
        return cls(pos[:, 0].copy(), pos[:, 1].copy(),
                   vel[:, 0].copy(), vel[:, 1].copy(), mass,
                   sa, sb, rest.copy(), rest.copy(), stiff, damp,
                   muscle_idx, muscle_group, muscle_sign, **env)

    @property
    def n_nodes(self) -> int:
        return self.pos_x.shape[0]

    @property
    def n_springs(self) -> int:
        return self.spring_a.shape[0]

    def node(self, i: int) -> PointMass:
        return PointMass(np.array([self.pos_x[i], self.pos_y[i]]),
                         np.array([self.vel_x[i], self.vel_y[i]]),
                         float(self.mass[i]))

    def spring(self, i: int) -> Spring:
        k = np.searchsorted(self.muscle_idx, i)
        is_muscle = k < self.muscle_idx.shape[0] and self.muscle_idx[k] == i
        return Spring(int(self.spring_a[i]), int(self.spring_b[i]),
                      float(self.rest[i]), float(self.stiffness[i]),
                      float(self.damping[i]), is_muscle,
                      int(self.muscle_group[k]) if is_muscle else None,
                      float(self.muscle_sign[k]) if is_muscle else 0.0)

    def copy(self) -> "World":
        return World(self.pos_x.copy(), self.pos_y.copy(),
                     self.vel_x.copy(), self.vel_y.copy(), self.mass.copy(),
                     self.spring_a, self.spring_b, self.rest0.copy(),
                     self.rest.copy(), self.stiffness.copy(), self.damping.copy(),
                     self.muscle_idx, self.muscle_group, self.muscle_sign,
                     gravity=self.gravity, ground_enabled=self.ground_enabled,
                     ground_y=self.ground_y,
                     contact_stiffness=self.contact_stiffness,
                     contact_damping=self.contact_damping,
                     friction_mu=self.friction_mu,
                     friction_vel_eps=self.friction_vel_eps, time=self.time)

    def set_muscle_rests(self, signals: np.ndarray, contraction: float) -> None:
        signals = np.asarray(signals, dtype=np.float64)
        _kernels.apply_muscle_rests(self.rest, self.rest0, self.muscle_idx,
                                    self.muscle_group, self.muscle_sign,
                                    signals, float(contraction))

    def state_equal(self, other: "World") -> bool:
        return (np.array_equal(self.pos_x, other.pos_x)
                and np.array_equal(self.pos_y, other.pos_y)
                and np.array_equal(self.vel_x, other.vel_x)
                and np.array_equal(self.vel_y, other.vel_y)
                and np.array_equal(self.rest, other.rest)
                and self.time == other.time)


@dataclass(frozen=True)
class TrialSummary:
    """Center-of-mass trajectory samples of one behavior trial.

    samples has one row per sample: (t, x_com, y_com), always including
    the initial and final states.
    """

    samples: np.ndarray
    dt: float
    duration: float

    @property
    def com_start(self) -> np.ndarray:
        return self.samples[0, 1:]

    @property
    def com_end(self) -> np.ndarray:
        return self.samples[-1, 1:]

    @property
    def displacement_x(self) -> float:
        return float(self.samples[-1, 1] - self.samples[0, 1])


def spring_force(spring: Spring, world: World) -> tuple[np.ndarray, np.ndarray]:
    """Forces on (node_a, node_b); exact negations of each other.

    Coincident endpoints are degenerate: the force is defined as zero for
    that evaluation (logged at debug level).
    """
    a, b = spring.node_a, spring.node_b
    d = np.array([world.pos_x[b] - world.pos_x[a],
                  world.pos_y[b] - world.pos_y[a]])
    length = math.hypot(d[0], d[1])
    if length < _kernels.DEGENERATE_LENGTH:
        log.debug("degenerate spring %d-%d: coincident endpoints, zero force", a, b)
        return np.zeros(2), np.zeros(2)
    u = d / length
    rel = ((world.vel_x[b] - world.vel_x[a]) * u[0]
           + (world.vel_y[b] - world.vel_y[a]) * u[1])
    fmag = spring.stiffness * (length - spring.rest_length) + spring.damping * rel
    f_a = fmag * u
    return f_a, -f_a


def center_of_mass(world: World) -> np.ndarray:
    total = float(world.mass.sum())
    return np.array([float(world.mass @ world.pos_x) / total,
                     float(world.mass @ world.pos_y) / total])


def total_momentum(world: World) -> np.ndarray:
    return np.array([float(world.mass @ world.vel_x),
                     float(world.mass @ world.vel_y)])


def mechanical_energy(world: World) -> float:
    """Kinetic + elastic (current rest lengths) + gravitational potential."""
    kinetic = 0.5 * float(world.mass @ (world.vel_x ** 2 + world.vel_y ** 2))
    dx = world.pos_x[world.spring_b] - world.pos_x[world.spring_a]
    dy = world.pos_y[world.spring_b] - world.pos_y[world.spring_a]
    lengths = np.hypot(dx, dy)
    elastic = 0.5 * float(world.stiffness @ (lengths - world.rest) ** 2)
    gx, gy = world.gravity
    grav = -float(world.mass @ (gx * world.pos_x + gy * world.pos_y))
    return kinetic + elastic + grav


def step(world: World, config: SimConfig, muscle_signals,
         contraction_range: float = 0.25) -> World:
    """Advance the world by one dt; mutates and returns the same World.

    muscle_signals are the 12 group signals in [-1, 1] already evaluated
    at the current time; rest lengths are set from them before forces.
    """
    signals = np.asarray(muscle_signals, dtype=np.float64)
    if signals.shape != (N_GROUPS,):
        raise PhysicsError(f"need {N_GROUPS} muscle signals, got shape {signals.shape}")
    if not np.all(np.isfinite(signals)) or np.any(np.abs(signals) > 1.0):
        raise PhysicsError("muscle signals must be finite and within [-1, 1]")
    fx = np.empty(world.n_nodes)
    fy = np.empty(world.n_nodes)
    n_degenerate, finite = _kernels.step_once(
        world.pos_x, world.pos_y, world.vel_x, world.vel_y, world.inv_mass,
        world.spring_a, world.spring_b, world.rest, world.rest0,
        world.stiffness, world.damping,
        world.muscle_idx, world.muscle_group, world.muscle_sign,
        signals, float(contraction_range),
        world.gravity[0], world.gravity[1],
        world.ground_enabled, world.ground_y,
        world.contact_stiffness, world.contact_damping,
        world.friction_mu, world.friction_vel_eps, config.dt, fx, fy)
    if n_degenerate:
        log.warning("%d degenerate spring evaluations in step at t=%.4f",
                    n_degenerate, world.time)
    world.time += config.dt
    if not finite:
        raise SimulationDiverged(step=int(round(world.time / config.dt)),
                                 time=world.time)
    return world


def simulate_behavior(body: World, genome: Genome, config: SimConfig,
                      motor: MotorConfig = MotorConfig(),
                      context: str = "") -> TrialSummary:
    """Run one full behavior trial on a copy of the built body.

    Deterministic in (body, genome, config, motor).  Raises
    SimulationDiverged (with context) if the state goes non-finite.
    """
    w = body.copy()
    n_steps = config.n_steps
    n_samples = n_steps // config.com_sample_stride + 1
    sample_t = np.empty(n_samples)
    sample_x = np.empty(n_samples)
    sample_y = np.empty(n_samples)
    offsets = np.ascontiguousarray(genome.offsets)
    amplitudes = np.ascontiguousarray(genome.amplitudes)
    motor_omega = 2.0 * math.pi / motor.motor_period
    diverged_step, n_degenerate = _kernels.run_trial(
        w.pos_x, w.pos_y, w.vel_x, w.vel_y, w.mass, w.inv_mass,
        w.spring_a, w.spring_b, w.rest, w.rest0, w.stiffness, w.damping,
        w.muscle_idx, w.muscle_group, w.muscle_sign,
        offsets, amplitudes, motor_omega, motor.contraction_range,
        w.gravity[0], w.gravity[1], w.ground_enabled, w.ground_y,
        w.contact_stiffness, w.contact_damping,
        w.friction_mu, w.friction_vel_eps,
        config.dt, n_steps, w.time, config.com_sample_stride,
        sample_t, sample_x, sample_y)
    if n_degenerate:
        log.warning("%d degenerate spring evaluations during trial%s",
                    n_degenerate, f" [{context}]" if context else "")
    if diverged_step >= 0:
        raise SimulationDiverged(step=diverged_step,
                                 time=w.time + diverged_step * config.dt,
                                 context=context)
    samples = np.column_stack([sample_t, sample_x, sample_y])
    return TrialSummary(samples=samples, dt=config.dt, duration=config.duration)


def write_trajectory_csv(summary: TrialSummary, path) -> None:
    """Dump `t,x_com,y_com` rows for the replay command."""
    with open(path, "w") as fh:
        fh.write("t,x_com,y_com\n")
        for t, x, y in summary.samples:
            fh.write(f"{t!r},{x!r},{y!r}\n")
