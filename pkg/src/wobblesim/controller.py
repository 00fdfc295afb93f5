"""Genome encoding and sinusoidal open-loop motor control.

A behavior is 24 scalars: one (offset, amplitude) pair per motor group,
12 groups.  Group ``g``'s signal at time ``t`` is
``amplitude_g * sin(2*pi*t/period + offset_g)``, and each muscle spring's
rest length follows the signal antagonistically through its polarity
sign, so the paired muscles of a section always move oppositely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

N_GROUPS = 12
GENOME_LEN = 2 * N_GROUPS

TWO_PI = 2.0 * math.pi


class GenomeError(ValueError):
    pass


@dataclass(frozen=True)
class Genome:
    """Immutable 24-scalar behavior encoding.

    Layout: ``values[2g]`` is group g's phase offset in [0, 2*pi),
    ``values[2g+1]`` its amplitude in [0, 1].
    """

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.shape != (GENOME_LEN,):
            raise GenomeError(f"genome must have {GENOME_LEN} values, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise GenomeError("genome values must be finite")
        offs, amps = v[0::2], v[1::2]
        if np.any(offs < 0.0) or np.any(offs >= TWO_PI):
            raise GenomeError("offsets must lie in [0, 2*pi)")
        if np.any(amps < 0.0) or np.any(amps > 1.0):
            raise GenomeError("amplitudes must lie in [0, 1]")
        v = v.copy()
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @property
    def offsets(self) -> np.ndarray:
        return self.values[0::2]

    @property
    def amplitudes(self) -> np.ndarray:
        return self.values[1::2]

    def to_csv(self) -> str:
        """24 comma-separated decimals at full round-trip precision."""
        return ",".join(repr(float(x)) for x in self.values)

    @classmethod
    def from_csv(cls, text: str) -> "Genome":
        parts = text.split(",")
        if len(parts) != GENOME_LEN:
            raise GenomeError(f"expected {GENOME_LEN} comma-separated values, got {len(parts)}")
        return cls(np.array([float(p) for p in parts], dtype=np.float64))

    def __eq__(self, other) -> bool:
        return isinstance(other, Genome) and np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash(self.values.tobytes())


@dataclass(frozen=True)
class MotorConfig:
    """Shared sinusoid period (s) and rest-length modulation fraction."""

    motor_period: float = 2.0
    contraction_range: float = 0.25

    def __post_init__(self):
        if not (math.isfinite(self.motor_period) and self.motor_period > 0):
            raise ValueError(f"motor_period must be > 0, got {self.motor_period!r}")
        if not 0.0 < self.contraction_range < 1.0:
            raise ValueError(
                f"contraction_range must be in (0, 1), got {self.contraction_range!r}")


@dataclass(frozen=True)
class MutationConfig:
    """Per-gene Gaussian mutation scales."""

    sigma_offset: float = 0.3
    sigma_amplitude: float = 0.1

    def __post_init__(self):
        if self.sigma_offset < 0 or self.sigma_amplitude < 0:
            raise ValueError("mutation sigmas must be >= 0")


def motor_signal(genome: Genome, group: int, t: float, cfg: MotorConfig) -> float:
    """Signal in [-1, 1] for one motor group at time t (seconds)."""
    if not 0 <= group < N_GROUPS:
        raise GenomeError(f"group must be in [0, {N_GROUPS}), got {group}")
    a = genome.values[2 * group + 1]
    phi = genome.values[2 * group]
    return float(a * math.sin(TWO_PI * t / cfg.motor_period + phi))


def all_signals(genome: Genome, t: float, cfg: MotorConfig) -> np.ndarray:
    """All 12 group signals at time t, in group order."""
    return genome.amplitudes * np.sin(TWO_PI * t / cfg.motor_period + genome.offsets)


def apply_signals(world, genome: Genome, t: float, cfg: MotorConfig):
    """Set muscle rest lengths from the genome's signals at time t.

    Rest lengths are always recomputed from the stored base values, never
    compounded, so repeated application at the same t is idempotent.
    Structural springs and all node state are untouched.  Returns the
    world for chaining.
    """
    signals = all_signals(genome, t, cfg)
    world.set_muscle_rests(signals, cfg.contraction_range)
    return world


def random_genome(rng: np.random.Generator) -> Genome:
    """Offsets uniform on [0, 2*pi), amplitudes uniform on [0, 1)."""
    values = np.empty(GENOME_LEN)
    values[0::2] = rng.uniform(0.0, TWO_PI, N_GROUPS)
    values[1::2] = rng.uniform(0.0, 1.0, N_GROUPS)
    return Genome(values)


def mutate(genome: Genome, rng: np.random.Generator,
           mcfg: MutationConfig = MutationConfig()) -> Genome:
    """Gaussian noise on every gene; offsets wrap mod 2*pi, amplitudes clamp."""
    noise = rng.standard_normal(GENOME_LEN)
    values = genome.values.copy()
    offs = np.mod(values[0::2] + mcfg.sigma_offset * noise[0::2], TWO_PI)
    offs[offs >= TWO_PI] = 0.0  # fmod can round a tiny negative input up to 2*pi
    values[0::2] = offs
    values[1::2] = np.clip(values[1::2] + mcfg.sigma_amplitude * noise[1::2], 0.0, 1.0)
    return Genome(values)
