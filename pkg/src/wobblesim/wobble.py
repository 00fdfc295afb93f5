"""Epoch-indexed morphology scale schedules.

A schedule maps a learning epoch to a triple of normalized morphology
multipliers (mass, stiffness, size), all 1.0 for the adult robot.  The
selected characteristic follows a sinusoid around ``mean`` for the first
``wobble_end`` epochs, its amplitude then ramps linearly to zero until
``ramp_end``, and from ``ramp_end`` on the morphology is pinned to the
adult values exactly.  An optional ``upper_clip`` caps the value from
above (with ``mean == upper_clip`` this holds the morphology at the adult
value for the sine's non-negative half-periods).

Schedules are plain data: they never look at fitness or any other run
state, so the same schedule object can be shared freely across runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

CHARACTERISTICS = ("mass", "stiffness", "size", "none")

TWO_PI = 2.0 * math.pi


class ScheduleError(ValueError):
    """Raised when a schedule's parameters are inconsistent or unsafe."""


@dataclass(frozen=True)
class MorphologyScales:
    """Normalized morphology multipliers; (1, 1, 1) is the adult robot."""

    mass: float = 1.0
    stiffness: float = 1.0
    size: float = 1.0

    def __post_init__(self):
        for name, v in (("mass", self.mass), ("stiffness", self.stiffness),
                        ("size", self.size)):
            if not (math.isfinite(v) and v > 0.0):
                raise ScheduleError(f"{name} scale must be finite and > 0, got {v!r}")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.mass, self.stiffness, self.size)


ADULT = MorphologyScales(1.0, 1.0, 1.0)


@dataclass(frozen=True)
class WobbleSchedule:
    """Sinusoidal morphology perturbation with ramp-down and fixed tail.

    ``wobble_end``/``ramp_end`` delimit the three phases: full-amplitude
    oscillation on ``[0, wobble_end)``, linear amplitude decay on
    ``[wobble_end, ramp_end)``, adult morphology from ``ramp_end`` on.
    The ramp scales the amplitude only, so the oscillation mean is
    preserved while it dies out.
    """

    characteristic: str = "none"
    mean: float = 1.0
    amplitude: float = 0.0
    period: float = 25.0
    upper_clip: Optional[float] = None
    wobble_end: int = 1900
    ramp_end: int = 2000
    total_epochs: int = 4000

    def __post_init__(self):
        validate(self)

    def effective_amplitude(self, epoch: int) -> float:
        """Amplitude after ramp-down, as a function of the epoch index."""
        if epoch < self.wobble_end:
            return self.amplitude
        if epoch < self.ramp_end:
            span = self.ramp_end - self.wobble_end
            return self.amplitude * (self.ramp_end - epoch) / span
        return 0.0

    def value_at(self, epoch: int) -> float:
        """Scalar multiplier for the selected characteristic at ``epoch``."""
        if epoch >= self.ramp_end or self.characteristic == "none":
            return 1.0
        a = self.effective_amplitude(epoch)
        v = self.mean + a * math.sin(TWO_PI * epoch / self.period)
        if self.upper_clip is not None:
            v = min(v, self.upper_clip)
        return v

    def values(self, epochs: Optional[int] = None) -> np.ndarray:
        """Vectorized ``value_at`` over epochs ``0..epochs-1``."""
        n = self.total_epochs if epochs is None else epochs
        e = np.arange(n, dtype=np.float64)
        if self.characteristic == "none":
            return np.ones(n)
        amp = np.full(n, float(self.amplitude))
        if self.ramp_end > self.wobble_end:
            ramp = (e >= self.wobble_end) & (e < self.ramp_end)
            amp[ramp] = (self.amplitude * (self.ramp_end - e[ramp])
                         / (self.ramp_end - self.wobble_end))
        v = self.mean + amp * np.sin(TWO_PI * e / self.period)
        if self.upper_clip is not None:
            np.minimum(v, self.upper_clip, out=v)
        v[e >= self.ramp_end] = 1.0
        return v


def scale_at(schedule: WobbleSchedule, epoch: int) -> MorphologyScales:
    """Morphology scales for one epoch; exactly the adult triple after ramp_end."""
    if not 0 <= epoch < schedule.total_epochs:
        raise ScheduleError(
            f"epoch {epoch} outside [0, {schedule.total_epochs})")
    if schedule.characteristic == "none":
        return ADULT
    v = schedule.value_at(epoch)
    if schedule.characteristic == "mass":
        return MorphologyScales(mass=v)
    if schedule.characteristic == "stiffness":
        return MorphologyScales(stiffness=v)
    return MorphologyScales(size=v)


def validate(schedule: WobbleSchedule) -> None:
    """Raise ScheduleError listing every violated construction invariant."""
    s = schedule
    problems = []
    if s.characteristic not in CHARACTERISTICS:
        problems.append(f"characteristic must be one of {CHARACTERISTICS}, "
                        f"got {s.characteristic!r}")
    if not (isinstance(s.total_epochs, int) and s.total_epochs > 0):
        problems.append(f"total_epochs must be a positive integer, got {s.total_epochs!r}")
    if not (isinstance(s.wobble_end, int) and isinstance(s.ramp_end, int)):
        problems.append("wobble_end and ramp_end must be integers")
    elif not 0 <= s.wobble_end <= s.ramp_end <= s.total_epochs:
        problems.append(
            f"need 0 <= wobble_end <= ramp_end <= total_epochs, got "
            f"{s.wobble_end}, {s.ramp_end}, {s.total_epochs}")
    if not (math.isfinite(s.period) and s.period > 0):
        problems.append(f"period must be > 0, got {s.period!r}")
    if not (math.isfinite(s.amplitude) and s.amplitude >= 0):
        problems.append(f"amplitude must be >= 0, got {s.amplitude!r}")
    if not math.isfinite(s.mean):
        problems.append(f"mean must be finite, got {s.mean!r}")
    if s.upper_clip is not None and not (math.isfinite(s.upper_clip) and s.upper_clip > 0):
        problems.append(f"upper_clip must be > 0 when set, got {s.upper_clip!r}")

    if not problems and s.characteristic != "none":
        values = s.values()
        if values.size and values.min() <= 0.0:
            bad = int(np.argmin(values))
            problems.append(
                f"schedule reaches non-positive scale {values.min():.6g} "
                f"at epoch {bad}; every epoch's scale must be > 0")
    if problems:
        raise ScheduleError("; ".join(problems))
