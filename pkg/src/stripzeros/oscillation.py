"""Mean oscillation, BMO lower bounds, and the jump criterion.

The mean oscillation of ``f`` over an interval ``I`` is the average of
``|f - f_I|`` where ``f_I`` is the average of ``f`` on ``I``.  The BMO
sweep maximizes it over a dyadic interval family and is, by construction,
a lower bound for the BMO seminorm.

The jump criterion: a nondecreasing ``g`` with ``g(a+1) - g(a) >= M`` has
mean oscillation at least ``M/6`` over ``[a-1, a+2]``; splitting on
whether the interval mean sits below or above ``g(a + M/2)``, one of the
outer unit subintervals deviates from the mean by at least ``M/2``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._numutil import trapezoid
from .errors import (
    GridRangeError,
    InsufficientJumpError,
    NotMonotoneError,
    PreconditionError,
)
from .sampled import SampledFunction

__all__ = [
    "OscillationReport",
    "Fast2Check",
    "mean_oscillation",
    "bmo_estimate",
    "check_fast2",
]

MONOTONE_SLACK = 1e-12  # per-step tolerance for "nondecreasing"


@dataclass(frozen=True)
class OscillationReport:
    """Interval, its mean value, and the mean oscillation over it."""

    a: float
    b: float
    mean: float
    oscillation: float

    @property
    def interval(self) -> tuple[float, float]:
        return (self.a, self.b)


@dataclass(frozen=True)
class Fast2Check:
    """Outcome of the jump criterion at one window."""

    passed: bool
    oscillation: float
    threshold: float
    interval: tuple[float, float]
    jump: float


def _integration_nodes(f: SampledFunction, a: float, b: float):
    ts = f.grid
    inner = ts[(ts > a) & (ts < b)]
    xs = np.concatenate(([a], inner, [b]))
    return xs, np.interp(xs, ts, f.values)


def mean_oscillation(f: SampledFunction, a: float, b: float) -> OscillationReport:
    """Trapezoid mean, then trapezoid average of ``|f - mean|``, on ``[a, b]``."""
    if not f.covers(a, b):
        raise GridRangeError(
            f"[{a}, {b}] outside the sampled range [{f.t0}, {f.t_end}]"
        )
    if not b - a >= 2 * f.h:
        raise PreconditionError(f"interval [{a}, {b}] shorter than two grid steps")
    xs, ys = _integration_nodes(f, a, b)
    mean = float(trapezoid(ys, xs)) / (b - a)
    osc = float(trapezoid(np.abs(ys - mean), xs)) / (b - a)
    return OscillationReport(a, b, mean, osc)


def bmo_estimate(
    f: SampledFunction, min_len: float, max_len: float
) -> OscillationReport:
    """Max mean oscillation over a dyadic interval family (a lower bound).

    Lengths are ``min_len * 2^k`` up to ``max_len``; anchors step by a
    quarter length across the grid.  Returns the report of the witnessing
    interval.
    """
    if not 2 * f.h <= min_len <= max_len:
        raise PreconditionError(
            f"need 2h <= min_len <= max_len, got h={f.h}, {min_len}, {max_len}"
        )
    span = f.t_end - f.t0
    if max_len > span:
        raise PreconditionError(f"max_len {max_len} exceeds the grid span {span}")
    best: OscillationReport | None = None
    length = float(min_len)
    eps = 1e-9 * max(1.0, abs(f.t_end))
    while length <= max_len * (1 + 1e-12):
        a = f.t0
        step = length / 4.0
        while a + length <= f.t_end + eps:
            rep = mean_oscillation(f, a, min(a + length, f.t_end))
            if best is None or rep.oscillation > best.oscillation:
                best = rep
            a += step
        length *= 2.0
    assert best is not None
    return best


def check_fast2(g: SampledFunction, a: float, jump_size: float) -> Fast2Check:
    """Verify the ``M/6`` oscillation bound at the window ``[a-1, a+2]``.

    Preconditions are reported distinctly: the samples must be
    nondecreasing, ``[a-1, a+2]`` must lie in the grid, and the sampled
    jump ``g(a+1) - g(a)`` must reach ``jump_size``.  The PASS threshold
    concedes the quadrature tolerance ``2*h*M``.
    """
    if not jump_size > 0:
        raise PreconditionError(f"jump size must be positive, got {jump_size}")
    steps = np.diff(g.values)
    if steps.size and float(steps.min()) < -MONOTONE_SLACK:
        k = int(np.argmin(steps))
        raise NotMonotoneError(
            f"samples decrease by {-float(steps.min()):g} near t={g.t0 + k * g.h:g}"
        )
    if not g.covers(a - 1.0, a + 2.0):
        raise GridRangeError(
            f"[{a - 1}, {a + 2}] outside the sampled range [{g.t0}, {g.t_end}]"
        )
    jump = float(g.value_at(a + 1.0) - g.value_at(a))
    if jump < jump_size:
        raise InsufficientJumpError(
            f"insufficient jump: g(a+1)-g(a) = {jump:g} < {jump_size:g}"
        )
    rep = mean_oscillation(g, a - 1.0, a + 2.0)
    threshold = jump_size / 6.0 - 2.0 * g.h * jump_size
    return Fast2Check(
        rep.oscillation >= threshold,
        rep.oscillation,
        threshold,
        (a - 1.0, a + 2.0),
        jump,
    )
