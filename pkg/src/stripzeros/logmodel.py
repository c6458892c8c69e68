"""Hilbert-transform models of a log-modulus and the divergence pipeline.

The transform of the log-modulus of a strip-zero model is, up to a
constant, a linear term ``(T/2) t`` minus the branch sum over the zeros.
The divergence scan samples that expression near the densest unit window
of each model in a family, takes the best mean oscillation over intervals
of one fixed length, and reports the resulting BMO lower bounds: for
families whose window counts grow, the bounds grow with them, while the
fixed interval length keeps the linear term's contribution constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .argbranch import default_truncation_radius, phi_sum
from .errors import HelsonSzegoBoundError, PreconditionError, TruncationError
from .hilbert import hilbert_transform_sampled
from .oscillation import OscillationReport, bmo_estimate
from .sampled import SampledFunction
from .zeros import ZeroSet, blaschke_tail
from .zoo import ZooModel, hot_unit_window, relative_zero_set

__all__ = [
    "HilbertLogModel",
    "HlfValue",
    "hlf_evaluate",
    "hlf_samples",
    "reconstruct_log_modulus",
    "HSWitness",
    "ComposedWeight",
    "compose_helson_szego",
    "DivergenceRow",
    "theorem_divergence_scan",
]

HALF_PI = math.pi / 2.0


@dataclass(frozen=True)
class HilbertLogModel:
    """Width of the indicator diagram, a free constant, and the zeros.

    The constant has no formula and all oscillation quantities kill it;
    it defaults to zero.
    """

    indicator_width: float
    theta: float
    zeros: ZeroSet | None

    def __post_init__(self):
        if not self.indicator_width >= 0:
            raise PreconditionError(
                f"indicator width must be >= 0, got {self.indicator_width}"
            )


@dataclass(frozen=True)
class HlfValue:
    value: float
    tail_bound: float


def hlf_evaluate(
    model: HilbertLogModel, t: float, truncation_radius: float
) -> HlfValue:
    """``theta + (T/2) t`` minus the truncated branch sum, with its tail bound."""
    if model.zeros is None:
        return HlfValue(model.theta + 0.5 * model.indicator_width * t, 0.0)
    s = phi_sum(model.zeros, t, truncation_radius)
    return HlfValue(
        model.theta + 0.5 * model.indicator_width * t - s.value, s.tail_bound
    )


def hlf_samples(
    model: HilbertLogModel,
    template: SampledFunction,
    truncation_radius: float | None = None,
    _chunk: int = 256,
) -> tuple[SampledFunction, float]:
    """Model samples on the template grid and the worst-case tail bound."""
    ts = template.grid
    acc = model.theta + 0.5 * model.indicator_width * ts
    tail = 0.0
    if model.zeros is not None:
        zs = model.zeros
        t_max = float(np.abs(ts).max())
        radius = truncation_radius
        if radius is None:
            radius = default_truncation_radius(zs, t_max)
        elif not radius > 2.0 * t_max:
            raise TruncationError(
                f"truncation radius {radius} too small: needs > 2 max|t| = {2 * t_max}"
            )
        keep = np.hypot(zs.res, zs.ims) <= radius
        res, ims, mults = zs.res[keep], zs.ims[keep], zs.mults[keep]
        for lo in range(0, res.size, _chunk):
            hi = min(lo + _chunk, res.size)
            x = res[lo:hi, None]
            y = ims[lo:hi, None]
            d = y * y + x * (x - ts[None, :])
            with np.errstate(divide="ignore"):
                vals = np.arctan(y * ts[None, :] / d)
            vals += np.where(
                d < 0.0, np.where(x > 0.0, math.pi, -math.pi), 0.0
            )
            acc -= mults[lo:hi] @ vals
        tail = 2.0 * t_max * blaschke_tail(zs, radius)
    return template.like(acc), tail


def reconstruct_log_modulus(
    model: HilbertLogModel,
    template: SampledFunction,
    truncation_radius: float | None = None,
) -> SampledFunction:
    """Minus the transform of the model samples: the log-modulus up to a constant.

    The transform inverts itself up to sign and additive constants, so the
    output tracks the log-modulus only modulo a vertical offset; compare
    after subtracting means.
    """
    samples, _ = hlf_samples(model, template, truncation_radius)
    out = hilbert_transform_sampled(samples)
    return out.like(-out.values)


# ----------------------------------------------------------------------
# Helson-Szego composition


@dataclass(frozen=True)
class HSWitness:
    """Bounded pair ``(u, v)``; admissible only while ``max|v| < pi/2``."""

    u: SampledFunction
    v: SampledFunction

    @property
    def v_sup(self) -> float:
        return float(np.abs(self.v.values).max())


@dataclass(frozen=True)
class ComposedWeight:
    weight: SampledFunction
    log_weight: SampledFunction


def compose_helson_szego(
    witness: HSWitness, template: SampledFunction | None = None
) -> ComposedWeight:
    """Samples of ``exp(u + Hv)`` with the hard gate ``max|v| < pi/2``."""
    if witness.v_sup >= HALF_PI:
        raise HelsonSzegoBoundError(
            f"Helson-Szego bound violated: max|v| = {witness.v_sup!r} >= pi/2"
        )
    grid = template if template is not None else witness.v
    v = grid.like(np.asarray(witness.v.value_at(grid.grid)))
    u_vals = np.asarray(witness.u.value_at(grid.grid))
    hv = hilbert_transform_sampled(v)
    log_weight = grid.like(u_vals + hv.values)
    return ComposedWeight(grid.like(np.exp(log_weight.values)), log_weight)


# ----------------------------------------------------------------------
# divergence scan


@dataclass(frozen=True)
class DivergenceRow:
    """One family member: its label, BMO lower bound, and the witness."""

    label: float
    bound: float
    witness: tuple[float, float]
    window_count: int
    tail_bound: float


def theorem_divergence_scan(
    family: Sequence[tuple[float, ZooModel]],
    *,
    interval_length: float = 3.0,
    halfspan: float = 6.5,
    step: float = 0.005,
    theta: float = 0.0,
    indicator_width: float | None = None,
) -> list[DivergenceRow]:
    """BMO lower bounds of the transform model near each member's hot window.

    The grid geometry (step, halfspan, interval length) is fixed across the
    family; the grid is anchored at each member's densest unit window and
    the zeros enter as offsets from that anchor, since oscillation over an
    interval is unchanged by translating zeros and grid together and the
    anchor-dependent constants drop out.  Every zero is kept, so the tail
    bound is zero unless a truncation is forced by the data.
    """
    if not interval_length <= 2 * halfspan:
        raise PreconditionError(
            f"interval length {interval_length} exceeds the grid span {2 * halfspan}"
        )
    rows = []
    n = int(round(2.0 * halfspan / step)) + 1
    for label, model in family:
        base, rel_anchor, count = hot_unit_window(model)
        zs_rel = relative_zero_set(model, base)
        width = (
            indicator_width if indicator_width is not None else model.indicator_width
        )
        t0 = rel_anchor + 0.5 - halfspan
        template = SampledFunction(t0, step, np.zeros(n))
        # theta + (T/2)*base is constant over the window and is dropped
        hlf_model = HilbertLogModel(width, theta, zs_rel)
        g, tail = hlf_samples(hlf_model, template)
        rep: OscillationReport = bmo_estimate(g, interval_length, interval_length)
        rows.append(
            DivergenceRow(
                float(label),
                rep.oscillation,
                (base + rep.a, base + rep.b),
                count,
                tail,
            )
        )
    return rows
