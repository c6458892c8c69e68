"""Continuous argument branches for strip zeros and their sums.

For a zero ``z = x + iy`` (``y > 0``) the raw angle is

    psi_z(t) = arctan( y*t / (|z|^2 - x*t) ),

taken in the principal branch.  The continuous branch phi_z adds +pi above
the swap point ``t = |z|^2/x`` when ``x > 0`` and subtracts pi below it
when ``x < 0``; exactly at the swap point the value is +-pi/2.  For
``x = 0`` psi is already continuous and odd, so phi = psi.

phi_z is strictly increasing with derivative

    phi_z'(t) = y*(x^2+y^2) / ((x^2+y^2 - x*t)^2 + y^2*t^2),

which, with ``t = x + d``, equals ``y/(y^2 + d^2)``: at unit distance this
is at least ``min(alpha/(alpha^2+1), beta/(beta^2+1))`` on a strip
``alpha <= y <= beta``, the per-zero growth constant used by the
growth-window search.

The denominator ``|z|^2 - x*t`` is evaluated as ``y^2 + x*(x - t)`` so the
branch test stays exact for zeros with huge ``|x|`` sampled near ``t = x``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import PreconditionError, TruncationError, VerificationError
from .zeros import ZeroSet, blaschke_tail

__all__ = [
    "ArgBranchValue",
    "PhiSumResult",
    "growth_constant",
    "psi",
    "phi",
    "phi_derivative",
    "phi_sum",
    "find_growth_window",
]

# |phi_z(t)| <= TAIL_CONSTANT * |t| * y/|z|^2 once |z| > 2|t|; see phi_sum
TAIL_CONSTANT = 2.0


class ArgBranchValue(NamedTuple):
    """Branch value and where ``t`` sits relative to the swap point."""

    value: float
    region: str  # "below", "at" or "above" t = |z|^2/x


@dataclass(frozen=True)
class PhiSumResult:
    """Truncated branch sum with a certified bound for the omitted terms."""

    value: float
    truncation_radius: float
    tail_bound: float


def _check_upper(z: complex) -> tuple[float, float]:
    x, y = z.real, z.imag
    if not y > 0:
        raise PreconditionError(f"zero must have positive imaginary part, got {z}")
    return x, y


def growth_constant(alpha: float, beta: float) -> float:
    """``min(alpha/(alpha^2+1), beta/(beta^2+1))`` for ``0 < alpha <= beta``."""
    if not alpha > 0:
        raise PreconditionError(f"alpha must be positive, got {alpha}")
    if beta < alpha:
        raise PreconditionError(f"need alpha <= beta, got {alpha} > {beta}")
    return min(alpha / (alpha * alpha + 1.0), beta / (beta * beta + 1.0))


def psi(z: complex, t: float) -> float:
    """Principal-branch angle; the swap point maps to its one-sided limit."""
    x, y = _check_upper(z)
    d = y * y + x * (x - t)
    if d == 0.0:
        return math.copysign(math.pi / 2, y * t)
    return math.atan(y * t / d)


def phi(z: complex, t: float) -> ArgBranchValue:
    """Continuous branch value at ``t`` with its branch region."""
    x, y = _check_upper(z)
    d = y * y + x * (x - t)
    if x == 0.0:
        return ArgBranchValue(math.atan(t / y), "below")
    if d == 0.0:
        return ArgBranchValue(math.copysign(math.pi / 2, x), "at")
    raw = math.atan(y * t / d)
    if x > 0.0:
        if d < 0.0:
            return ArgBranchValue(raw + math.pi, "above")
        return ArgBranchValue(raw, "below")
    if d < 0.0:
        return ArgBranchValue(raw - math.pi, "below")
    return ArgBranchValue(raw, "above")


def phi_derivative(z: complex, t: float) -> float:
    """Strictly positive derivative of the continuous branch."""
    x, y = _check_upper(z)
    d = y * y + x * (x - t)
    return y * (x * x + y * y) / (d * d + y * y * t * t)


def _phi_values(res: np.ndarray, ims: np.ndarray, t: float) -> np.ndarray:
    """Branch values over arrays of zeros at a fixed ``t``."""
    d = ims * ims + res * (res - t)
    with np.errstate(divide="ignore"):
        vals = np.arctan(ims * t / d)  # d == 0 gives +-pi/2 via arctan(+-inf)
    neg = d < 0.0
    if neg.any():
        vals = vals + np.where(neg, np.where(res > 0.0, math.pi, -math.pi), 0.0)
    return vals


def _phi_grid(x: float, y: float, ts: np.ndarray) -> np.ndarray:
    """Branch values of a single zero over a grid of ``t``."""
    d = y * y + x * (x - ts)
    with np.errstate(divide="ignore"):
        vals = np.arctan(y * ts / d)
    if x != 0.0:
        neg = d < 0.0
        if neg.any():
            vals = vals + (math.pi if x > 0.0 else -math.pi) * neg
    return vals


def phi_sum(zs: ZeroSet, t: float, truncation_radius: float) -> PhiSumResult:
    """Multiplicity-weighted branch sum over ``|z| <= truncation_radius``.

    For an omitted zero, ``|z| > 2|t|`` forces ``|z|^2 - x*t > |z|^2/2 > 0``,
    so no branch correction applies there and
    ``|phi_z(t)| <= 2*|t|*y/|z|^2``; the omitted terms are therefore bounded
    by ``2*|t|`` times the truncation remainder of the summability series.
    """
    required = 2.0 * abs(t)
    if not truncation_radius > required:
        raise TruncationError(
            f"truncation radius {truncation_radius} too small: "
            f"needs > 2|t| = {required}"
        )
    radii = np.hypot(zs.res, zs.ims)
    mask = radii <= truncation_radius
    if mask.any():
        vals = _phi_values(zs.res[mask], zs.ims[mask], t)
        # guard: the tail estimate presumes no correction beyond 2|t|
        far = radii[mask] > required
        if far.any():
            d = zs.ims[mask] ** 2 + zs.res[mask] * (zs.res[mask] - t)
            if (d[far] <= 0.0).any():
                raise VerificationError(
                    "branch correction triggered beyond 2|t|; tail bound invalid"
                )
        value = float(np.dot(zs.mults[mask], vals))
    else:
        value = 0.0
    tail = TAIL_CONSTANT * abs(t) * blaschke_tail(zs, truncation_radius)
    return PhiSumResult(value, float(truncation_radius), tail)


def default_truncation_radius(zs: ZeroSet, t_max: float) -> float:
    """A radius covering every zero and valid for all ``|t| <= t_max``."""
    far = float(np.hypot(zs.res, zs.ims).max())
    return max(2.0 * t_max + 1.0, far + 1.0)


def find_growth_window(
    zs: ZeroSet, target: float, *, truncation_radius: float | None = None
) -> float | None:
    """First unit window whose zero count certifies a branch-sum jump.

    Scans anchors ``{re - 1, re - 1/2, re}`` in increasing order and returns
    the first ``a`` whose multiplicity-weighted count in ``[a, a+1)``
    reaches ``target / growth_constant(alpha, beta)``.  The certified jump
    is then rechecked numerically; a shortfall is an internal error, since
    every zero's branch value is nondecreasing in ``t``.
    Returns ``None`` when no window qualifies in the data.
    """
    if not target > 0:
        raise PreconditionError(f"target must be positive, got {target}")
    c = growth_constant(zs.alpha, zs.beta)
    needed = target / c
    anchors = np.unique(np.concatenate((zs.res - 1.0, zs.res - 0.5, zs.res)))
    counts = _counts_unit(zs, anchors)
    ok = np.nonzero(counts >= needed - 1e-12)[0]
    if ok.size == 0:
        return None
    a = float(anchors[ok[0]])
    radius = truncation_radius
    if radius is None:
        radius = default_truncation_radius(zs, abs(a) + 1.0)
    increment = phi_sum(zs, a + 1.0, radius).value - phi_sum(zs, a, radius).value
    if increment < target - 1e-9:
        raise VerificationError(
            f"window [{a}, {a + 1}] holds {int(counts[ok[0]])} zeros "
            f"(enough for a jump of {target}) but the computed jump is "
            f"{increment}; truncation or branch bug"
        )
    return a


def _counts_unit(zs: ZeroSet, anchors: np.ndarray) -> np.ndarray:
    lo = np.searchsorted(zs.res, anchors, side="left")
    hi = np.searchsorted(zs.res, anchors + 1.0, side="left")
    return zs._cum[hi] - zs._cum[lo]
