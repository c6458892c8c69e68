"""Zero sequences in a horizontal strip: counting, density, separation.

A zero set is a finite multiset of points ``re + i*im`` with ``im > 0``,
kept sorted by real part.  Window counts are multiplicity-weighted and use
half-open windows ``[x, x+r)`` so that adjacent windows partition the line.

Everything here is a pure function of immutable inputs; density scans
reduce with ``max``/``min`` over a fixed anchor order, so results are
deterministic and safe to compute concurrently.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from ._numutil import evaluate_on_grid, trapezoid
from .errors import InputFormatError, PreconditionError

__all__ = [
    "StripPoint",
    "ZeroSet",
    "ProfileEntry",
    "DensityProfile",
    "CartwrightEstimate",
    "load_zero_set",
    "save_zero_set",
    "window_count",
    "upper_density_profile",
    "lower_density_profile",
    "separation_constant",
    "decompose_uniformly_discrete",
    "blaschke_sum",
    "blaschke_tail",
    "cartwright_integral_estimate",
]


@dataclass(frozen=True, order=True)
class StripPoint:
    """A zero ``re + i*im`` with a positive integer multiplicity."""

    re: float
    im: float
    mult: int = 1

    def __post_init__(self):
        if not self.im > 0:
            raise InputFormatError(f"im must be positive, got {self.im}")
        if self.mult < 1:
            raise InputFormatError(f"mult must be >= 1, got {self.mult}")

    @property
    def z(self) -> complex:
        return complex(self.re, self.im)

    @property
    def abs2(self) -> float:
        return self.re * self.re + self.im * self.im


class ZeroSet:
    """Finite multiset of strip points sorted by re (ties: im, then mult).

    ``alpha``/``beta`` are the smallest and largest imaginary parts
    actually attained, i.e. the tight strip bounds of the data.
    """

    __slots__ = ("points", "alpha", "beta", "_re", "_im", "_mult", "_cum")

    def __init__(self, points: Iterable[StripPoint]):
        pts = tuple(sorted(points))
        if not pts:
            raise PreconditionError("a ZeroSet needs at least one point")
        self.points = pts
        self._re = np.array([p.re for p in pts], dtype=float)
        self._im = np.array([p.im for p in pts], dtype=float)
        self._mult = np.array([p.mult for p in pts], dtype=np.int64)
        # prefix sums of multiplicity for O(log n) window counts
        self._cum = np.concatenate(([0], np.cumsum(self._mult)))
        self.alpha = float(self._im.min())
        self.beta = float(self._im.max())

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __eq__(self, other) -> bool:
        return isinstance(other, ZeroSet) and self.points == other.points

    def __repr__(self) -> str:
        return (
            f"ZeroSet({len(self.points)} points, weight {self.weight}, "
            f"alpha={self.alpha:g}, beta={self.beta:g})"
        )

    @property
    def weight(self) -> int:
        """Total number of zeros counted with multiplicity."""
        return int(self._cum[-1])

    @property
    def res(self) -> np.ndarray:
        return self._re

    @property
    def ims(self) -> np.ndarray:
        return self._im

    @property
    def mults(self) -> np.ndarray:
        return self._mult

    def expanded(self) -> "ZeroSet":
        """The same multiset with every multiplicity written out as copies."""
        pts = []
        for p in self.points:
            pts.extend(StripPoint(p.re, p.im, 1) for _ in range(p.mult))
        return ZeroSet(pts)

    def translated(self, dx: float) -> "ZeroSet":
        """Horizontal translation by ``dx``."""
        return ZeroSet(StripPoint(p.re + dx, p.im, p.mult) for p in self.points)


@dataclass(frozen=True)
class ProfileEntry:
    """One row of a density profile; ``density == sup_count / r`` exactly."""

    r: float
    sup_count: int
    density: float
    witness: float


@dataclass(frozen=True)
class DensityProfile:
    entries: tuple[ProfileEntry, ...]

    def densities(self) -> list[float]:
        return [e.density for e in self.entries]


@dataclass(frozen=True)
class CartwrightEstimate:
    """Truncated log-integrability estimate, reported with its radius."""

    value: float
    radius: float
    skipped_nodes: int
    total_nodes: int


# ----------------------------------------------------------------------
# file formats


def _parse_csv_line(line: str, lineno: int) -> StripPoint:
    parts = [p.strip() for p in line.split(",")]
    if len(parts) not in (2, 3):
        raise InputFormatError(f"line {lineno}: expected 're,im[,mult]', got {line!r}")
    try:
        re = float(parts[0])
        im = float(parts[1])
        mult = int(parts[2]) if len(parts) == 3 and parts[2] else 1
    except ValueError as exc:
        raise InputFormatError(f"line {lineno}: {exc}") from None
    if not im > 0:
        raise InputFormatError(f"line {lineno}: im must be positive, got {im}")
    if mult < 1:
        raise InputFormatError(f"line {lineno}: mult must be >= 1, got {mult}")
    return StripPoint(re, im, mult)


def load_zero_set(source) -> ZeroSet:
    """Read a zero set from CSV (``re,im[,mult]`` lines) or a JSON array.

    ``source`` may be a path, a file object, or literal text.  ``#`` lines
    and blank lines are ignored in CSV.  JSON input is an array of objects
    ``{"re": ..., "im": ..., "mult": ...}`` (``mult`` optional).
    """
    if hasattr(source, "read"):
        text = source.read()
    else:
        p = Path(source)
        if p.exists():
            text = p.read_text()
        else:
            text = str(source)
    stripped = text.lstrip()
    if not stripped:
        raise InputFormatError("empty zero-set input")
    if stripped[0] == "[":
        try:
            records = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise InputFormatError(f"bad JSON: {exc}") from None
        pts = []
        for i, rec in enumerate(records):
            try:
                pts.append(
                    StripPoint(float(rec["re"]), float(rec["im"]), int(rec.get("mult", 1)))
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise InputFormatError(f"record {i}: {exc}") from None
        if not pts:
            raise InputFormatError("empty zero-set input")
        return ZeroSet(pts)
    pts = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        pts.append(_parse_csv_line(line, lineno))
    if not pts:
        raise InputFormatError("empty zero-set input")
    return ZeroSet(pts)


def save_zero_set(zs: ZeroSet, target, fmt: str = "csv") -> None:
    """Write a zero set as CSV or JSON; floats round-trip bit-exactly."""
    if fmt == "csv":
        text = "".join(f"{p.re!r},{p.im!r},{p.mult}\n" for p in zs.points)
    elif fmt == "json":
        text = json.dumps(
            [{"re": p.re, "im": p.im, "mult": p.mult} for p in zs.points]
        )
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if hasattr(target, "write"):
        target.write(text)
    else:
        Path(target).write_text(text)


# ----------------------------------------------------------------------
# counting and densities


def window_count(zs: ZeroSet, x: float, r: float) -> int:
    """Multiplicity-weighted number of zeros with re in ``[x, x+r)``."""
    if not r > 0:
        raise PreconditionError(f"window length must be positive, got {r}")
    lo = np.searchsorted(zs.res, x, side="left")
    hi = np.searchsorted(zs.res, x + r, side="left")
    return int(zs._cum[hi] - zs._cum[lo])


def _counts_at(zs: ZeroSet, anchors: np.ndarray, r: float) -> np.ndarray:
    lo = np.searchsorted(zs.res, anchors, side="left")
    hi = np.searchsorted(zs.res, anchors + r, side="left")
    return zs._cum[hi] - zs._cum[lo]


def _validate_radii(radii: Sequence[float]) -> list[float]:
    radii = list(radii)
    if not radii:
        raise PreconditionError("radii must be nonempty")
    if any(not r > 0 for r in radii):
        raise PreconditionError("radii must be positive")
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise PreconditionError("radii must be strictly increasing")
    return radii


def upper_density_profile(zs: ZeroSet, radii: Sequence[float]) -> DensityProfile:
    """Sup over window position of count/length, per window length.

    The count as a function of the anchor is piecewise constant with jumps
    at ``{re_i}`` and ``{re_i - r}``, and its sup is attained on that finite
    candidate set, so the scan is exact for finite data.  No limit in ``r``
    is taken: the whole profile is reported.
    """
    if len(zs) == 0:  # unreachable through the constructor; kept as a contract
        raise PreconditionError("profile undefined for an empty zero set")
    entries = []
    for r in _validate_radii(radii):
        anchors = np.unique(np.concatenate((zs.res, zs.res - r)))
        counts = _counts_at(zs, anchors, r)
        best = int(np.argmax(counts))
        sup = int(counts[best])
        entries.append(ProfileEntry(float(r), sup, sup / r, float(anchors[best])))
    return DensityProfile(tuple(entries))


def lower_density_profile(zs: ZeroSet, radii: Sequence[float]) -> DensityProfile:
    """Inf over window positions inside the data span (extension).

    This is the symmetric counterpart of :func:`upper_density_profile` with
    inf instead of sup, restricted to anchors ``x`` with
    ``[x, x+r]`` inside ``[min re, max re]``.  On finite data it is only a
    surrogate: it is not a formula from the underlying theory.
    """
    entries = []
    lo_re, hi_re = float(zs.res[0]), float(zs.res[-1])
    for r in _validate_radii(radii):
        if hi_re - r < lo_re:
            count = int(zs._cum[-1])
            entries.append(ProfileEntry(float(r), count, count / r, lo_re))
            continue
        cand = np.unique(np.concatenate((zs.res, zs.res - r)))
        cand = cand[(cand >= lo_re) & (cand <= hi_re - r)]
        # value on the open piece right of a jump point p is #(p, p+r]
        lo_idx = np.searchsorted(zs.res, cand, side="right")
        hi_idx = np.searchsorted(zs.res, cand + r, side="right")
        counts = zs._cum[hi_idx] - zs._cum[lo_idx]
        anchors = np.concatenate((cand, [lo_re]))
        counts = np.concatenate((counts, [window_count(zs, lo_re, r)]))
        best = int(np.argmin(counts))
        inf = int(counts[best])
        entries.append(ProfileEntry(float(r), inf, inf / r, float(anchors[best])))
    return DensityProfile(tuple(entries))


# ----------------------------------------------------------------------
# separation and decomposition


def separation_constant(zs: ZeroSet) -> float:
    """Smallest pairwise distance, zero when any point repeats.

    Points are counted with multiplicity, so a multiplicity above one makes
    the set non-separated by definition.
    """
    if zs.weight < 2:
        raise PreconditionError("separation needs at least two points with multiplicity")
    if int(zs.mults.max()) > 1:
        return 0.0
    res, ims = zs.res, zs.ims
    best = math.inf
    n = len(res)
    for i in range(n - 1):
        j = i + 1
        while j < n and res[j] - res[i] < best:
            d = math.hypot(res[j] - res[i], ims[j] - ims[i])
            if d < best:
                best = d
                if best == 0.0:
                    return 0.0
            j += 1
    return float(best)


def decompose_uniformly_discrete(
    zs: ZeroSet, delta: float
) -> tuple[list[ZeroSet], int]:
    """Partition into classes with pairwise distances >= ``delta``.

    Greedy first-fit over points sorted by re (multiplicities expanded to
    repeated points).  Returns the classes and the certified class-count
    bound: the max multiplicity-weighted count over windows of length
    ``2*delta``.  When a point cannot join any of ``c`` classes, each class
    blocks it within distance < ``delta``, so those ``c`` points plus the
    point itself sit in one such window; hence #classes never exceeds the
    bound.
    """
    if not delta > 0:
        raise PreconditionError(f"delta must be positive, got {delta}")
    expanded = zs.expanded()
    classes: list[list[StripPoint]] = []
    for p in expanded.points:
        placed = False
        for members in classes:
            ok = True
            for q in reversed(members):
                if p.re - q.re >= delta:
                    break
                if math.hypot(p.re - q.re, p.im - q.im) < delta:
                    ok = False
                    break
            if ok:
                members.append(p)
                placed = True
                break
        if not placed:
            classes.append([p])
    bound = upper_density_profile(expanded, [2 * delta]).entries[0].sup_count
    return [ZeroSet(members) for members in classes], bound


# ----------------------------------------------------------------------
# summability diagnostics


def blaschke_sum(zs: ZeroSet) -> float:
    """``sum mult * im / |z|^2`` over the whole set."""
    return float(np.sum(zs.mults * zs.ims / (zs.res**2 + zs.ims**2)))


def blaschke_tail(zs: ZeroSet, radius: float) -> float:
    """The same sum restricted to ``|z| > radius`` (truncation remainder)."""
    mask = np.hypot(zs.res, zs.ims) > radius
    if not mask.any():
        return 0.0
    re, im, mu = zs.res[mask], zs.ims[mask], zs.mults[mask]
    return float(np.sum(mu * im / (re**2 + im**2)))


def cartwright_integral_estimate(
    log_modulus: Callable,
    radius: float,
    grid_step: float,
    *,
    max_skip_fraction: float = 0.01,
) -> CartwrightEstimate:
    """Trapezoid estimate of ``integral of max(log|F|, 0)/(1+x^2)`` on ``[-R, R]``.

    Grid nodes where the evaluator is not finite (real zeros of the model
    give ``-inf``) are skipped; since ``max(., 0)`` sends them to zero they
    cost nothing, but more than ``max_skip_fraction`` of them is an error.
    The radius is reported back so callers can inspect convergence in R.
    """
    if not radius > 0:
        raise PreconditionError(f"radius must be positive, got {radius}")
    if not 0 < grid_step < 2 * radius:
        raise PreconditionError(f"bad grid step {grid_step} for radius {radius}")
    n = int(round(2 * radius / grid_step)) + 1
    xs = np.linspace(-radius, radius, n)
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = evaluate_on_grid(log_modulus, xs)
    finite = np.isfinite(vals)
    skipped = int(n - finite.sum())
    if skipped > max_skip_fraction * n:
        raise PreconditionError(
            f"{skipped} of {n} nodes are nonfinite, beyond the {max_skip_fraction:.0%} budget"
        )
    integrand = np.where(finite, np.maximum(vals, 0.0), 0.0) / (1.0 + xs**2)
    return CartwrightEstimate(float(trapezoid(integrand, xs)), radius, skipped, n)
