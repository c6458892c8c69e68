"""Command-line interface: offline analyses emitting CSV reports.

Exit codes: 0 success, 2 input error, 3 numeric-precondition failure.
All outputs are plain CSV (plot-ready data, no rendering).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .argbranch import default_truncation_radius, phi_sum, _phi_grid
from .errors import InputFormatError, PreconditionError
from .logmodel import theorem_divergence_scan
from .hilbert import hilbert_transform_sampled
from .oscillation import bmo_estimate
from .sampled import SampledFunction
from .zeros import load_zero_set, save_zero_set, upper_density_profile
from . import zoo

__all__ = ["RunConfig", "main"]

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3


@dataclass
class RunConfig:
    """Parsed invocation: one command plus its inputs and grid/estimation knobs."""

    command: str
    zeros_path: str | None = None
    input_path: str | None = None
    grid: tuple[float, float, int] | None = None
    radii: list[float] = field(default_factory=list)
    truncation: float | None = None
    lengths: tuple[float, float] | None = None
    thresholds: list[float] = field(default_factory=list)
    model: str | None = None
    k_list: list[int] = field(default_factory=list)
    shift: float = 1.0
    zero: tuple[float, float] | None = None
    const: float | None = None
    out: str | None = None


def _parse_grid(text: str) -> tuple[float, float, int]:
    try:
        t0, h, n = text.split(":")
        return float(t0), float(h), int(n)
    except ValueError:
        raise InputFormatError(f"bad grid spec {text!r}, expected t0:h:n") from None


def _parse_pair(text: str) -> tuple[float, float]:
    try:
        a, b = text.split(":")
        return float(a), float(b)
    except ValueError:
        raise InputFormatError(f"bad range {text!r}, expected min:max") from None


def _parse_floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v]
    except ValueError:
        raise InputFormatError(f"bad list {text!r}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _require_file(path: str) -> str:
    if not Path(path).is_file():
        raise FileNotFoundError(f"no such file: {path}")
    return path


def _load_zeros(path: str):
    """Load plain zero-set CSV/JSON or the offset-form delta variant."""
    _require_file(path)
    with open(path) as fh:
        head = fh.readline()
    if "delta-log3" in head:
        model = zoo.load_delta_csv(path)
        if model.zeros is None:
            raise InputFormatError(
                f"{path}: offset-form points carry im=0; export a shifted model"
            )
        return model.zeros
    return load_zero_set(path)


def _grid_template(config: RunConfig) -> SampledFunction:
    if config.grid is None:
        raise InputFormatError("this command needs --grid t0:h:n")
    t0, h, n = config.grid
    return SampledFunction(t0, h, np.zeros(n))


def cmd_density(config: RunConfig) -> int:
    if not config.zeros_path:
        raise InputFormatError("density needs --zeros PATH")
    if not config.radii:
        raise InputFormatError("density needs --radii r1,r2,...")
    zs = _load_zeros(config.zeros_path)
    profile = upper_density_profile(zs, config.radii)
    lines = ["r,sup_count,density,witness_x"]
    lines += [
        f"{e.r!r},{e.sup_count},{e.density!r},{e.witness!r}" for e in profile.entries
    ]
    _emit("\n".join(lines) + "\n", config.out)
    return EXIT_OK


def cmd_phi(config: RunConfig) -> int:
    template = _grid_template(config)
    ts = template.grid
    if config.zero is not None:
        x, y = config.zero
        if not y > 0:
            raise InputFormatError(f"--zero needs a positive imaginary part, got {y}")
        values = _phi_grid(x, y, ts)
        lines = ["t,phi"]
        lines += [f"{float(t)!r},{float(v)!r}" for t, v in zip(ts, values)]
    elif config.zeros_path:
        zs = _load_zeros(config.zeros_path)
        radius = config.truncation or default_truncation_radius(
            zs, float(np.abs(ts).max())
        )
        lines = ["t,phi_sum,tail_bound"]
        for t in ts:
            r = phi_sum(zs, float(t), radius)
            lines.append(f"{float(t)!r},{r.value!r},{r.tail_bound!r}")
    else:
        raise InputFormatError("phi needs --zero X,Y or --zeros PATH")
    _emit("\n".join(lines) + "\n", config.out)
    return EXIT_OK


def cmd_hilbert(config: RunConfig) -> int:
    if config.input_path:
        f = SampledFunction.from_csv(_require_file(config.input_path))
    elif config.const is not None:
        template = _grid_template(config)
        f = template.like(np.full(template.n, config.const))
    else:
        raise InputFormatError("hilbert needs --input PATH or --const C (with --grid)")
    out = hilbert_transform_sampled(f)
    import io

    buf = io.StringIO()
    out.to_csv(buf)
    _emit(buf.getvalue(), config.out)
    return EXIT_OK


def cmd_bmo(config: RunConfig) -> int:
    if not config.input_path:
        raise InputFormatError("bmo needs --input PATH")
    f = SampledFunction.from_csv(_require_file(config.input_path))
    if config.lengths is None:
        raise InputFormatError("bmo needs --lengths min:max")
    lo, hi = config.lengths
    rep = bmo_estimate(f, lo, hi)
    text = "a,b,mean,oscillation\n" + (
        f"{rep.a!r},{rep.b!r},{rep.mean!r},{rep.oscillation!r}\n"
    )
    _emit(text, config.out)
    return EXIT_OK


def _build_model(config: RunConfig, k: int) -> zoo.ZooModel:
    name = (config.model or "").lower()
    if name == "sine":
        return zoo.sine_type_model(config.shift, truncation=k)
    if name == "example1":
        window = config.truncation or 500.0
        return zoo.shift_to_strip(zoo.referee_example1(k, window), config.shift)
    if name == "example2":
        return zoo.shift_to_strip(zoo.referee_example2(k), config.shift)
    if name == "cluster":
        return zoo.cluster_model(k)
    raise InputFormatError(f"unknown model {config.model!r}")


def cmd_zoo(config: RunConfig) -> int:
    if not config.k_list:
        raise InputFormatError("zoo needs --K N")
    model = _build_model(config, config.k_list[0])
    import io

    buf = io.StringIO()
    if model.delta_points is not None:
        zoo.write_delta_csv(model, buf)
    else:
        save_zero_set(model.zeros, buf, fmt="csv")
    _emit(buf.getvalue(), config.out)
    return EXIT_OK


def cmd_verify_theorem(config: RunConfig) -> int:
    if not config.model:
        raise InputFormatError("verify-theorem needs --model NAME")
    if not config.k_list:
        raise InputFormatError("verify-theorem needs --K k1,k2,...")
    family = [(float(k), _build_model(config, k)) for k in config.k_list]
    rows = theorem_divergence_scan(family)
    control = theorem_divergence_scan(
        [(200.0, zoo.sine_type_model(1.0, truncation=200))]
    )[0]

    lines = ["K,bmo_lower_bound,witness_lo,witness_hi,window_count,tail_bound"]
    lines += [
        f"{r.label!r},{r.bound!r},{r.witness[0]!r},{r.witness[1]!r},"
        f"{r.window_count},{r.tail_bound!r}"
        for r in rows
    ]
    lines.append(f"# control sine-type (N=200) bound: {control.bound!r}")
    _emit("\n".join(lines) + "\n", config.out)

    summary = [
        f"model={config.model} shift={config.shift:g}",
        f"control sine-type bound: {control.bound:.4f}",
    ]
    for thr in config.thresholds:
        crossed = [r.label for r in rows if r.bound >= thr]
        if crossed:
            summary.append(f"threshold {thr:g} crossed at K={crossed[0]:g}")
        else:
            summary.append(f"threshold {thr:g} not crossed")
    print("\n".join(summary), file=sys.stderr)

    for r in rows:
        if r.tail_bound > 0.01 * max(abs(r.bound), 1e-300):
            print(
                f"truncation too aggressive at K={r.label:g}: "
                f"tail {r.tail_bound:g} vs bound {r.bound:g}",
                file=sys.stderr,
            )
            return EXIT_NUMERIC
    return EXIT_OK


COMMANDS = {
    "density": cmd_density,
    "phi": cmd_phi,
    "hilbert": cmd_hilbert,
    "bmo": cmd_bmo,
    "zoo": cmd_zoo,
    "verify-theorem": cmd_verify_theorem,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stripzeros",
        description="Zero densities, argument branches, Hilbert transforms "
        "and BMO lower bounds for strip zero sets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--zeros", dest="zeros_path")
        p.add_argument("--input", dest="input_path")
        p.add_argument("--grid")
        p.add_argument("--radii")
        p.add_argument("--truncation", type=float)
        p.add_argument("--lengths")
        p.add_argument("--thresholds")
        p.add_argument("--model")
        p.add_argument("--K", dest="k_list")
        p.add_argument("--shift", type=float, default=1.0)
        p.add_argument("--zero")
        p.add_argument("--const", type=float)
        p.add_argument("--out")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    zero = None
    if args.zero:
        vals = _parse_floats(args.zero)
        if len(vals) != 2:
            raise InputFormatError(f"--zero needs X,Y, got {args.zero!r}")
        zero = (vals[0], vals[1])
    thresholds = _parse_floats(args.thresholds) if args.thresholds else []
    if any(t <= 0 for t in thresholds) or any(
        b <= a for a, b in zip(thresholds, thresholds[1:])
    ):
        raise InputFormatError(f"thresholds must be positive and increasing, got {thresholds}")
    return RunConfig(
        command=args.command,
        zeros_path=args.zeros_path,
        input_path=args.input_path,
        grid=_parse_grid(args.grid) if args.grid else None,
        radii=_parse_floats(args.radii) if args.radii else [],
        truncation=args.truncation,
        lengths=_parse_pair(args.lengths) if args.lengths else None,
        thresholds=thresholds,
        model=args.model,
        k_list=[int(v) for v in _parse_floats(args.k_list)] if args.k_list else [],
        shift=args.shift,
        zero=zero,
        const=args.const,
        out=args.out,
    )


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
        return COMMANDS[config.command](config)
    except (InputFormatError, FileNotFoundError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PreconditionError as exc:
        print(f"numeric precondition failed: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
