"""Command line front end.

Subcommands:

  coeffs   dump the expansion coefficients at one point
  zeno     single Zeno-parameter evaluation, prints value and regime
  sweep    config-driven grid sweep, CSV/JSON output
  figure   run a bundled figure preset
  oracle   closed form vs truncated-space propagation, comparison report

Exit codes: 0 success, 1 validation or configuration error, 2 I/O error.
Complex quantities are entered as magnitude plus phase, phase in units of pi
(so --delta_phase 1 means a sign flip).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import fields as _dc_fields
from dataclasses import replace

import numpy as np

from .fock import StepControl, WeightedTotal, oracle_zeno
from .coeffs import coeff_l, coeff_p, dump_coeffs
from .params import ValidationError, validate_amplitudes, validate_params
from .sweep import (
    CONFIG_KEYS,
    PRESET_IDS,
    ConfigParse,
    OutputIO,
    SCALAR_KEYS,
    SweepConfig,
    config_from_mapping,
    emit,
    figure_preset,
    load_config,
    point_inputs,
    run_sweep,
    zero_crossings,
)
from .zeno import zeno_linear, zeno_nonlinear, zeno_spontaneous

_SCALAR_DEFAULTS = {
    f.name: f.default for f in _dc_fields(SweepConfig) if f.name in SCALAR_KEYS
}

_ZENO_FNS = {
    "linear": zeno_linear,
    "nonlinear": zeno_nonlinear,
    "spontaneous": zeno_spontaneous,
}


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on bad flags; flag mistakes are validation
    # errors here, so route them through ConfigParse instead
    def error(self, message):
        raise ConfigParse(message)


def _add_scalar_flags(parser: argparse.ArgumentParser) -> None:
    for key in SCALAR_KEYS:
        parser.add_argument(f"--{key}", type=float, default=None, metavar="X")


def _scalars_from_args(args) -> dict:
    scalars = {}
    for key in SCALAR_KEYS:
        value = getattr(args, key)
        scalars[key] = _SCALAR_DEFAULTS[key] if value is None else value
    return scalars


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="zenocoupler", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_coeffs = sub.add_parser("coeffs", help="dump expansion coefficients")
    _add_scalar_flags(p_coeffs)
    p_coeffs.add_argument("--probe-off", action="store_true",
                          help="dump the k = 0 reference coefficients instead")

    p_zeno = sub.add_parser("zeno", help="single Zeno-parameter evaluation")
    _add_scalar_flags(p_zeno)
    p_zeno.add_argument("--variant", choices=sorted(_ZENO_FNS),
                        default="nonlinear")

    p_sweep = sub.add_parser("sweep", help="config-driven sweep")
    p_sweep.add_argument("--config", metavar="PATH",
                         help="flat key=value configuration file")
    p_sweep.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                         dest="assignments",
                         help=f"override any config key ({', '.join(CONFIG_KEYS)})")
    p_sweep.add_argument("--output", metavar="PATH")
    p_sweep.add_argument("--format", choices=("csv", "json"))

    p_fig = sub.add_parser("figure", help="run a bundled figure preset")
    p_fig.add_argument("id", metavar="ID",
                       help=f"one of: {', '.join(PRESET_IDS)}")
    p_fig.add_argument("--output", metavar="PATH")
    p_fig.add_argument("--format", choices=("csv", "json"))

    p_oracle = sub.add_parser(
        "oracle", help="closed form vs direct propagation report")
    _add_scalar_flags(p_oracle)
    p_oracle.add_argument("--variant", choices=sorted(_ZENO_FNS),
                          default="nonlinear")
    p_oracle.add_argument("--kz-max", type=float, default=2.0)
    p_oracle.add_argument("--steps", type=int, default=21)
    p_oracle.add_argument("--m-max", type=int, default=14)
    p_oracle.add_argument("--rtol", type=float, default=1e-10)
    p_oracle.add_argument("--atol", type=float, default=1e-12)
    return parser


def _cmd_coeffs(args, out) -> int:
    scalars = _scalars_from_args(args)
    raw, _, kz = point_inputs(scalars)
    params = validate_params(raw)
    if args.probe_off:
        ps = coeff_p(params, kz)
        for name, v in (("p2", ps.p2), ("p5", ps.p5), ("p6", ps.p6)):
            v = complex(v)
            print(f"{name} = {v.real:.16e} {v.imag:.16e}", file=out)
        warnings = ps.warnings
    else:
        cs = coeff_l(params, kz)
        print(dump_coeffs(cs), file=out)
        warnings = cs.warnings
    for w in warnings:
        print(f"warning: {w}", file=out)
    return 0


def _cmd_zeno(args, out) -> int:
    scalars = _scalars_from_args(args)
    raw, amps, kz = point_inputs(scalars)
    params = validate_params(raw)
    validate_amplitudes(amps)
    result = _ZENO_FNS[args.variant](params, amps, kz)
    print(f"delta_n  = {result.value:.12e}", file=out)
    print(f"regime   = {result.regime}", file=out)
    print(f"variant  = {result.variant}", file=out)
    print(f"residual = {result.residual:.3e}", file=out)
    for w in result.warnings:
        print(f"warning: {w}", file=out)
    return 0


def _finish_sweep(config, args, out) -> int:
    if args.output:
        config = replace(config, output=args.output)
    if args.format:
        config = replace(config, format=args.format)
    for note in config.notes:
        print(f"note: {note}", file=out)
    rows = run_sweep(config)
    emit(config, rows)
    print(f"{len(rows)} rows -> {config.output}", file=out)
    for label, points in zero_crossings(config, rows).items():
        if points:
            where = ", ".join(f"{x:.6f}" for x in points)
            name = label or "sweep"
            print(f"delta_n sign changes ({name}): kz = {where}", file=out)
    return 0


def _cmd_sweep(args, out) -> int:
    overrides = {}
    for item in args.assignments:
        key, sep, value = item.partition("=")
        if not sep:
            raise ConfigParse(f"--set expects KEY=VALUE, got {item!r}")
        overrides[key.strip()] = value.strip()
    if args.config:
        config = load_config(args.config, overrides)
    else:
        for key in overrides:
            if key not in CONFIG_KEYS:
                raise ConfigParse(f"unknown key {key!r}")
        config = config_from_mapping(overrides)
    return _finish_sweep(config, args, out)


def _cmd_figure(args, out) -> int:
    return _finish_sweep(figure_preset(args.id), args, out)


def _cmd_oracle(args, out) -> int:
    scalars = _scalars_from_args(args)
    raw, amps, _ = point_inputs(scalars)
    params = validate_params(raw)
    validate_amplitudes(amps)
    if args.steps < 2:
        raise ConfigParse(f"--steps must be >= 2, got {args.steps}")
    if args.kz_max <= 0:
        raise ConfigParse(f"--kz-max must be > 0, got {args.kz_max}")
    grid = np.linspace(0.0, args.kz_max, args.steps)
    closed_fn = _ZENO_FNS[args.variant]
    closed = np.array([closed_fn(params, amps, kz).value for kz in grid])
    control = StepControl(rtol=args.rtol, atol=args.atol)
    brute = oracle_zeno(params, amps, grid, WeightedTotal(args.m_max), control)

    print(f"{'kz':>10}  {'closed_form':>19}  {'propagated':>19}  {'difference':>12}",
          file=out)
    for kz, c, b in zip(grid, closed, brute):
        print(f"{kz:10.5f}  {c:19.11e}  {b:19.11e}  {c - b:12.3e}", file=out)
    gap = np.abs(closed - brute)
    scale = np.max(np.abs(brute))
    print(f"max |difference| = {np.max(gap):.3e}  "
          f"(max |propagated| = {scale:.3e})", file=out)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    out = sys.stdout
    try:
        args = parser.parse_args(argv)
        handler = {
            "coeffs": _cmd_coeffs,
            "zeno": _cmd_zeno,
            "sweep": _cmd_sweep,
            "figure": _cmd_figure,
            "oracle": _cmd_oracle,
        }[args.command]
        return handler(args, out)
    except (ValidationError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OutputIO, OSError) as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
