"""Command-line entry point: ``btconjugate {dispersion,conjugate,verify}``.

Exit codes: 0 when every check passes, 1 when a check fails, 2 for usage or
configuration errors. A ``--config`` file of ``key=value`` lines supplies
defaults for any flag; flags given on the command line win.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .faults import parse_fault
from .maxwell_conductor import DispersionMismatchError
from .maxwell_vacuum import PolarizationError, TransversalityError, WrongMediumError
from .classical_bt import DomainError
from .scenarios import ClassicalConfig, WaveConfig, run_classical, run_dispersion, run_wave
from .vectors_grid import GridError

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

WAVE_SCENARIOS = ("vacuum", "conductor")
CLASSICAL_SCENARIOS = ("cauchy-riemann", "liouville", "sine-gordon")

CONFIG_ERRORS = (
    TransversalityError,
    WrongMediumError,
    PolarizationError,
    DispersionMismatchError,
    DomainError,
    GridError,
    ValueError,
)


class ConfigError(Exception):
    pass


def _positive(text):
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def _nonnegative(text):
    value = float(text)
    if not value >= 0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {text}")
    return value


def _numbers(count, kind=float):
    def parse(text):
        try:
            parts = [kind(p.strip().replace(" ", "")) for p in text.split(",")]
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected {count} comma-separated numbers, got {text!r}") from None
        if len(parts) != count:
            raise argparse.ArgumentTypeError(f"expected {count} comma-separated numbers, got {text!r}")
        return tuple(parts)

    return parse


def _fault(text):
    try:
        parse_fault(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return text


def _bool(text):
    if isinstance(text, bool):
        return text
    lowered = str(text).strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off", ""):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text!r}")


def _add_common(p):
    p.add_argument("--json", metavar="PATH", help="write the report bundle as JSON")
    p.add_argument("--csv", metavar="PATH", help="write sampled fields as CSV")
    p.add_argument("-q", "--quiet", action="store_true", help="suppress the printed summary")
    p.add_argument("--config", metavar="PATH", help="key=value file with default flag values")


def _add_medium(p):
    p.add_argument("--omega", type=_positive, default=1.0, help="angular frequency")
    p.add_argument("--eps", type=_positive, default=1.0, help="permittivity")
    p.add_argument("--mu", type=_positive, default=1.0, help="permeability")
    p.add_argument("--sigma", type=_nonnegative, default=0.0, help="conductivity")


def _add_wave(p):
    p.add_argument("--E0", type=_numbers(3, complex), default=(1.0, 0.0, 0.0),
                   help="complex amplitude, e.g. '1,0.5j,0'")
    p.add_argument("--khat", type=_numbers(3), default=(0.0, 0.0, 1.0), help="unit propagation direction")
    p.add_argument("--alpha", type=float, default=0.0, help="global phase of the amplitude")
    p.add_argument("--project", type=_bool, nargs="?", const=True, default=False,
                   help="remove the longitudinal part of E0 instead of failing")
    p.add_argument("--points", type=int, default=9, help="nodes per axis")
    p.add_argument("--divisions", type=int, default=8, help="export grid step = wavelength/divisions")
    p.add_argument("--center", type=_numbers(3), default=(0.0, 0.0, 0.0))
    p.add_argument("--t-center", type=float, default=0.0)
    p.add_argument("--levels", type=int, default=4, help="grid levels in the convergence study")
    p.add_argument("--break-pair", type=_fault, default=None, metavar="FAULT",
                   help="inject a fault: scale-B:<f>, scale-k:<f> or zero-s")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="btconjugate", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dispersion", help="solve the conductor dispersion system")
    _add_common(p)
    _add_medium(p)

    p = sub.add_parser("conjugate", help="build a conjugate (E, B) plane-wave pair and export it")
    _add_common(p)
    p.add_argument("--scenario", choices=WAVE_SCENARIOS, default="vacuum")
    _add_medium(p)
    _add_wave(p)

    p = sub.add_parser("verify", help="run the residual and convergence suite for a scenario")
    _add_common(p)
    p.add_argument("--scenario", choices=WAVE_SCENARIOS + CLASSICAL_SCENARIOS, default="vacuum")
    _add_medium(p)
    _add_wave(p)
    p.add_argument("--C", type=float, default=None, help="integration constant of the generated solution")
    p.add_argument("--a", type=float, default=2.0, help="sine-Gordon BT parameter")
    p.add_argument("--laplace", type=_numbers(3), default=(1.0, 0.0, 0.0), metavar="ALPHA,BETA,GAMMA",
                   help="parameters of u = alpha (x^2 - y^2) + beta x + gamma y")
    p.add_argument("--box", type=_numbers(4), default=(-1.0, -1.0, 1.0, 1.0), metavar="X0,T0,X1,T1")
    p.add_argument("--n", type=int, default=11, help="sample points per axis of the 2-D box")
    p.add_argument("--h0", type=_positive, default=1e-2, help="coarsest mixed-partial step")
    return parser


def read_config(path) -> dict:
    """Parse ``key=value`` lines; ``#`` starts a comment, dashes equal underscores."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        out[key.strip().lstrip("-").replace("-", "_")] = value.strip()
    return out


def _subparser(parser, name):
    action = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    return action.choices[name]


def parse_args(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        sub = _subparser(parser, args.command)
        known = {a.dest for a in sub._actions} - {"help", "config"}
        try:
            values = read_config(args.config)
        except OSError as exc:
            parser.error(f"cannot read config: {exc}")
        except ConfigError as exc:
            parser.error(str(exc))
        unknown = sorted(set(values) - known)
        if unknown:
            parser.error(f"unknown config keys for '{args.command}': {', '.join(unknown)}")
        # string defaults are run through each option's type converter
        sub.set_defaults(**values)
        for action in sub._actions:
            if action.dest in values and isinstance(action, argparse._StoreTrueAction):
                sub.set_defaults(**{action.dest: _bool(values[action.dest])})
        args = parser.parse_args(argv)
    return parser, args


def _wave_config(args) -> WaveConfig:
    return WaveConfig(
        scenario=args.scenario, E0=args.E0, khat=args.khat, omega=args.omega, eps=args.eps,
        mu=args.mu, sigma=args.sigma, alpha=args.alpha, project=args.project, points=args.points,
        divisions=args.divisions, center=args.center, t_center=args.t_center, levels=args.levels,
        fault=args.break_pair,
    )


def _classical_config(args) -> ClassicalConfig:
    C = args.C
    if C is None:
        C = 2.0 if args.scenario == "liouville" else 1.0
    return ClassicalConfig(
        scenario=args.scenario, C=C, a=args.a, alpha=args.laplace[0], beta=args.laplace[1],
        gamma=args.laplace[2], box=args.box, n=args.n, h0=args.h0,
    )


def _print_bundle(bundle, out):
    d = bundle.dispersion
    if d:
        print(f"k = {d['k']:.10g}  s = {d['s']:.10g}  phi = {d['phi']:.10g}", file=out)
    for c in bundle.checks:
        flag = "ok  " if c.passed else "FAIL"
        slope = c.extra.get("slope")
        if slope is None:
            print(f"[{flag}] {c.name}: {c.max:.3e} (tol {c.tolerance:.1e})", file=out)
        else:
            shown = slope if isinstance(slope, str) else f"{slope:.4f}"
            print(f"[{flag}] {c.name}: slope {shown} (target {c.extra['target_slope']} "
                  f"+/- {c.tolerance}), finest max {c.max:.3e}", file=out)
    print(f"verdict: {bundle.verdict}", file=out)


def main(argv=None) -> int:
    parser, args = parse_args(argv)
    try:
        if args.command == "dispersion":
            bundle = run_dispersion(args.omega, args.eps, args.mu, args.sigma)
        elif args.command == "conjugate":
            bundle = run_wave(_wave_config(args), csv_path=args.csv)
        elif args.scenario in WAVE_SCENARIOS:
            bundle = run_wave(_wave_config(args), csv_path=args.csv)
        else:
            bundle = run_classical(_classical_config(args))
    except CONFIG_ERRORS as exc:
        print(f"btconjugate: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.json:
        bundle.write_json(args.json)
    if not args.quiet:
        _print_bundle(bundle, sys.stdout)
    return EXIT_PASS if bundle.verdict == "pass" else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
