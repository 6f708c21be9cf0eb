"""glrg command-line front end.

usage:
  glrg fixed-point --D 3 [--magnetic]
  glrg bubble --D 3 --film --L 1 --decompose
  glrg bubble --D 3.5 --wire --L 1 --L 2 --p 0.5
  glrg epstein --nu 2 --L 1 --L 1 [--c2 0.25] [--method direct|bessel|recurrence|renormalized]
  glrg flow --g0 0.1 --D 3 --t0 0 --t1 -20 --steps 200 --format csv
  glrg validate --fast | --full

Exit codes: 0 success, 1 validation failure, 2 usage or domain error.
A flat key=value config file named by $GLRG_CONFIG supplies defaults for
rel_tol, max_terms, quadrature_level, format and out; flags override it.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import asdict, dataclass
from typing import Optional

from . import __version__
from .bubble import Geometry, pi_compactified, small_p_decomposition
from .epstein import (
    EpsteinSpec,
    HurwitzSpec,
    TruncationPolicy,
    e2_laurent_at_3,
    e3_laurent_at_3,
    epstein_direct,
    epstein_recurrence,
    hurwitz_bessel,
    hurwitz_direct,
)
from .errors import (
    BudgetExceededError,
    ConvergenceError,
    DomainError,
    FlowBlowUpError,
    PoleError,
)
from .flow import MAGNETIC, ZERO_FIELD, fixed_point_magnetic, fixed_point_zero_field, integrate_flow
from .magnetic import FieldSpec, pi_magnetic, pi_magnetic_decomposition
from .quadrature import DEFAULT_LEVEL, MAX_LEVEL, MIN_LEVEL

TOOL_VERSION = f"glrg {__version__}"
CONFIG_ENV = "GLRG_CONFIG"
CONFIG_KEYS = ("rel_tol", "max_terms", "quadrature_level", "format", "out")


@dataclass(frozen=True)
class RunConfig:
    rel_tol: float = 1e-12
    max_terms: int = 10**6
    quadrature_level: int = DEFAULT_LEVEL
    output_format: str = "json"
    output_path: Optional[str] = None

    def __post_init__(self):
        if not MIN_LEVEL <= self.quadrature_level <= MAX_LEVEL:
            raise DomainError(f"quadrature_level must lie in [{MIN_LEVEL}, {MAX_LEVEL}]")
        if self.output_format not in ("json", "csv"):
            raise DomainError("format must be json or csv")
        self.policy()

    def policy(self):
        return TruncationPolicy(rel_tol=self.rel_tol, max_terms_per_axis=self.max_terms,
                                min_terms=min(8, self.max_terms))


@dataclass
class ResultRecord:
    command: str
    inputs: dict
    values: dict
    error_estimate: float = 0.0
    representation: str = "closed-form"
    tool_version: str = TOOL_VERSION

    def add(self, name, value, unit):
        self.values[name] = {"value": float(value), "unit": unit}


def read_config(path):
    """Parse a flat key=value file; '#' starts a comment."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in CONFIG_KEYS:
                raise DomainError(f"{path}:{lineno}: unknown key {key!r}")
            out[key] = value
    return out


def build_config(args):
    settings = {}
    path = os.environ.get(CONFIG_ENV)
    if path:
        settings.update(read_config(path))
    for key in CONFIG_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            settings[key] = flag
    return RunConfig(
        rel_tol=float(settings.get("rel_tol", 1e-12)),
        max_terms=int(settings.get("max_terms", 10**6)),
        quadrature_level=int(settings.get("quadrature_level", DEFAULT_LEVEL)),
        output_format=str(settings.get("format", "json")),
        output_path=settings.get("out") or None,
    )


# -- commands --------------------------------------------------------------------

def _geometry(args):
    lengths = tuple(args.L or ())
    d = args.d
    for flag, n in (("film", 1), ("wire", 2), ("grain", 3)):
        if getattr(args, flag):
            if d is not None and d != n:
                raise DomainError(f"--{flag} conflicts with --d {d}")
            d = n
    if d is None:
        d = len(lengths)
    if len(lengths) != d:
        raise DomainError(f"geometry with d={d} needs exactly {d} --L values, got {len(lengths)}")
    return Geometry(lengths)


def cmd_fixed_point(args, cfg):
    regime = MAGNETIC if args.magnetic else ZERO_FIELD
    rep = fixed_point_magnetic(args.D) if args.magnetic else fixed_point_zero_field(args.D)
    inputs = {"D": args.D, "regime": regime}
    if args.magnetic:
        inputs["omega"] = args.omega
    rec = ResultRecord("fixed-point", inputs, {})
    rec.add("g_star", rep.g_star, "dimensionless")
    rec.add("stability_slope", rep.stability_slope, "dimensionless")
    rec.add("ir_stable", 1.0 if rep.ir_stable else 0.0, "boolean")
    rec.add("window_low", rep.dimension_window[0], "dimension")
    rec.add("window_high", rep.dimension_window[1], "dimension")
    return [rec]


def cmd_bubble(args, cfg):
    geom = _geometry(args)
    policy = cfg.policy()
    D = args.D
    inputs = {"D": D, "d": geom.d, "L": list(geom.lengths), "p": args.p,
              "magnetic": bool(args.magnetic), "decompose": bool(args.decompose)}
    if args.magnetic:
        inputs["omega"] = args.omega
    shift = 6.0 if args.magnetic else 4.0
    value_unit = f"length^{shift - D:g}"
    rec = ResultRecord("bubble", inputs, {})
    if args.decompose:
        if args.magnetic:
            res = pi_magnetic_decomposition(D, geom, args.p, policy)
            rec.add("A1", res.a1_coeff, "dimensionless")
            rec.add("C", res.c_coeff, value_unit)
        else:
            res = small_p_decomposition(D, geom, args.p, policy)
            rec.add("A", res.a_coeff, "dimensionless")
            rec.add("B", res.b_coeff, value_unit)
        rec.representation = "small-p-decomposition"
        rec.error_estimate = cfg.rel_tol * max(abs(v["value"]) for v in rec.values.values())
    else:
        if args.p is None:
            raise DomainError("bubble needs --p unless --decompose is given")
        if args.magnetic:
            res = pi_magnetic(args.p, D, geom, policy, cfg.quadrature_level)
        else:
            res = pi_compactified(args.p, D, geom, policy, cfg.quadrature_level)
        rec.add("zero_mode_coeff", res.zero_mode_coeff, f"length^{-geom.d:g}")
        rec.add("zero_mode_exponent", res.zero_mode_exponent, "dimensionless")
        rec.representation = "full-sum"
        rec.error_estimate = res.error_estimate
    if res.value is not None:
        rec.add("Pi", res.value, value_unit)
        if args.lambda0 is not None:
            # transverse momenta p1 = p2 = 0, so the Gaussian factor is 1
            weight = FieldSpec(args.omega).omega if args.magnetic else 1.0
            lam = args.lambda0 / (1.0 + args.lambda0 * weight * res.value)
            inputs["lambda0"] = args.lambda0
            rec.add("lambda", lam, f"length^{D - shift:g}")
    return [rec]


def cmd_epstein(args, cfg):
    policy = cfg.policy()
    lengths = tuple(args.L or ())
    if not lengths:
        raise DomainError("epstein needs at least one --L")
    inputs = {"nu": args.nu, "L": list(lengths), "c2": args.c2, "method": args.method}
    rec = ResultRecord("epstein", inputs, {})
    rec.representation = args.method
    if args.method == "renormalized":
        if len(lengths) == 2:
            lr = e2_laurent_at_3(*lengths, policy=policy)
        elif len(lengths) == 3:
            lr = e3_laurent_at_3(*lengths, policy=policy)
        else:
            raise DomainError("renormalized D=3 values need 2 or 3 lengths")
        inputs["nu"] = None
        rec.add("finite_part", lr.finite, f"length^{-1:g}")
        rec.add("residue_in_D_minus_3", lr.residue, f"length^{-1:g}")
        rec.error_estimate = cfg.rel_tol * abs(lr.finite)
        return [rec]
    if args.nu is None:
        raise DomainError("epstein needs --nu")
    unit = f"length^{-2 * args.nu:g}"
    if args.c2 is not None:
        spec = HurwitzSpec.from_lengths(args.nu, lengths, args.c2)
        if args.method == "direct":
            res = hurwitz_direct(spec, policy, full_output=True)
            value, err = res.value, res.error
        elif args.method == "bessel":
            value = hurwitz_bessel(spec, policy)
            err = cfg.rel_tol * abs(value)
        else:
            raise DomainError("Hurwitz sums support --method direct or bessel")
        rec.add("Z", value, "dimensionless")
    else:
        spec = EpsteinSpec(args.nu, lengths)
        if args.method == "direct":
            res = epstein_direct(spec, policy, full_output=True)
            value, err = res.value, res.error
        elif args.method in ("recurrence", "bessel"):
            value = epstein_recurrence(spec, policy)
            err = cfg.rel_tol * abs(value)
            rec.representation = "recurrence"
        else:
            raise DomainError(f"unknown method {args.method}")
        rec.add("E", value, unit)
    rec.error_estimate = float(err)
    return [rec]


def cmd_flow(args, cfg):
    regime = MAGNETIC if args.magnetic else ZERO_FIELD
    states = integrate_flow(args.g0, args.D, regime, (args.t0, args.t1), args.steps)
    inputs = {"g0": args.g0, "D": args.D, "regime": regime, "t0": args.t0, "t1": args.t1,
              "steps": args.steps}
    out = []
    for s in states:
        rec = ResultRecord("flow", dict(inputs), {}, representation="rk45")
        rec.add("t", s.t, "ln(length^-1)")
        rec.add("g", s.g, "dimensionless")
        rec.add("beta", s.beta, "dimensionless")
        rec.add("scale", s.scale, "length^-1")
        rec.error_estimate = 1e-12 * abs(s.g)
        out.append(rec)
    return out


def cmd_validate(args, cfg):
    from .validation import run_all

    results = run_all(full=args.full, tol_scale=args.tol_scale, numbers=args.criteria)
    for r in results:
        print(r.line(), file=sys.stderr)
    records = []
    for r in results:
        rec = ResultRecord("validate", {"level": "full" if args.full else "fast",
                                        "tol_scale": args.tol_scale,
                                        "criterion": r.number, "name": r.name}, {},
                           representation="acceptance")
        rec.add("passed", 1.0 if r.passed else 0.0, "boolean")
        rec.add("seconds", r.seconds, "second")
        records.append(rec)
    failed = [r for r in results if not r.passed]
    for r in failed:
        print(f"failing invariant: {r.number} {r.name}", file=sys.stderr)
    return records, (1 if failed else 0)


# -- output ------------------------------------------------------------------------

def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return format(v, ".17g")
    if isinstance(v, (list, tuple)):
        return " ".join(_fmt(x) for x in v)
    return str(v)


def render(records, fmt):
    if fmt == "json":
        return json.dumps([asdict(r) for r in records], indent=2) + "\n"
    in_keys, val_keys = [], []
    for r in records:
        in_keys += [k for k in r.inputs if k not in in_keys]
        val_keys += [k for k in r.values if k not in val_keys]
    units = {}
    for r in records:
        for k, v in r.values.items():
            units.setdefault(k, v["unit"])
    header = (["command", "representation"] + in_keys
              + [f"{k}[{units[k]}]" for k in val_keys] + ["error_estimate", "tool_version"])
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in records:
        row = [r.command, r.representation]
        row += [_fmt(r.inputs.get(k)) for k in in_keys]
        row += [_fmt(r.values[k]["value"]) if k in r.values else "" for k in val_keys]
        row += [_fmt(float(r.error_estimate)), r.tool_version]
        w.writerow(row)
    return buf.getvalue()


# -- argument parsing -----------------------------------------------------------------

def _common(p):
    p.add_argument("--rel-tol", dest="rel_tol", type=float)
    p.add_argument("--max-terms", dest="max_terms", type=int)
    p.add_argument("--quadrature-level", dest="quadrature_level", type=int)
    p.add_argument("--format", choices=("json", "csv"))
    p.add_argument("--out", metavar="PATH")


def _geometry_flags(p):
    p.add_argument("--d", type=int, choices=(1, 2, 3))
    g = p.add_mutually_exclusive_group()
    g.add_argument("--film", action="store_true")
    g.add_argument("--wire", action="store_true")
    g.add_argument("--grain", action="store_true")
    p.add_argument("--L", type=float, nargs="+", action="extend", metavar="LENGTH")


def build_parser():
    parser = argparse.ArgumentParser(prog="glrg", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=TOOL_VERSION)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fixed-point", help="infrared-stable fixed point g*")
    p.add_argument("--D", type=float, required=True)
    p.add_argument("--magnetic", action="store_true")
    p.add_argument("--omega", type=float, default=1.0)
    _common(p)

    p = sub.add_parser("bubble", help="one-loop bubble, full sum or small-p form")
    p.add_argument("--D", type=float, required=True)
    _geometry_flags(p)
    p.add_argument("--p", type=float)
    p.add_argument("--decompose", action="store_true")
    p.add_argument("--magnetic", action="store_true")
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--lambda0", type=float)
    _common(p)

    p = sub.add_parser("epstein", help="Epstein and Epstein-Hurwitz zeta values")
    p.add_argument("--nu", type=float)
    p.add_argument("--L", type=float, nargs="+", action="extend", metavar="LENGTH")
    p.add_argument("--c2", type=float)
    p.add_argument("--method", default="direct",
                   choices=("direct", "bessel", "recurrence", "renormalized"))
    _common(p)

    p = sub.add_parser("flow", help="integrate dg/dln|p| = beta(g)")
    p.add_argument("--g0", type=float, required=True)
    p.add_argument("--D", type=float, required=True)
    p.add_argument("--magnetic", action="store_true")
    p.add_argument("--t0", type=float, default=0.0)
    p.add_argument("--t1", type=float, default=-20.0)
    p.add_argument("--steps", type=int, default=200)
    _common(p)

    p = sub.add_parser("validate", help="run the acceptance criteria")
    lvl = p.add_mutually_exclusive_group()
    lvl.add_argument("--fast", action="store_true")
    lvl.add_argument("--full", action="store_true")
    p.add_argument("--tol-scale", dest="tol_scale", type=float, default=1.0,
                   help="multiply every tolerance (0 forces failures)")
    p.add_argument("--criteria", type=int, nargs="+", metavar="N",
                   help="run only these numbered criteria")
    _common(p)
    return parser


COMMANDS = {
    "fixed-point": cmd_fixed_point,
    "bubble": cmd_bubble,
    "epstein": cmd_epstein,
    "flow": cmd_flow,
    "validate": cmd_validate,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    try:
        cfg = build_config(args)
        result = COMMANDS[args.command](args, cfg)
    except (DomainError, PoleError, ConvergenceError, BudgetExceededError, FlowBlowUpError,
            OSError) as exc:
        print(f"glrg {args.command}: error: {exc}", file=sys.stderr)
        return 2
    records, code = result if isinstance(result, tuple) else (result, 0)
    text = render(records, cfg.output_format)
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()

