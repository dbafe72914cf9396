"""Command-line front end: parameter parsing, orchestration and bit-exact
data export.

Numbers are printed with 17 significant digits and rows in a fixed order,
so identical invocations produce identical bytes; every output embeds its
manifest (command, parameters, version, grids and tolerances) in a comment
header or JSON key.  Wall-clock goes to stderr only, to keep the files
reproducible.

Exit codes: 0 success, 2 parameter error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time

import numpy as np

from . import __version__
from .antiferro import antiferro_diagram, maxwell_alpha0, potential_maxima, maxwell_bias
from .badset import bad_set, transition_times
from .bifurcation import (
    arc_boundary,
    atypicality_margin,
    symmetric_minimizer_locus,
    typical_curve,
)
from .dynamics import gamma_kernel
from .errors import BadPointError, NumericalError
from .oracle import badness_probe, evolved_conditional_all, realize_counts
from .simplex import AprioriParams, Measure3, ModelParams, to_xm
from .statics import (
    amplitude_reference,
    critical_curve,
    exponent_beta,
    exponent_field,
    maximizers,
    pressure,
    stationary_points,
)


class ParameterError(ValueError):
    """Invalid flag combination; reported with exit status 2."""


def _fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _manifest(command: str, args: dict) -> dict:
    return {
        "command": command,
        "params": {k: v for k, v in sorted(args.items())},
        "version": __version__,
    }


def _emit_csv(out, manifest: dict, header: list[str], rows) -> None:
    out.write("# manifest: " + json.dumps(manifest, sort_keys=True) + "\n")
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join(_fmt(v) for v in row) + "\n")


def _emit_json(out, payload: dict) -> None:
    out.write(json.dumps(payload, sort_keys=True, indent=2, default=_fmt) + "\n")


def _parse_measure(text: str) -> Measure3:
    parts = text.split(",")
    if len(parts) != 3:
        raise ParameterError(f"expected three comma-separated masses, got {text!r}")
    try:
        values = [float(p) for p in parts]
    except ValueError as exc:
        raise ParameterError(str(exc)) from exc
    try:
        return Measure3(*values)
    except ValueError as exc:
        raise ParameterError(str(exc)) from exc


def _alpha_from_args(args) -> Measure3:
    if args.alpha is not None:
        return _parse_measure(args.alpha)
    if args.h is not None or args.l is not None:
        if args.h is None or args.l is None:
            raise ParameterError("--h and --l must be given together")
        return AprioriParams(args.h, args.l).to_measure()
    if args.q is not None:
        if args.q <= 0.0:
            raise ParameterError("--q must be positive")
        return Measure3(1.0 / (2.0 + args.q), args.q / (2.0 + args.q), 1.0 / (2.0 + args.q))
    raise ParameterError("an a priori measure is required: --alpha, --q, or --h/--l")


def _point_dict(nu: Measure3) -> dict:
    c = to_xm(nu)
    return {
        "nu_minus": nu.p_minus,
        "nu_zero": nu.p_zero,
        "nu_plus": nu.p_plus,
        "x": c.x,
        "m": c.m,
    }


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_static(args, out) -> None:
    alpha = _alpha_from_args(args)
    params = ModelParams(args.beta, alpha)
    points = stationary_points(params)
    tops = maximizers(params)
    payload = {
        "manifest": _manifest("static", {"beta": args.beta, "alpha": list(alpha.as_array())}),
        "pressure": pressure(params, grid=args.grid),
        "maximizers": [dict(_point_dict(p.nu), kind=p.kind, value=p.value) for p in tops],
        "stationary_points": [
            dict(_point_dict(p.nu), kind=p.kind, value=p.value) for p in points
        ],
    }
    _emit_json(out, payload)


def _cmd_critical_curve(args, out) -> None:
    a = AprioriParams(args.h, args.l)
    half = args.m_grid // 2
    ms = [m for m in np.linspace(-1, 1, 2 * half + 3)[1:-1] if m != 0.0]
    curve = critical_curve(a, ms)
    rows = []
    for (m, beta, x), nu in zip(curve.samples, curve.measures()):
        rows.append((m, beta, x, nu.p_minus, nu.p_zero, nu.p_plus))
    man = _manifest("critical-curve", {"h": args.h, "l": args.l, "m_grid": args.m_grid})
    _emit_csv(out, man, ["m", "beta", "x", "nu_minus", "nu_zero", "nu_plus"], rows)


def _cmd_exponents(args, out) -> None:
    fit_b = exponent_beta(args.q)
    fit_h = exponent_field(args.q)
    payload = {
        "manifest": _manifest("exponents", {"q": args.q}),
        "magnetization_exponent": fit_b.slope,
        "amplitude_squared": fit_b.amplitude,
        "amplitude_squared_reference": amplitude_reference(args.q),
        "field_exponent": fit_h.slope,
    }
    _emit_json(out, payload)


def _cmd_antiferro(args, out) -> None:
    diagram = antiferro_diagram(n_bifurcation=args.n)
    rows = [("bifurcation", ib, a0) for ib, a0 in diagram.bifurcation]
    rows += [("maxwell", ib, a0) for ib, a0 in diagram.maxwell]
    man = _manifest("antiferro", {"n": args.n})
    _emit_csv(out, man, ["set", "inv_beta", "alpha0"], rows)


def _cmd_bad_set(args, out) -> None:
    scanned = bad_set(args.beta, args.t, args.res)
    man = _manifest(
        "bad-set",
        {"beta": args.beta, "t": args.t, "res": args.res},
    )
    man["topology"] = scanned.topology
    man["resolution"] = scanned.resolution
    rows = []
    for cid, comp in enumerate(scanned.components):
        for nu in comp:
            rows.append((cid, nu.p_minus, nu.p_zero, nu.p_plus))
    _emit_csv(out, man, ["component_id", "nu_minus", "nu_zero", "nu_plus"], rows)


def _cmd_transition_times(args, out) -> None:
    if args.beta <= 2.0:
        raise ParameterError("repulsion must exceed 2 for any transition")
    tt = transition_times(args.beta)
    payload = {
        "manifest": _manifest("transition-times", {"beta": args.beta}),
        "beta": args.beta,
        "t1": tt.t1,
        "t2": tt.t2,
        "t3": tt.t3,
        "regime": tt.regime,
    }
    _emit_json(out, payload)


def _cmd_typical_curve(args, out) -> None:
    rows = []
    for nu in typical_curve(args.beta, args.t):
        rows.append(("evolved", nu.p_minus, nu.p_zero, nu.p_plus))
    for nu in typical_curve(args.beta, 0.0):
        rows.append(("static", nu.p_minus, nu.p_zero, nu.p_plus))
    for nu in symmetric_minimizer_locus(args.beta):
        rows.append(("symmetric", nu.p_minus, nu.p_zero, nu.p_plus))
    man = _manifest(
        "typical-curve",
        {"beta": args.beta, "t": args.t, "margin_res": args.margin_res},
    )
    if args.margin_res:
        man["margin"] = atypicality_margin(args.beta, args.t, resolution=args.margin_res)
    _emit_csv(out, man, ["kind", "nu_minus", "nu_zero", "nu_plus"], rows)


def _cmd_boundary(args, out) -> None:
    rows = []
    for nu in arc_boundary(args.beta, args.t, n=args.n):
        rows.append((nu.p_minus, nu.p_zero, nu.p_plus))
    man = _manifest("boundary", {"beta": args.beta, "t": args.t, "n": args.n})
    _emit_csv(out, man, ["nu_minus", "nu_zero", "nu_plus"], rows)


def _cmd_oracle(args, out) -> None:
    alpha = _parse_measure(args.alpha) if args.alpha else Measure3.uniform()
    alpha_f = _parse_measure(args.alpha_f)
    if args.probe:
        n_list = [int(n) for n in args.n_list.split(",")] if args.n_list else [args.N]
        result = badness_probe(args.beta, args.t, alpha_f, n_list, alpha=alpha)
        man = _manifest(
            "oracle-probe",
            {
                "beta": args.beta,
                "t": args.t,
                "alpha_f": list(alpha_f.as_array()),
                "n_list": n_list,
            },
        )
        man["verdict"] = result.verdict
        rows = []
        for s in result.steps:
            u, d = s.conditional_up, s.conditional_down
            rows.append(
                (s.N, s.gap, s.resolution, s.smooth_gap,
                 u.p_minus, u.p_zero, u.p_plus, d.p_minus, d.p_zero, d.p_plus)
            )
        _emit_csv(
            out,
            man,
            ["N", "gap", "resolution", "smooth_gap",
             "up_minus", "up_zero", "up_plus", "down_minus", "down_zero", "down_plus"],
            rows,
        )
        return
    rest = realize_counts(alpha_f, args.N - 1)
    conditional = evolved_conditional_all(args.beta, alpha, args.t, rest)
    try:
        kernel = gamma_kernel(alpha_f, ModelParams(args.beta, alpha), args.t)
        kernel_vals = [kernel.p_minus, kernel.p_zero, kernel.p_plus]
    except BadPointError:
        kernel_vals = ["", "", ""]
    man = _manifest(
        "oracle",
        {
            "N": args.N,
            "beta": args.beta,
            "t": args.t,
            "alpha_f": list(alpha_f.as_array()),
            "alpha": list(alpha.as_array()),
        },
    )
    rows = [
        (eta, [conditional.p_minus, conditional.p_zero, conditional.p_plus][i], kernel_vals[i])
        for i, eta in enumerate((-1, 0, 1))
    ]
    _emit_csv(out, man, ["eta1", "oracle_probability", "kernel_probability"], rows)


def _cmd_maxwell(args, out) -> None:
    if args.beta >= -8.0:
        raise ParameterError("the equal-height line requires beta < -8")
    l_c = maxwell_bias(args.beta)
    tops = potential_maxima(l_c, args.beta)
    payload = {
        "manifest": _manifest("maxwell", {"beta": args.beta}),
        "alpha0": maxwell_alpha0(args.beta),
        "bias": l_c,
        "maxima": [{"x": x, "value": v} for x, v in tops],
    }
    _emit_json(out, payload)


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cwwr",
        description="Curie-Weiss Widom-Rowlinson solver and dynamic analysis",
    )
    parser.add_argument("--out", help="output file (default stdout)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("static", help="pressure, stationary points and maximizers")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--alpha", help="a priori measure as 'minus,zero,plus'")
    p.add_argument("--q", type=float, help="symmetric measure with hole ratio q")
    p.add_argument("--h", type=float, help="field coordinate of the measure")
    p.add_argument("--l", type=float, help="occupation-bias coordinate")
    p.add_argument("--grid", type=int, default=400)
    p.set_defaults(handler=_cmd_static)

    p = sub.add_parser("critical-curve", help="closed-solution curve samples")
    p.add_argument("--h", type=float, required=True)
    p.add_argument("--l", type=float, required=True)
    p.add_argument("--m-grid", type=int, default=200, dest="m_grid")
    p.set_defaults(handler=_cmd_critical_curve)

    p = sub.add_parser("exponents", help="critical-exponent fits")
    p.add_argument("--q", type=float, required=True)
    p.set_defaults(handler=_cmd_exponents)

    p = sub.add_parser("antiferro", help="attractive-regime diagram export")
    p.add_argument("--n", type=int, default=400)
    p.set_defaults(handler=_cmd_antiferro)

    p = sub.add_parser("maxwell", help="equal-height analysis at one beta < -8")
    p.add_argument("--beta", type=float, required=True)
    p.set_defaults(handler=_cmd_maxwell)

    p = sub.add_parser("bad-set", help="scan bad empirical measures")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--res", type=int, default=400)
    p.set_defaults(handler=_cmd_bad_set)

    p = sub.add_parser("transition-times", help="dynamical transition times")
    p.add_argument("--beta", type=float, required=True)
    p.set_defaults(handler=_cmd_transition_times)

    p = sub.add_parser("typical-curve", help="typical measures and margin")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--margin-res", type=int, default=0, dest="margin_res",
                   help="also compute the distance to the bad set at this resolution")
    p.set_defaults(handler=_cmd_typical_curve)

    p = sub.add_parser("boundary", help="sheltering arc of the bad set (one side)")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--n", type=int, default=200)
    p.set_defaults(handler=_cmd_boundary)

    p = sub.add_parser("oracle", help="exact finite-size conditionals")
    p.add_argument("--N", type=int, default=2000)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--alpha-f", required=True, dest="alpha_f",
                   help="conditioning measure as 'minus,zero,plus'")
    p.add_argument("--alpha", help="a priori measure (default uniform)")
    p.add_argument("--probe", action="store_true", help="run the badness probe")
    p.add_argument("--n-list", dest="n_list", help="comma-separated sizes for the probe")
    p.set_defaults(handler=_cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.monotonic()
    try:
        if args.out:
            with open(args.out, "w") as out:
                args.handler(args, out)
        else:
            args.handler(args, sys.stdout)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    print(f"{args.command}: {time.monotonic() - started:.2f}s", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
