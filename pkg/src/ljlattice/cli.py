"""Command-line interface.

Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 convergence
failure, 4 I/O error.  Angles are given in degrees.
"""

from __future__ import annotations

import argparse
import dataclasses
import enum
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import analysis, energy, lattice, optimize, sums, verify
from .constants import REFERENCES, TABLE_VERSION
from .errors import ConvergenceError

__all__ = ["CommandResult", "OPERATIONS", "build_parser", "main", "to_jsonable", "format_csv"]

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_CONVERGENCE, EXIT_IO = 0, 1, 2, 3, 4

# library operation -> (subcommand, example argv reaching it)
OPERATIONS: dict[str, tuple[str, list[str]]] = {
    "make_lattice": ("lattice", ["lattice", "--len-u", "1", "--len-v", "1.2", "--angle-deg", "75"]),
    "reduce_basis": ("lattice", ["lattice", "--len-u", "2.2360679775", "--len-v", "1.41421356237", "--angle-deg", "18.4349488229"]),
    "quadratic_form": ("lattice", ["lattice", "--square", "1"]),
    "scale": ("lattice", ["lattice", "--square", "1", "--scale", "2"]),
    "triangular": ("lattice", ["lattice", "--triangular", "1"]),
    "from_fixed_area_chart": ("lattice", ["lattice", "--chart-u", "1.02", "--chart-v", "1.05", "--area", "1"]),
    "theta": ("sums", ["sums", "theta", "--at", "1", "--square", "1"]),
    "theta_normalized": ("sums", ["sums", "theta-normalized", "--at", "1", "--triangular", "2"]),
    "epstein_zeta_direct": ("sums", ["sums", "zeta-direct", "--at", "6", "--square", "1"]),
    "epstein_zeta_accelerated": ("sums", ["sums", "zeta-accelerated", "--at", "6", "--square", "1"]),
    "gaussian_sum": ("sums", ["sums", "gaussian", "--at", "0.5", "--square", "1"]),
    "bessel_k0": ("sums", ["sums", "k0", "--at", "1"]),
    "bessel_k0_laplace": ("sums", ["sums", "k0-laplace", "--at", "1"]),
    "lj_potential": ("energy", ["energy", "--pair-distance", "1.1"]),
    "lj_energy": ("energy", ["energy", "--triangular", "1"]),
    "pair_energy": ("energy", ["energy", "--square", "1", "--potential", "power", "--n", "10", "--p", "4"]),
    "tf_energy": ("energy", ["energy", "--triangular", "1", "--potential", "tf"]),
    "energy_under_scaling": ("energy", ["energy", "--triangular", "1", "--scale", "0.95"]),
    "g_cert": ("analyze", ["analyze", "gcert", "--area", "0.6", "--alpha", "1.5"]),
    "ratio_function": ("analyze", ["analyze", "ratio", "--chart-u", "1.014", "--chart-v", "1.014"]),
    "ratio_infimum_scan": ("analyze", ["analyze", "ratio-scan", "--grid-step", "0.01"]),
    "critical_point_check": ("analyze", ["analyze", "critical", "--square", "1", "--chart", "angle"]),
    "global_identity_check": ("analyze", ["analyze", "identity", "--triangular", "0.8491235647297702"]),
    "riemann_constant": ("analyze", ["analyze", "riemann", "--area", "1"]),
    "sufficient_condition": ("bounds", ["bounds", "threshold", "--area", "0.6"]),
    "blanc_bound": ("bounds", ["bounds", "blanc"]),
    "optimal_triangular_area": ("bounds", ["bounds", "a0"]),
    "crossover_area": ("bounds", ["bounds", "crossover"]),
    "minimize_fixed_area": ("minimize", ["minimize", "--area", "0.6"]),
    "minimize_global": ("minimize", ["minimize", "--global"]),
    "scaling_minimize": ("minimize", ["minimize", "--scaling", "--triangular", "1"]),
    "levelset": ("levelset", ["levelset", "--area", "1", "--step", "0.04", "--out", "{tmp}/grid.csv"]),
}


@dataclass
class CommandResult:
    status: str  # "ok" or "error"
    payload: dict
    diagnostics: list[str] = field(default_factory=list)
    text: str = ""

    @property
    def exit_code(self) -> int:
        return EXIT_OK if self.status == "ok" else EXIT_VERIFY


class UsageError(Exception):
    pass


# -- serialization -----------------------------------------------------------------


def to_jsonable(obj: Any):
    """Plain JSON types; non-finite floats become ``None``."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else None
    return obj


def _lattice_payload(lat: lattice.BravaisLattice) -> dict:
    return {
        "len_u": lat.len_u,
        "len_v": lat.len_v,
        "angle": lat.angle,
        "angle_deg": math.degrees(lat.angle),
        "area": lat.area,
    }


def _g17(x: float) -> str:
    return format(x, ".17g")


def format_csv(grid: optimize.LevelSetGrid) -> str:
    lines = ["u,v,value,valid"]
    for u, v, value, ok in grid.rows():
        lines.append(f"{_g17(u)},{_g17(v)},{_g17(value) if ok else ''},{int(ok)}")
    return "\n".join(lines) + "\n"


def _text(payload: dict, indent: str = "") -> str:
    out = []
    for k, v in payload.items():
        if isinstance(v, dict):
            out.append(f"{indent}{k}:")
            out.append(_text(v, indent + "  "))
        else:
            out.append(f"{indent}{k}: {v!r}" if isinstance(v, float) else f"{indent}{k}: {v}")
    return "\n".join(out)


# -- argument helpers ------------------------------------------------------------------


def _add_lattice_args(p: argparse.ArgumentParser, chart: bool = False):
    g = p.add_argument_group("lattice")
    g.add_argument("--len-u", type=float)
    g.add_argument("--len-v", type=float)
    g.add_argument("--angle-deg", type=float)
    g.add_argument("--triangular", type=float, metavar="AREA")
    g.add_argument("--square", type=float, metavar="AREA")
    if chart:
        g.add_argument("--chart-u", type=float, help="basis length, area-fixed chart")
        g.add_argument("--chart-v", type=float)
        g.add_argument("--area", type=float, default=1.0)


def _lattice_from(args, required: bool = True, chart_spec: bool = False):
    lengths = [args.len_u, args.len_v, args.angle_deg]
    chart = [args.chart_u, args.chart_v] if chart_spec else [None, None]
    given = [
        any(x is not None for x in lengths),
        args.triangular is not None,
        args.square is not None,
        any(x is not None for x in chart),
    ]
    if sum(given) > 1:
        raise UsageError("give exactly one of --len-u/--len-v/--angle-deg, --triangular, --square, --chart-u/--chart-v")
    if not any(given):
        if required:
            raise UsageError("a lattice is required")
        return None
    if given[0]:
        if any(x is None for x in lengths):
            raise UsageError("--len-u, --len-v and --angle-deg go together")
        return lattice.make_lattice(args.len_u, args.len_v, math.radians(args.angle_deg))
    if given[1]:
        return lattice.triangular(args.triangular)
    if given[2]:
        return lattice.square(args.square)
    if any(x is None for x in chart):
        raise UsageError("--chart-u and --chart-v go together")
    return lattice.from_fixed_area_chart(lattice.FixedAreaPoint(chart[0], chart[1], args.area))


def _add_potential_args(p: argparse.ArgumentParser):
    p.add_argument("--potential", choices=["lj", "tf", "power"], default="lj")
    p.add_argument("--k1", type=float, default=1.0)
    p.add_argument("--n", type=float, default=12.0)
    p.add_argument("--k2", type=float, default=2.0)
    p.add_argument("--p", type=float, default=6.0)


def _potential_from(args) -> energy.PotentialSpec:
    if args.potential == "lj":
        return energy.LENNARD_JONES
    if args.potential == "tf":
        return energy.THOMAS_FERMI
    return energy.PotentialSpec.inverse_power(args.k1, args.n, args.k2, args.p)


def _ctl(args) -> sums.SumControl:
    return sums.SumControl(rel_tol=args.rel_tol)


# -- commands ----------------------------------------------------------------------------


def cmd_lattice(args) -> CommandResult:
    lat = _lattice_from(args, chart_spec=True)
    if args.scale is not None:
        lat = lattice.scale(lat, args.scale)
    q = lattice.quadratic_form(lat)
    u, v = lattice.chart_coordinates(lat)
    cls, _ = optimize.classify(lat)
    payload = {
        "lattice": _lattice_payload(lat),
        "form": {"a": q.a, "b": q.b, "c": q.c, "disc": q.disc},
        "min_distance": lat.min_distance,
        "chart_u": u,
        "chart_v": v,
        "classification": cls.value,
    }
    return CommandResult("ok", payload)


def cmd_sums(args) -> CommandResult:
    ctl = _ctl(args)
    x = args.at
    kind = args.kind
    payload: dict = {"kind": kind, "at": x}
    if kind in ("k0", "k0-laplace"):
        fn = sums.bessel_k0 if kind == "k0" else sums.bessel_k0_laplace
        payload["value"] = fn(x, ctl)
        return CommandResult("ok", payload)
    lat = _lattice_from(args)
    payload["lattice"] = _lattice_payload(lat)
    if kind == "theta":
        payload["value"] = sums.theta(lat, x, ctl)
    elif kind == "theta-normalized":
        payload["value"] = sums.theta_normalized(sums.normalized_form(lat), x, ctl)
    elif kind == "zeta-direct":
        payload["value"] = sums.epstein_zeta_direct(lat, x, ctl)
    elif kind == "zeta-accelerated":
        payload["value"] = sums.epstein_zeta_accelerated(lat, x, ctl)
    else:
        payload["value"] = sums.gaussian_sum(lat, x, ctl)
    return CommandResult("ok", payload)


def cmd_energy(args) -> CommandResult:
    spec = _potential_from(args)
    ctl = _ctl(args)
    if args.pair_distance is not None:
        r = args.pair_distance
        value = energy.lj_potential(r) if spec.kind is energy.PotentialKind.LENNARD_JONES else float(spec(r))
        return CommandResult("ok", {"potential": spec.kind.value, "r": r, "value": value})
    lat = _lattice_from(args)
    payload: dict = {"potential": spec.kind.value}
    if spec.kind is energy.PotentialKind.THOMAS_FERMI:
        if args.scale is not None:
            raise UsageError("--scale is available for Lennard-Jones only")
        payload["energy"] = energy.tf_energy(lat, ctl)
    elif spec.kind is energy.PotentialKind.INVERSE_POWER_PAIR:
        if args.scale is not None:
            raise UsageError("--scale is available for Lennard-Jones only")
        zn, zp = energy.zeta_values(lat, (spec.n_exp, spec.p_exp), ctl)
        payload.update(energy=energy.pair_energy(lat, spec, ctl), zeta_n=zn, zeta_p=zp, n=spec.n_exp, p=spec.p_exp)
    else:
        z12, z6 = energy.zeta_values(lat, (12.0, 6.0), ctl)
        if args.scale is not None:
            payload.update(energy=energy.energy_under_scaling(lat, args.scale, ctl), scale=args.scale)
        else:
            payload["energy"] = energy.lj_energy(lat, ctl)
        payload.update(zeta6=z6, zeta12=z12)
    payload["lattice"] = _lattice_payload(lat)
    return CommandResult("ok", payload)


def _report_payload(rep: optimize.MinimizationReport) -> dict:
    out = {
        "classification": rep.classification.value,
        "energy": rep.energy,
        "argmin": _lattice_payload(rep.argmin),
        "chart_point": list(rep.chart_point),
        "grid_best": [rep.grid_best.len_u, rep.grid_best.len_v],
        "grid_energy": rep.grid_energy,
        "refine_iterations": rep.refine_iterations,
        "objective": rep.objective,
    }
    if rep.certificate is not None:
        out["certificate"] = to_jsonable(rep.certificate)
    if rep.identity is not None:
        out["identity"] = to_jsonable(rep.identity)
    if rep.notes:
        out["notes"] = to_jsonable(rep.notes)
    return out


def cmd_minimize(args) -> CommandResult:
    ctl = _ctl(args)
    diags = []
    if args.scaling:
        if args.potential != "lj":
            raise UsageError("--scaling is defined for Lennard-Jones only")
        lat = _lattice_from(args)
        r, e = optimize.scaling_minimize(lat, ctl)
        return CommandResult("ok", {"scale": r, "energy": e, "lattice": _lattice_payload(lattice.scale(lat, r))})
    if args.glob:
        if args.potential != "lj":
            raise UsageError("--global is defined for Lennard-Jones only")
        rep = optimize.minimize_global(ctl)
        diags.append(
            "observation: the global minimizer found is "
            f"{rep.classification.value}; optimality of the best triangular lattice is conjectural, not asserted"
        )
        return CommandResult("ok", _report_payload(rep), diags)
    if args.area is None:
        raise UsageError("give --area A, --global or --scaling")
    objective = _potential_from(args) if args.objective is None else args.objective
    rep = optimize.minimize_fixed_area(
        args.area, objective, ctl, step=args.step, u_range=(args.u_min, args.u_max), v_range=(args.v_min, args.v_max)
    )
    if rep.classification is optimize.Classification.SQUARE:
        diags.append("observation: square optimality at this area is conjectural, not asserted")
    return CommandResult("ok", _report_payload(rep), diags)


def cmd_levelset(args) -> CommandResult:
    grid = optimize.levelset(
        args.area, args.objective, (args.u_min, args.u_max), (args.v_min, args.v_max), args.step, _ctl(args)
    )
    text = format_csv(grid)
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    payload = {"out": args.out, "cells": int(grid.values.size), "valid_cells": int(grid.valid.sum())}
    diags = []
    if grid.valid.any():
        u, v, val = grid.argmin()
        payload.update(min_u=u, min_v=v, min_value=val)
    else:
        diags.append("no chart-valid cell in the window")
    return CommandResult("ok", payload, diags)


def _side_by_side(name: str, computed: float, key: str) -> dict:
    ref = REFERENCES[key]
    return {"quantity": name, "computed": computed, "reference": ref.value, "tolerance": ref.tol, "origin": ref.origin}


def cmd_bounds(args) -> CommandResult:
    ctl = _ctl(args)
    rows = []
    payload: dict = {"table_version": TABLE_VERSION}
    diags = []
    if args.which == "threshold":
        rows.append(_side_by_side("threshold", analysis.THRESHOLD_AREA, "threshold"))
        if args.area is not None:
            payload["certificate"] = to_jsonable(analysis.sufficient_condition(args.area))
    elif args.which == "blanc":
        b = analysis.blanc_bound(ctl)
        rows += [
            _side_by_side("P", b.p_const, "blanc_p"),
            _side_by_side("Q", b.q_const, "blanc_q"),
            _side_by_side("c", b.c_bound, "blanc_c"),
        ]
        payload.update(zeta_ref=b.zeta_ref, c_recomputed=b.recompute(), area_lower_bound=b.area_lower_bound)
        if not b.c_bound > REFERENCES["blanc_c"].value:
            diags.append(f"c = {b.c_bound!r} does not exceed the stated bound {REFERENCES['blanc_c'].value}")
    elif args.which == "a0":
        a0, length, e = analysis.optimal_triangular_area(ctl)
        rows += [
            _side_by_side("A0", a0, "a0"),
            _side_by_side("length", length, "a0_length"),
            _side_by_side("energy", e, "a0_energy"),
        ]
    else:
        a = optimize.crossover_area(args.lo, args.hi, ctl)
        rows.append({"quantity": "crossover", "computed": a, "reference": "(1.13, 1.14)", "origin": "literature"})
        rows.append(_side_by_side("E_LJ triangular at 1.14", energy.lj_energy(lattice.triangular(1.14), ctl), "tri_energy_114"))
        rows.append(_side_by_side("E_LJ square at 1.14", energy.lj_energy(lattice.square(1.14), ctl), "sq_energy_114"))
    payload["rows"] = rows
    text = "\n".join(
        f"{r['quantity']:26} computed {r['computed']!r:24} reference {r['reference']!s:14} ({r['origin']})" for r in rows
    )
    extra = {k: v for k, v in payload.items() if k != "rows"}
    if extra:
        text += "\n" + _text(extra)
    return CommandResult("ok", payload, diags, text=text)


def cmd_analyze(args) -> CommandResult:
    ctl = _ctl(args)
    what = args.what
    if what == "gcert":
        if args.area is None or args.alpha is None:
            raise UsageError("gcert needs --area and --alpha")
        return CommandResult("ok", {"area": args.area, "alpha": args.alpha, "value": analysis.g_cert(args.area, args.alpha)})
    if what == "riemann":
        if args.area is None:
            raise UsageError("riemann needs --area")
        return CommandResult("ok", {"area": args.area, "constant": analysis.riemann_constant(args.area)})
    if what == "ratio":
        if args.chart_u is None or args.chart_v is None:
            raise UsageError("ratio needs --chart-u and --chart-v")
        p = lattice.FixedAreaPoint(args.chart_u, args.chart_v, 1.0)
        return CommandResult("ok", {"u": p.len_u, "v": p.len_v, "value": analysis.ratio_function(p, ctl, args.exclusion)})
    if what == "ratio-scan":
        scan = analysis.ratio_infimum_scan(args.grid_step, args.exclusion, ctl)
        return CommandResult("ok", to_jsonable(scan), list(scan.warnings))
    lat = _lattice_from(args)
    if what == "critical":
        res = optimize.critical_point_check(lat, lat.area, ctl, chart=args.chart)
        diags = ["one-sided stencil at the chart boundary"] if res.one_sided else []
        return CommandResult("ok", to_jsonable(res), diags)
    rep = analysis.global_identity_check(lat, ctl)
    return CommandResult("ok", {**to_jsonable(rep), "lattice": _lattice_payload(lat)})


def cmd_verify(args) -> CommandResult:
    rows, elapsed = verify.timed_run(fast=args.fast, tol=args.tol)
    failed = [r for r in rows if not r.passed]
    payload = {
        "table_version": TABLE_VERSION,
        "rows": to_jsonable(rows),
        "passed": len(rows) - len(failed),
        "failed": len(failed),
        "elapsed_s": elapsed,
    }
    diags = [f"FAILED criterion {r.criterion}: {r.name} (measured {r.measured!r}, expected {r.expected})" for r in failed]
    return CommandResult("error" if failed else "ok", payload, diags, text=verify.format_table(rows, elapsed))


# -- parser ------------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print JSON instead of text")
    common.add_argument("--rel-tol", type=float, default=sums.DEFAULT_CONTROL.rel_tol, help="relative tolerance of lattice sums")

    parser = _Parser(prog="ljlattice", description="Lennard-Jones and Thomas-Fermi energies of 2-D lattices")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("lattice", parents=[common], help="reduce and describe a lattice")
    _add_lattice_args(p, chart=True)
    p.add_argument("--scale", type=float)
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("sums", parents=[common], help="theta, Epstein zeta, Gaussian sums and K0")
    p.add_argument("kind", choices=["theta", "theta-normalized", "zeta-direct", "zeta-accelerated", "gaussian", "k0", "k0-laplace"])
    p.add_argument("--at", type=float, required=True, help="alpha, s, y or x depending on KIND")
    _add_lattice_args(p)
    p.set_defaults(func=cmd_sums)

    p = sub.add_parser("energy", parents=[common], help="lattice energy for a pair potential")
    _add_lattice_args(p)
    _add_potential_args(p)
    p.add_argument("--scale", type=float, help="evaluate at the dilated lattice r L (Lennard-Jones)")
    p.add_argument("--pair-distance", type=float, help="evaluate the pair potential itself at r")
    p.set_defaults(func=cmd_energy)

    p = sub.add_parser("minimize", parents=[common], help="fixed-area, global or scaling minimization")
    _add_lattice_args(p)
    _add_potential_args(p)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--area", type=float)
    mode.add_argument("--global", dest="glob", action="store_true")
    mode.add_argument("--scaling", action="store_true", help="optimal dilation of the given lattice")
    p.add_argument("--objective", choices=["lj", "tf", "ratio"], help="overrides --potential")
    p.add_argument("--step", type=float, default=0.002)
    p.add_argument("--u-min", type=float, default=optimize.SEARCH_WINDOW[0][0])
    p.add_argument("--u-max", type=float, default=optimize.SEARCH_WINDOW[0][1])
    p.add_argument("--v-min", type=float, default=optimize.SEARCH_WINDOW[1][0])
    p.add_argument("--v-max", type=float, default=optimize.SEARCH_WINDOW[1][1])
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("levelset", parents=[common], help="objective on a chart grid, written as CSV")
    p.add_argument("--area", type=float, required=True)
    p.add_argument("--u-min", type=float, default=optimize.SEARCH_WINDOW[0][0])
    p.add_argument("--u-max", type=float, default=optimize.SEARCH_WINDOW[0][1])
    p.add_argument("--v-min", type=float, default=optimize.SEARCH_WINDOW[1][0])
    p.add_argument("--v-max", type=float, default=optimize.SEARCH_WINDOW[1][1])
    p.add_argument("--step", type=float, default=0.002)
    p.add_argument("--objective", choices=["lj", "tf", "ratio"], default="lj")
    p.add_argument("--out", required=True, metavar="FILE.csv")
    p.set_defaults(func=cmd_levelset)

    p = sub.add_parser("bounds", parents=[common], help="reference constants next to computed values")
    p.add_argument("which", choices=["threshold", "blanc", "a0", "crossover"])
    p.add_argument("--area", type=float, help="threshold: also run the certificate at this area")
    p.add_argument("--lo", type=float, default=1.0)
    p.add_argument("--hi", type=float, default=1.2)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("analyze", parents=[common], help="certificates, ratio function, critical points")
    p.add_argument("what", choices=["gcert", "riemann", "ratio", "ratio-scan", "critical", "identity"])
    _add_lattice_args(p)
    p.add_argument("--area", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--chart-u", type=float)
    p.add_argument("--chart-v", type=float)
    p.add_argument("--exclusion", type=float, default=1e-4)
    p.add_argument("--grid-step", type=float, default=0.002)
    p.add_argument("--chart", choices=["auto", "lengths", "angle"], default="auto")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", parents=[common], help="run the acceptance checks")
    p.add_argument("--fast", action="store_true", help="skip the 50-lattice zeta sweep")
    p.add_argument("--tol", type=float, help="replace every numeric tolerance")
    p.set_defaults(func=cmd_verify)
    return parser


def _emit(res: CommandResult, as_json: bool, out) -> None:
    if as_json:
        doc = {"status": res.status, **to_jsonable(res.payload), "diagnostics": res.diagnostics}
        out.write(json.dumps(doc, allow_nan=False) + "\n")
        return
    out.write((res.text or _text(to_jsonable(res.payload))) + "\n")
    for d in res.diagnostics:
        out.write(f"note: {d}\n")


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        res = args.func(args)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except ConvergenceError as exc:
        err.write(f"convergence failure: {exc} (achieved bound {exc.bound:g})\n")
        return EXIT_CONVERGENCE
    except OSError as exc:
        err.write(f"I/O error: {exc}\n")
        return EXIT_IO
    except ValueError as exc:
        # invalid lattice, domain or bracket
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except RuntimeError as exc:
        err.write(f"numerical failure: {exc}\n")
        return EXIT_CONVERGENCE
    _emit(res, args.json, out)
    return res.exit_code


def main_entry() -> None:
    sys.exit(main())
