"""Command-line interface: ``painleve-nodal <group> <command> ...``.

Exit status is 0 on success, 1 on a domain error (including an integration
that ends with no usable chart) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import atlas as A
from . import flow as F
from . import riccati as R
from . import rootlat as L
from . import tables
from . import verify as V

DOMAIN_ERRORS = (L.LatticeError, A.AtlasError, R.RiccatiError, F.NoChartAvailable)


class UsageError(Exception):
    pass


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _complex_json(z: complex) -> list[str]:
    z = complex(z)
    return [_fmt(z.real), _fmt(z.imag)]


def _number(text: str) -> complex | float:
    try:
        v = complex(text.replace(" ", ""))
    except ValueError:
        raise UsageError(f"not a number: {text!r}") from None
    return v if v.imag else v.real


def parse_assignments(text: str) -> dict[str, complex | float]:
    """``k0=1,kinf=2,3`` -> {k0: 1, kinf: 2+3j}; a bare token is the imaginary part of the previous value."""
    out: dict[str, complex | float] = {}
    last = None
    for tok in filter(None, (s.strip() for s in text.split(","))):
        if "=" in tok:
            key, val = tok.split("=", 1)
            key = key.strip()
            if not key:
                raise UsageError(f"missing name in {tok!r}")
            out[key] = _number(val)
            last = key
        else:
            if last is None or isinstance(out[last], complex):
                raise UsageError(f"stray value {tok!r} in {text!r}")
            out[last] = complex(out[last], float(_number(tok).real))
    return out


def parse_path(text: str) -> list[complex]:
    return [complex(_number(tok)) for tok in text.split(",") if tok.strip()]


def _positive(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number") from None
    if not v > 0:
        raise argparse.ArgumentTypeError(f"{text!r} must be positive")
    return v


def _emit(obj, fmt: str, text_lines) -> None:
    if fmt == "json":
        print(json.dumps(obj, indent=2, sort_keys=False))
    else:
        for line in text_lines:
            print(line)


# ---------------------------------------------------------------------------
# lattice


def cmd_lattice_table(args) -> int:
    name = args.command
    if name == "table2":
        by_rank = L.closure_by_rank()
        rows = [{"key": str(r), "types": [t.exponent_form() for t in by_rank[r]]} for r in range(8, 0, -1)]
    else:
        fn = L.complement_types if name == "table3" else L.fibered_configs
        rows = []
        for key in tables.TABLE3:
            types = sorted(fn(key), key=L.RootSystemType.sort_key)
            rows.append({"key": key, "types": [t.exponent_form() for t in types]})
    lines = [f"{r['key']:>3}: {', '.join(r['types']) or 'none'}" for r in rows]
    _emit({"table": name, "rows": rows}, args.format, lines)
    return 0


def cmd_lattice_embed(args) -> int:
    emb = L.find_embedding(args.type)
    emb.validate()
    d = emb.to_dict()
    d["gram"] = emb.gram()
    d["coordinates"] = "doubled (inner product = dot / 4)"
    lines = [f"type {d['type']}"] + [" ".join(f"{c:3d}" for c in v) for v in d["vectors"]]
    _emit(d, args.format, lines)
    return 0


def cmd_lattice_opcheck(args) -> int:
    try:
        with open(args.file) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise L.MalformedConfig(f"cannot read {args.file}: {exc}") from None
    report = L.op_pair_lattice_check(L.PicardConfig.from_dict(data))
    print(json.dumps(report, indent=2))
    return 0 if report["is_op_pair"] else 1


def cmd_lattice_modulidim(args) -> int:
    print(L.moduli_dim(args.r, args.s))
    return 0


# ---------------------------------------------------------------------------
# painleve


def _config(args) -> F.IntegratorConfig:
    kw = {}
    for flag, name in (("rtol", "rel_tol"), ("atol", "abs_tol"), ("rho", "switch_threshold"),
                       ("max_step", "max_step")):
        if getattr(args, flag, None) is not None:
            kw[name] = getattr(args, flag)
    try:
        return F.IntegratorConfig(**kw)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _write_csv(traj: F.Trajectory, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(traj.to_csv())
    else:
        with open(out, "w", newline="") as fh:
            traj.to_csv(fh)


def _type_params(pt: A.PainleveType, text: str | None) -> A.Params:
    try:
        return A.Params(pt, parse_assignments(text or ""))
    except A.AtlasError as exc:
        raise UsageError(f"--params: {exc}") from None


def cmd_painleve_integrate(args) -> int:
    pt = A.PainleveType.parse(args.type)
    params = _type_params(pt, args.params)
    init = parse_assignments(args.init)
    if set(init) != {"chart", "x", "y"}:
        raise UsageError("--init needs chart=<i>,x=<value>,y=<value>")
    q = A.ChartPoint(int(init["chart"].real if isinstance(init["chart"], complex) else init["chart"]),
                     complex(init["x"]), complex(init["y"]))
    cfg = _config(args)
    path = F.PathSpec.for_type(parse_path(args.path), pt, cfg)
    traj = F.integrate_atlas(pt, params, path, q, cfg)
    _write_csv(traj, args.out)
    log = traj.events_dict()
    log["samples"] = len(traj.samples)
    (sys.stdout if args.out not in (None, "-") else sys.stderr).write(json.dumps(log, indent=2) + "\n")
    return 0 if traj.status is F.Status.COMPLETED else 1


# ---------------------------------------------------------------------------
# riccati


def _loci(args) -> list[R.LocusSpec]:
    if getattr(args, "locus", None):
        return [R.get_locus(args.type, args.locus)]
    return R.catalog(args.type)


def cmd_riccati_list(args) -> int:
    dump = R.locus_dump(args.type)
    lines = []
    for l in dump["loci"]:
        charts = "; ".join(f"chart {c}: {e}" for c, e in l["charts"].items())
        r = l["riccati"]
        lines.append(f"{l['name']}: {l['constraint']} | {charts} | a={r['a']}, b={r['b']}, c={r['c']}")
    if not lines:
        lines = [f"{dump['type']}: no Riccati loci"]
    _emit(dump, args.format, lines)
    return 0


def cmd_riccati_reduce(args) -> int:
    out = []
    for l in _loci(args):
        ode = R.reduce(l)
        if args.params:
            ode = ode.bind(parse_assignments(args.params))
        lin = R.linearize(ode)
        a, b, c = ode.coefficients_str()
        out.append({"name": l.name, "chart": l.reduced_on[0], "coordinate": l.reduced_on[1],
                    "a": a, "b": b, "c": c,
                    "linear": {"p": str(R.sp.factor(lin.p)), "q": str(R.sp.factor(lin.q))},
                    "poles": [_complex_json(z) for z in sorted(ode.pole_set, key=lambda z: (z.real, z.imag))]})
    lines = [f"{o['name']} ({o['coordinate']}{o['chart']}): a={o['a']}, b={o['b']}, c={o['c']}; "
             f"u'' + ({o['linear']['p']}) u' + ({o['linear']['q']}) u = 0" for o in out]
    _emit({"type": A.PainleveType.parse(args.type).base, "equations": out}, args.format, lines)
    return 0


def cmd_riccati_verify(args) -> int:
    import numpy as np

    rng = np.random.default_rng(args.seed)
    pt = A.PainleveType.parse(args.type)
    rows = []
    ok = True
    for l in _loci(args):
        row = {"name": l.name}
        if pt.capability is A.Capability.FULL_ATLAS:
            worst = cross = 0.0
            for _ in range(args.samples):
                p = R.sample_params(l, rng)
                t = complex(rng.uniform(0.5, 2.5), rng.uniform(-1, 1))
                chart = int(rng.choice(l.chart_ids))
                q = R.sample_point(l, chart, p, t, rng)
                worst = max(worst, R.invariance_residual(l, p, t, q))
                for c2 in l.chart_ids:
                    if c2 != chart:
                        cross = max(cross, R.cross_chart_residual(l, chart, c2, p, t, q))
            row.update(tangency=_fmt(worst), cross_chart=_fmt(cross), restriction=R.restriction_matches(l))
            ok &= worst < 1e-10 and cross < 1e-10 and row["restriction"]
        else:
            row["tangency"] = "not checkable without an ambient vector field"
        p = R.sample_params(l, rng, complex_values=False)
        ode = R.reduce(l).bind(p)
        t0 = complex(rng.uniform(1.2, 2.0), rng.uniform(-0.5, 0.5))
        path = F.PathSpec((t0, t0 + 0.5))
        x0 = complex(rng.normal(scale=0.3), rng.normal(scale=0.3))
        direct = F.integrate_riccati(ode, path, x0)
        linear = R.solve_via_linear(ode, x0, path)
        gap = F.p1_gap(direct.final, linear.trajectory.final)
        row["linear_vs_direct"] = _fmt(gap)
        ok &= gap < 1e-6
        rows.append(row)
    lines = [", ".join(f"{k}={v}" for k, v in r.items()) for r in rows]
    _emit({"type": pt.base, "seed": args.seed, "loci": rows, "passed": bool(ok)}, args.format, lines)
    return 0 if ok else 1


def cmd_riccati_solve(args) -> int:
    l = R.get_locus(args.type, args.locus)
    ode = R.reduce(l).bind(_type_params(l.ptype, args.params))
    cfg = _config(args)
    path = F.PathSpec(tuple(parse_path(args.path)), min_puncture_distance=cfg.min_puncture_distance)
    x0 = complex(_number(args.x0))
    if args.method == "linear":
        sol = R.solve_via_linear(ode, x0, path, cfg)
        traj = sol.trajectory
        log = {"status": traj.status.value, "poles": [_complex_json(z) for z in sol.pole_times]}
    else:
        traj = F.integrate_riccati(ode, path, x0, cfg)
        log = traj.events_dict()
    _write_csv(traj, args.out)
    log["samples"] = len(traj.samples)
    (sys.stdout if args.out not in (None, "-") else sys.stderr).write(json.dumps(log, indent=2) + "\n")
    return 0 if traj.status is F.Status.COMPLETED else 1


def cmd_riccati_config(args) -> int:
    pt = A.PainleveType.parse(args.type)
    params = _type_params(pt, args.params)
    loci, typ = R.config_at_params(pt, params)
    sols = R.rational_points(pt, params)
    d = {"type": pt.base, "active": loci, "configuration": typ.exponent_form() if typ.components else "0",
         "rational_solutions": [{"chart": s.chart, "x": s.x, "y": s.y, "from": s.source} for s in sols]}
    lines = [f"active loci: {', '.join(loci) or 'none'}", f"configuration: {d['configuration']}"]
    lines += [f"rational solution in chart {s.chart}: (x, y) = ({s.x}, {s.y}) from {s.source}" for s in sols]
    _emit(d, args.format, lines)
    return 0


def cmd_riccati_nonexistence(args) -> int:
    rep = R.nonexistence(args.type)
    _emit(rep, args.format, [f"{rep['type']}: no Riccati loci", rep["reason"]])
    return 0


# ---------------------------------------------------------------------------
# verify


def cmd_verify_all(args) -> int:
    results = V.run_all(args.seed)
    if args.format == "json":
        print(json.dumps([{"number": r.number, "name": r.name, "passed": r.passed, "detail": r.detail}
                          for r in results], indent=2))
    else:
        for r in results:
            print(r.line())
    return 0 if all(r.passed for r in results) else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="painleve-nodal",
        description="Root-lattice tables, Painleve chart integration and Riccati loci.",
    )
    groups = parser.add_subparsers(dest="group", required=True)

    def fmt(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    lat = groups.add_parser("lattice", help="root-lattice classification").add_subparsers(
        dest="command", required=True)
    for name in ("table2", "table3", "table4"):
        p = lat.add_parser(name)
        fmt(p)
        p.set_defaults(func=cmd_lattice_table)
    p = lat.add_parser("embed")
    p.add_argument("--type", required=True)
    fmt(p)
    p.set_defaults(func=cmd_lattice_embed)
    p = lat.add_parser("opcheck")
    p.add_argument("--file", required=True)
    p.set_defaults(func=cmd_lattice_opcheck)
    p = lat.add_parser("modulidim")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.set_defaults(func=cmd_lattice_modulidim)

    def integ(p):
        p.add_argument("--rtol", type=_positive)
        p.add_argument("--atol", type=_positive)
        p.add_argument("--rho", type=_positive)
        p.add_argument("--max-step", dest="max_step", type=_positive)
        p.add_argument("--out")

    pv = groups.add_parser("painleve", help="integrate a Painleve system").add_subparsers(
        dest="command", required=True)
    p = pv.add_parser("integrate")
    p.add_argument("--type", required=True, choices=("E7", "E6", "D4"))
    p.add_argument("--params", default="")
    p.add_argument("--init", required=True)
    p.add_argument("--path", required=True)
    integ(p)
    p.set_defaults(func=cmd_painleve_integrate)

    rc = groups.add_parser("riccati", help="Riccati loci").add_subparsers(dest="command", required=True)
    types = [t.base for t in A.PainleveType]
    p = rc.add_parser("list")
    p.add_argument("--type", required=True, choices=types)
    fmt(p)
    p.set_defaults(func=cmd_riccati_list)
    p = rc.add_parser("reduce")
    p.add_argument("--type", required=True, choices=types)
    p.add_argument("--locus")
    p.add_argument("--params")
    fmt(p)
    p.set_defaults(func=cmd_riccati_reduce)
    p = rc.add_parser("verify")
    p.add_argument("--type", required=True, choices=types)
    p.add_argument("--locus")
    p.add_argument("--seed", type=int, default=V.DEFAULT_SEED)
    p.add_argument("--samples", type=int, default=100)
    fmt(p)
    p.set_defaults(func=cmd_riccati_verify)
    p = rc.add_parser("solve")
    p.add_argument("--type", required=True, choices=types)
    p.add_argument("--locus", required=True)
    p.add_argument("--params")
    p.add_argument("--x0", required=True)
    p.add_argument("--path", required=True)
    p.add_argument("--method", choices=("direct", "linear"), default="direct")
    integ(p)
    p.set_defaults(func=cmd_riccati_solve)
    p = rc.add_parser("config")
    p.add_argument("--type", required=True, choices=types)
    p.add_argument("--params", required=True)
    fmt(p)
    p.set_defaults(func=cmd_riccati_config)
    p = rc.add_parser("nonexistence")
    p.add_argument("--type", required=True, choices=("E8", "D7", "D8"))
    fmt(p)
    p.set_defaults(func=cmd_riccati_nonexistence)

    vf = groups.add_parser("verify", help="acceptance checks").add_subparsers(dest="command", required=True)
    p = vf.add_parser("all")
    p.add_argument("--seed", type=int, default=V.DEFAULT_SEED)
    fmt(p)
    p.set_defaults(func=cmd_verify_all)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DOMAIN_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
