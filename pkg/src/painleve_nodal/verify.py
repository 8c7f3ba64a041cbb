"""Numbered acceptance checks, shared by the test suite and ``verify all``.

Each check returns a :class:`CheckResult`.  Random sample points come from
``numpy.random.default_rng(seed)`` so reruns are bit-identical.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import atlas as A
from . import flow as F
from . import riccati as R
from . import rootlat as L
from . import tables

DEFAULT_SEED = 20240601


@dataclass(frozen=True)
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d} {self.name}: {self.detail}"


def _types(names) -> set[L.RootSystemType]:
    return {L.RootSystemType.parse(n) for n in names}


def _rng(seed: int, salt: int) -> np.random.Generator:
    return np.random.default_rng([seed, salt])


def _polar(rng, lo=0.3, hi=3.0) -> complex:
    return complex(rng.uniform(lo, hi) * np.exp(1j * rng.uniform(0, 2 * np.pi)))


def _time(pt: A.PainleveType, rng, lo=0.3, hi=3.0) -> complex:
    while True:
        t = _polar(rng, lo, hi)
        if all(abs(t - z) > 0.2 for z in pt.punctures):
            return t


def check_table2(seed: int = DEFAULT_SEED) -> CheckResult:
    start = time.perf_counter()
    got = L.closure_by_rank()
    elapsed = time.perf_counter() - start
    bad = [r for r in range(1, 9) if set(got[r]) != _types(tables.TABLE2[r])]
    total = sum(len(v) for v in got.values())
    ok = not bad and total == 70 and elapsed < 60
    return CheckResult(1, "Root subsystems of E8 by rank", ok,
                       f"{total} types, mismatched ranks {bad}, {elapsed:.2f}s")


def check_table3(seed: int = DEFAULT_SEED) -> CheckResult:
    bad = [k for k, v in tables.TABLE3.items() if set(L.complement_types(k)) != _types(v)]
    return CheckResult(2, "Configurations on S - Y", not bad, f"mismatched rows {bad}")


def check_table4(seed: int = DEFAULT_SEED) -> CheckResult:
    bad = [k for k, v in tables.TABLE4.items() if set(L.fibered_configs(k)) != _types(v)]
    excluded = {t for ts in L.closure_by_rank().values() for t in ts
                if not L.oguiso_shioda_feasible(t).feasible}
    ok_ex = excluded == _types(tables.EULER_EXCLUDED)
    return CheckResult(3, "Fibered configurations and Euler-number exclusions", not bad and ok_ex,
                       f"mismatched rows {bad}, excluded {sorted(map(str, excluded))}")


def check_embeddings(seed: int = DEFAULT_SEED) -> CheckResult:
    start = time.perf_counter()
    failures = []
    count = 0
    for names in tables.TABLE2.values():
        for n in names:
            t = L.RootSystemType.parse(n)
            try:
                emb = L.find_embedding(t)
                emb.validate()
                if L.classify_gram(emb.gram()) != t:
                    failures.append(n)
            except L.LatticeError as exc:
                failures.append(f"{n} ({exc})")
            count += 1
    elapsed = time.perf_counter() - start
    ok = not failures and count == 70 and elapsed < 300
    return CheckResult(4, "Embedding certificates", ok, f"{count} types, failures {failures}, {elapsed:.2f}s")


def check_atlas_consistency(seed: int = DEFAULT_SEED, n: int = 100) -> CheckResult:
    rng = _rng(seed, 5)
    worst_c = worst_r = 0.0
    where = ""
    for pt in (A.PainleveType.E7t, A.PainleveType.E6t, A.PainleveType.D4t):
        for i, j in A.adjacent_pairs(pt):
            for _ in range(n):
                p = A.Params(pt, {k: complex(rng.normal(), rng.normal()) for k in pt.param_names})
                t = _time(pt, rng)
                q = (_polar(rng), _polar(rng))
                c = A.consistency_residual(pt, i, j, p, t, q)
                r = A.round_trip_error(pt, i, j, p, t, q)
                if c > worst_c:
                    worst_c, where = c, f"{pt.value} {i}->{j}"
                worst_r = max(worst_r, r)
    ok = worst_c < 1e-9 and worst_r < 1e-12
    return CheckResult(5, "Atlas consistency", ok,
                       f"max field residual {worst_c:.2e} ({where}), max round trip {worst_r:.2e}")


def check_tangency(seed: int = DEFAULT_SEED, n: int = 100) -> CheckResult:
    rng = _rng(seed, 6)
    worst, names = 0.0, []
    for pt in (A.PainleveType.E7t, A.PainleveType.E6t, A.PainleveType.D4t):
        for l in R.catalog(pt):
            names.append(f"{pt.base}:{l.name}")
            for _ in range(n):
                p = R.sample_params(l, rng)
                t = _time(pt, rng)
                chart = int(rng.choice(l.chart_ids))
                q = R.sample_point(l, chart, p, t, rng)
                worst = max(worst, R.invariance_residual(l, p, t, q))
    return CheckResult(6, "Locus tangency", worst < 1e-10,
                       f"{len(names)} loci, max residual {worst:.2e}")


def _riccati_gap(ode, x0, path, cfg) -> tuple[float, int]:
    direct = F.integrate_riccati(ode, path, x0, cfg)
    linear = R.solve_via_linear(ode, x0, path, cfg)
    if direct.status is not F.Status.COMPLETED or linear.trajectory.status is not F.Status.COMPLETED:
        return math.inf, len(direct.events)
    gaps = [F.p1_gap(a, b) for a, b in zip(direct.at_waypoints(), linear.trajectory.at_waypoints())]
    return max(gaps), len(direct.events)


def check_riccati_linear(seed: int = DEFAULT_SEED) -> CheckResult:
    rng = _rng(seed, 7)
    cfg = F.IntegratorConfig()
    worst, count = 0.0, 0
    for pt in A.PainleveType:
        for l in R.catalog(pt):
            p = R.sample_params(l, rng, complex_values=False)
            ode = R.reduce(l).bind(p)
            t0 = _time(pt, rng, 1.0, 2.0)
            d = 0.5 * np.exp(1j * rng.uniform(0, 2 * np.pi))
            path = F.PathSpec((t0, t0 + d / 2, t0 + d))
            x0 = complex(rng.normal(scale=0.3), rng.normal(scale=0.3))
            gap, _ = _riccati_gap(ode, x0, path, cfg)
            worst = max(worst, gap)
            count += 1
    # continuation through one movable pole
    pole_cases = [
        (R.reduce(R.get_locus("E7", "C")).bind({"alpha": -0.5}), -1.0, (0, 1.5, 2.0)),
        (R.reduce(R.get_locus("E6", "C0")).bind({"k0": 0, "kinf": 1}), 1.0, (0, 1, 2.0)),
    ]
    pole_worst, crossed = 0.0, []
    for ode, x0, wps in pole_cases:
        gap, events = _riccati_gap(ode, x0, F.PathSpec(wps), cfg)
        pole_worst = max(pole_worst, gap)
        crossed.append(events)
    ok = worst < 1e-6 and pole_worst < 1e-5 and all(e >= 1 for e in crossed)
    return CheckResult(7, "Riccati vs linear ODE", ok,
                       f"{count} equations max gap {worst:.2e}; through poles {pole_worst:.2e} "
                       f"(chart switches {crossed})")


def check_on_locus_flow(seed: int = DEFAULT_SEED) -> CheckResult:
    cfg = F.IntegratorConfig(rel_tol=1e-9, abs_tol=1e-12)
    p = {"k0": 0, "kinf": 1}
    wps = (0, 0.25, 0.5, 0.75, 1.0)
    full = F.integrate_atlas("E6", p, F.PathSpec(wps), A.ChartPoint(0, 0j, 1 + 0j), cfg)
    drift = max(abs(s.x) for s in full.samples if s.chart == 0)
    off_chart = any(s.chart != 0 for s in full.samples)
    ode = R.reduce(R.get_locus("E6", "C0")).bind(p)
    scalar = F.integrate_riccati(ode, F.PathSpec(wps), 1.0, cfg)
    gap = max(abs(a.y - F.p1_value(b)) for a, b in zip(full.at_waypoints(), scalar.at_waypoints()))
    ok = full.status is F.Status.COMPLETED and not off_chart and drift < 1e-6 and gap < 1e-6
    return CheckResult(8, "On-locus integration of the full system", ok,
                       f"max |x0| {drift:.2e}, y0 vs scalar {gap:.2e}")


def check_rational(seed: int = DEFAULT_SEED, n: int = 20) -> CheckResult:
    rng = _rng(seed, 9)
    cases = [("E6", {"k0": 0, "kinf": 0}, ("0", "0")), ("E7", {"alpha": 0}, ("0", "t/2"))]
    worst, found = 0.0, []
    for pt, p, want in cases:
        sols = [s for s in R.rational_points(pt, p) if (s.x, s.y) == want and s.chart == 0]
        found.append(bool(sols))
        for s in sols:
            for _ in range(n):
                t = complex(rng.normal(scale=2), rng.normal(scale=2))
                worst = max(worst, R.solution_residual(pt, p, s, t))
    ok = all(found) and worst < 1e-12
    return CheckResult(9, "Rational solutions", ok, f"found {found}, max residual {worst:.2e}")


def check_configs(seed: int = DEFAULT_SEED) -> CheckResult:
    rows = [("D4", k, set(v), t) for k, v, t in tables.D4_CONFIGS]
    rows += [("E6", k, set(v), t) for k, v, t in tables.E6_CONFIGS]
    bad = []
    for pt, key, want_loci, want_type in rows:
        names = A.PainleveType.parse(pt).param_names
        loci, typ = R.config_at_params(pt, dict(zip(names, key)))
        if set(loci) != want_loci or typ != L.RootSystemType.parse(want_type):
            bad.append(f"{pt}{key}: {sorted(loci)} {typ}")
    return CheckResult(10, "Special-parameter configurations", not bad,
                       f"{len(rows)} rows, mismatches {bad}")


def check_nonexistence(seed: int = DEFAULT_SEED) -> CheckResult:
    bad = []
    for pt in ("E8", "D7", "D8"):
        rep = R.nonexistence(pt)
        if R.catalog(pt) or rep["complement_types"] or L.complement_types(pt):
            bad.append(pt)
    return CheckResult(11, "Non-existence for ~E8, ~D7, ~D8", not bad, f"failures {bad}")


def check_closed_form(seed: int = DEFAULT_SEED) -> CheckResult:
    ode = R.RiccatiODE(1, 0, 0)
    cfg = F.IntegratorConfig()
    tr = F.integrate_riccati(ode, F.PathSpec((0, 0.5, 1.5)), 1.0, cfg)
    before = after = 0.0
    for s in tr.samples:
        # P^1 distance to the exact solution (x or 1/x, whichever is bounded)
        exact = F.Sample(s.t, 0, 1 / (1 - s.t), 0j)
        if s.t.real < 1:
            before = max(before, F.p1_gap(s, exact))
        else:
            after = max(after, F.p1_gap(s, exact))
    mid = abs(F.p1_value(tr.at_waypoints()[1]) - 2)
    end = abs(F.p1_value(tr.final) + 2)
    ok = (tr.status is F.Status.COMPLETED and len(tr.events) >= 1 and mid < 1e-8 and end < 1e-6
          and before < 1e-8 and after < 1e-6)
    return CheckResult(12, "x' = x^2 through its pole", ok,
                       f"x(0.5) error {mid:.2e}, x(1.5) error {end:.2e}; along the path "
                       f"{before:.2e} before and {after:.2e} after the pole")


def check_moduli_dim(seed: int = DEFAULT_SEED) -> CheckResult:
    a, b = L.moduli_dim(5, 4), L.moduli_dim(9, 0)
    return CheckResult(13, "Moduli dimension count", a == 1 and b == 1, f"(5,4) -> {a}, (9,0) -> {b}")


CHECKS: list[Callable[..., CheckResult]] = [
    check_table2, check_table3, check_table4, check_embeddings, check_atlas_consistency,
    check_tangency, check_riccati_linear, check_on_locus_flow, check_rational, check_configs,
    check_nonexistence, check_closed_form, check_moduli_dim,
]


def run_all(seed: int = DEFAULT_SEED) -> list[CheckResult]:
    out = []
    for fn in CHECKS:
        try:
            out.append(fn(seed))
        except Exception as exc:  # a crash is a failed check, not an aborted run
            num = CHECKS.index(fn) + 1
            out.append(CheckResult(num, fn.__name__, False, f"raised {type(exc).__name__}: {exc}"))
    return out
