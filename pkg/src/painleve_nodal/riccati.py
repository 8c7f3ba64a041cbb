"""Riccati loci of the Painleve systems and their scalar equations.

Every locus is stored as printed data: a hyperplane in parameter space, the
defining equation of the curve family in each chart where it is written
down, and the Riccati equation on the reduced coordinate.  Equations are
kept as strings and parsed with sympy, so coefficient derivatives and pole
sets are exact.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from functools import cache

import numpy as np
import sympy as sp

from . import atlas as _atlas
from . import flow as _flow
from . import rootlat
from .atlas import Capability, ChartPoint, PainleveType, Params


class RiccatiError(ValueError):
    pass


class DegenerateQuadratic(RiccatiError):
    pass


class NotApplicable(RiccatiError):
    pass


class NotOnLocus(RiccatiError):
    pass


T = sp.Symbol("t")
X, Y = sp.symbols("x y")


@cache
def _param_symbols(pt: PainleveType) -> dict[str, sp.Symbol]:
    return {n: sp.Symbol(n) for n in pt.param_names}


def _parse(pt: PainleveType, text: str) -> sp.Expr:
    names = {"t": T, "x": X, "y": Y, **_param_symbols(pt)}
    return sp.parse_expr(text, local_dict=names)


@dataclass(frozen=True)
class Equation:
    """Defining equation of a locus in one chart.

    ``coord`` is ``"x"`` or ``"y"`` for ``coord - value = 0`` and ``"xy"``
    for the product form ``x*y - value = 0``.
    """

    coord: str
    value: str

    def __post_init__(self):
        if self.coord not in ("x", "y", "xy"):
            raise RiccatiError(f"bad coordinate {self.coord!r}")

    def expr(self, pt: PainleveType) -> sp.Expr:
        lhs = {"x": X, "y": Y, "xy": X * Y}[self.coord]
        return lhs - _parse(pt, self.value)

    def __str__(self):
        lhs = "x*y" if self.coord == "xy" else self.coord
        return f"{lhs} = {self.value}"


@dataclass(frozen=True)
class LocusSpec:
    ptype: PainleveType
    name: str
    constraint: str                       # expression vanishing on the hyperplane
    charts: tuple[tuple[int, Equation], ...]
    reduced_on: tuple[int, str]           # (chart, coordinate carrying the dynamics)
    rhs: str                              # printed right-hand side in that coordinate
    reducible_when: str | None = None     # the family splits when this vanishes
    alternate: tuple[int, str, str] | None = None  # second reduction (chart, coord, rhs)

    def equation(self, chart: int) -> Equation:
        for c, eq in self.charts:
            if c == chart:
                return eq
        raise RiccatiError(f"{self.name} has no equation in chart {chart}")

    @property
    def chart_ids(self) -> tuple[int, ...]:
        return tuple(c for c, _ in self.charts)

    def constraint_expr(self) -> sp.Expr:
        return _parse(self.ptype, self.constraint)

    def holds(self, p, tol: float = 1e-12) -> bool:
        return abs(_numeric(self.ptype, self.constraint)(0, *_values(self.ptype, p))) <= tol

    def is_reducible(self, p, tol: float = 1e-12) -> bool:
        if self.reducible_when is None:
            return False
        return abs(_numeric(self.ptype, self.reducible_when)(0, *_values(self.ptype, p))) <= tol

    def to_dict(self) -> dict:
        a, b, c = reduce(self).coefficients_str()
        return {
            "name": self.name,
            "constraint": f"{self.constraint} = 0",
            "charts": {str(c_): str(eq) for c_, eq in self.charts},
            "reduced_on": {"chart": self.reduced_on[0], "coordinate": self.reduced_on[1]},
            "riccati": {"a": a, "b": b, "c": c},
        }


def _sym_number(v):
    # numpy scalars confuse the sympy code printer, so go through Python numbers
    if isinstance(v, sp.Basic):
        return v
    if isinstance(v, (int, np.integer)):
        return sp.Integer(int(v))
    if isinstance(v, (float, np.floating)):
        return sp.Float(float(v))
    v = complex(v)
    return sp.Float(v.real) + sp.I * sp.Float(v.imag) if v.imag else sp.Float(v.real)


def _subs_params(pt: PainleveType, expr, p) -> sp.Expr:
    syms = _param_symbols(pt)
    return expr.subs({syms[k]: _sym_number(v) for k, v in dict(p).items()})


@cache
def _numeric(pt: PainleveType, text: str, dt: bool = False):
    """``f(t, *params)`` for an expression in t and the parameters (or its t-derivative)."""
    e = _parse(pt, text)
    if dt:
        e = sp.diff(e, T)
    fn = sp.lambdify((T, *_param_symbols(pt).values()), e, modules="math")
    return lambda *args: complex(fn(*args))


def _values(pt: PainleveType, p) -> tuple:
    return tuple(dict(p)[n] for n in pt.param_names)


def _eq(coord, value):
    return Equation(coord, value)


E7, E6, D4, D5, D6 = (PainleveType.E7t, PainleveType.E6t, PainleveType.D4t,
                      PainleveType.D5t, PainleveType.D6t)

_CATALOG = {
    E7: (
        LocusSpec(E7, "C", "alpha + 1/2", ((0, _eq("y", "0")), (1, _eq("y", "0"))),
                  (0, "x"), "-x**2 - t/2"),
    ),
    E6: (
        LocusSpec(E6, "C0", "k0", ((0, _eq("x", "0")), (1, _eq("x", "0"))),
                  (0, "y"), "-2*y**2 + 2*t*y - kinf"),
        LocusSpec(E6, "Cinf", "kinf", ((0, _eq("y", "0")), (2, _eq("y", "0"))),
                  (0, "x"), "-x**2 - 2*t*x - 2*k0"),
        LocusSpec(E6, "Ck0=kinf", "k0 - kinf", ((0, _eq("xy", "k0")),),
                  (0, "x"), "-x**2 - 2*t*x + 2*k0", reducible_when="k0",
                  alternate=(0, "y", "-2*y**2 + 2*t*y + k0")),
    ),
    D4: (
        LocusSpec(D4, "C0", "k0", ((0, _eq("x", "0")), (1, _eq("x", "0"))), (0, "y"),
                  "-1/(t*(t-1))*(t*y**2 + (k1*t + kt - 1)*y + ((k1 + kt - 1)**2 - kinf**2)/4)"),
        LocusSpec(D4, "C1", "k1", ((0, _eq("x", "1")), (2, _eq("x", "0"))), (0, "y"),
                  "-1/(t*(t-1))*((1 - t)*y**2 - ((k0 + kt - 1) - k0*t)*y"
                  " + ((k0 + kt - 1)**2 - kinf**2)/4)"),
        LocusSpec(D4, "Ct", "kt", ((0, _eq("x", "t")), (3, _eq("x", "0"))), (0, "y"),
                  "-1/(t*(t-1))*(t*(t - 1)*y**2 - ((k0 + k1 - 2)*t - k0 + 1)*y"
                  " + ((k0 + k1 - 1)**2 - kinf**2)/4)"),
        LocusSpec(D4, "Ceps", "k0 + k1 + kt + kinf - 1", ((0, _eq("y", "0")), (4, _eq("y", "0"))),
                  (0, "x"),
                  "-1/(t*(t-1))*(k0*(x - 1)*(x - t) + k1*x*(x - t) + (kt - 1)*x*(x - 1))"),
        LocusSpec(D4, "Cinf", "kinf", ((4, _eq("x", "0")), (5, _eq("x", "0"))), (4, "y"),
                  "-1/(t*(t-1))*(y**2 + ((kt - 1)*t + k1)*y + ((k1 + kt - 1)**2 - k0**2)/4*t)"),
    ),
    D5: (
        LocusSpec(D5, "C0", "k0", ((0, _eq("x", "0")), (1, _eq("x", "0"))), (0, "y"),
                  "-1/t*(y**2 + (kt - t)*y + (kt**2 - kinf**2)/4)"),
        LocusSpec(D5, "Ceps", "k0 + kt + kinf", ((0, _eq("y", "0")), (3, _eq("y", "0"))), (0, "x"),
                  "-1/t*(k0*(x - 1)**2 + kt*x*(x - 1) + t*x)"),
        LocusSpec(D5, "Cinf", "kinf", ((3, _eq("x", "0")), (4, _eq("x", "0"))), (3, "y"),
                  "-1/t*(y**2 + (kt + t)*y + (kt**2 - k0**2)/4)"),
    ),
    D6: (
        LocusSpec(D6, "C1", "k0 + kinf", ((0, _eq("y", "0")), (2, _eq("y", "0"))), (0, "x"),
                  "1/t*(-2*t*x**2 - (2*k0 + 1)*x + 2*t)"),
        LocusSpec(D6, "C2", "k0 - kinf", ((0, _eq("y", "t")), (3, _eq("y", "0"))), (0, "x"),
                  "1/t*(2*t*x**2 - (2*k0 + 1)*x + 2*t)"),
        LocusSpec(D6, "C3", "k0 - kinf + 2", ((1, _eq("y", "0")), (2, _eq("y", "t"))), (1, "x"),
                  "1/t*(-2*t*x**2 + (2*k0 + 3)*x - 2*t)"),
        # printed as y1 = 1 next to the equation but y1 = t in the locus table; the table wins
        LocusSpec(D6, "C4", "k0 + kinf + 2", ((1, _eq("y", "t")), (3, _eq("y", "t"))), (1, "x"),
                  "1/t*(2*t*x**2 + (2*k0 + 3)*x - 2*t)"),
    ),
}


def catalog(pt) -> list[LocusSpec]:
    """Riccati loci of a Painleve type (empty for ~E8, ~D7, ~D8)."""
    return list(_CATALOG.get(PainleveType.parse(pt), ()))


def get_locus(pt, name: str) -> LocusSpec:
    for l in catalog(pt):
        if l.name == name:
            return l
    names = [l.name for l in catalog(pt)]
    raise RiccatiError(f"no locus {name!r} for {PainleveType.parse(pt).value}; known: {names}")


# ---------------------------------------------------------------------------
# Scalar equations


def _poles_of(exprs) -> frozenset[complex]:
    out = set()
    for e in exprs:
        den = sp.denom(sp.together(e))
        if den.free_symbols - {T}:
            continue
        if den.has(T):
            for r in sp.Poly(den, T).all_roots() if den.is_polynomial(T) else []:
                out.add(complex(r))
    return frozenset(out)


def _vanishes(expr, tol: float = 1e-9) -> bool:
    """Exact zero test, falling back to spot values when floats are involved."""
    expr = sp.together(expr)
    if sp.simplify(expr) == 0:
        return True
    if not expr.has(sp.Float):
        return False
    syms = sorted(expr.free_symbols, key=str)
    spots = (0.37 + 0.21j, 1.9 - 0.6j, -2.3 + 1.1j)
    for k, z in enumerate(spots):
        vals = {s: spots[(k + i) % 3] * (1 + 0.1 * i) for i, s in enumerate(syms)}
        if abs(complex(expr.subs(vals))) > tol:
            return False
    return True


class RiccatiODE:
    """``x' = a(t) x^2 + b(t) x + c(t)`` with exact rational coefficients."""

    def __init__(self, a, b, c, ptype: PainleveType | None = None, params=None, var: str = "x"):
        self.a, self.b, self.c = (sp.sympify(v) for v in (a, b, c))
        self.ptype = ptype
        self.params = dict(params) if params is not None else None
        self.var = var
        if sp.simplify(self.a) == 0:
            raise DegenerateQuadratic("quadratic coefficient vanishes identically")

    @classmethod
    def from_rhs(cls, rhs: sp.Expr, var: sp.Symbol, ptype=None, params=None) -> "RiccatiODE":
        poly = sp.Poly(sp.expand(sp.together(rhs) * 1), var)
        if poly.degree() > 2:
            raise RiccatiError("right-hand side is not quadratic")
        a, b, c = (sp.factor(sp.simplify(poly.coeff_monomial(var ** k))) for k in (2, 1, 0))
        return cls(a, b, c, ptype, params, str(var))

    def coefficients(self) -> tuple[sp.Expr, sp.Expr, sp.Expr]:
        return self.a, self.b, self.c

    def coefficients_str(self) -> tuple[str, str, str]:
        return tuple(str(sp.factor(v)) for v in (self.a, self.b, self.c))

    @property
    def free_params(self) -> set[str]:
        syms = set().union(*(v.free_symbols for v in (self.a, self.b, self.c))) - {T}
        return {str(s) for s in syms}

    def bind(self, p) -> "RiccatiODE":
        if self.ptype is None:
            raise RiccatiError("equation has no parameters to bind")
        p = _atlas.Params(self.ptype, p) if not isinstance(p, Params) else p
        vals = [_subs_params(self.ptype, v, p) for v in (self.a, self.b, self.c)]
        return RiccatiODE(*vals, ptype=self.ptype, params=dict(p), var=self.var)

    @property
    def pole_set(self) -> frozenset[complex]:
        return _poles_of((self.a, self.b, self.c))

    def evaluator(self):
        if self.free_params:
            raise RiccatiError(f"unbound parameters {sorted(self.free_params)}; call bind() first")
        fn = sp.lambdify((T,), (self.a, self.b, self.c), modules="math")

        def coeffs(t):
            a, b, c = fn(t)
            return complex(a), complex(b), complex(c)

        return coeffs

    def rhs(self, x):
        return self.a * x ** 2 + self.b * x + self.c

    def __repr__(self):
        a, b, c = self.coefficients_str()
        return f"RiccatiODE(a={a}, b={b}, c={c})"


class Linear2ODE:
    """``u'' + p(t) u' + q(t) u = 0`` obtained from a Riccati equation by ``x = -u'/(a u)``."""

    def __init__(self, p, q, source: RiccatiODE):
        self.p, self.q = sp.sympify(p), sp.sympify(q)
        self.source = source
        a, b, c = source.coefficients()
        if not (_vanishes(self.p + sp.diff(a, T) / a + b) and _vanishes(self.q - a * c)):
            raise RiccatiError("linear coefficients do not match the source Riccati equation")

    @property
    def pole_set(self) -> frozenset[complex]:
        return _poles_of((self.p, self.q)) | self.source.pole_set

    def evaluator(self):
        fn = sp.lambdify((T,), (self.p, self.q, self.source.a), modules="math")

        def coeffs(t):
            p, q, a = fn(t)
            return complex(p), complex(q), complex(a)

        return coeffs

    def __repr__(self):
        return f"Linear2ODE(p={sp.factor(self.p)}, q={sp.factor(self.q)})"


def reduce(l: LocusSpec) -> RiccatiODE:
    """The printed Riccati equation of ``l`` with its prefactor folded into a, b, c."""
    var = X if l.reduced_on[1] == "x" else Y
    return RiccatiODE.from_rhs(_parse(l.ptype, l.rhs), var, l.ptype)


def reduce_alternate(l: LocusSpec) -> RiccatiODE | None:
    if l.alternate is None:
        return None
    _, coord, rhs = l.alternate
    var = X if coord == "x" else Y
    return RiccatiODE.from_rhs(_parse(l.ptype, rhs), var, l.ptype)


def linearize(ode: RiccatiODE) -> Linear2ODE:
    a, b, c = ode.coefficients()
    if sp.simplify(a) == 0:
        raise DegenerateQuadratic("cannot linearize a linear equation")
    p = sp.factor(sp.together(-(sp.diff(a, T) / a + b)))
    q = sp.factor(sp.together(a * c))
    return Linear2ODE(p, q, ode)


@dataclass
class LinearSolution:
    """Riccati solution reconstructed from ``(u, u')``.

    ``trajectory`` holds P^1 samples (chart 0 is ``x``, chart 1 is ``1/x``);
    ``pole_times`` are the sample times where ``u`` is close to zero relative
    to ``u'/a``, i.e. where ``x`` passes through infinity.
    """

    trajectory: "_flow.Trajectory"
    pole_times: list[complex]
    u_samples: list[tuple[complex, complex, complex]]


def solve_via_linear(ode: RiccatiODE, x_init: complex, path: "_flow.PathSpec",
                     cfg: "_flow.IntegratorConfig | None" = None,
                     zero_threshold: float = 1e-3) -> LinearSolution:
    """Integrate the linearized equation with ``u(t0) = 1`` and map back to ``x``."""
    cfg = cfg or _flow.IntegratorConfig()
    lin = linearize(ode)
    _flow._check_poles(lin, path, cfg)
    coeffs = lin.evaluator()
    t0 = path.waypoints[0]
    a0 = coeffs(t0)[2]

    def rhs(chart, t, z):
        p, q, _ = coeffs(t)
        return np.array((z[1], -p * z[1] - q * z[0]), dtype=complex)

    def record(t, chart, z):
        return _flow.Sample(t, chart, complex(z[0]), complex(z[1]))

    raw = _flow.integrate_path(rhs, path, (1.0, -a0 * complex(x_init)), 0, cfg, record=record)
    traj = _flow.Trajectory(status=raw.status, waypoint_samples=list(raw.waypoint_samples),
                            message=raw.message)
    poles, us = [], []
    closeness = []
    for s in raw.samples:
        a = coeffs(s.t)[2]
        u, du = s.x, s.y
        us.append((s.t, u, du))
        w = -du / a  # x = w / u
        if abs(w) <= abs(u):
            traj.samples.append(_flow.Sample(s.t, 0, w / u, 0j))
        else:
            traj.samples.append(_flow.Sample(s.t, 1, u / w, 0j))
        closeness.append(abs(u) / math.hypot(abs(u), abs(w)))
    for i, v in enumerate(closeness):
        if v < zero_threshold:
            poles.append(traj.samples[i].t)
    # crossings that fall between samples: sign change of Re(u/w) with small |u/w|
    for i in range(1, len(closeness)):
        a_, b_ = traj.samples[i - 1], traj.samples[i]
        if a_.chart == 1 and b_.chart == 1 and (a_.x * b_.x.conjugate()).real < 0:
            if not any(abs(pt - b_.t) < 1e-12 or abs(pt - a_.t) < 1e-12 for pt in poles):
                poles.append(b_.t)
    return LinearSolution(traj, sorted(poles, key=lambda z: (z.real, z.imag)), us)


# ---------------------------------------------------------------------------
# Checks against the ambient atlas


def _require_atlas(l: LocusSpec):
    if l.ptype.capability is not Capability.FULL_ATLAS:
        raise _atlas.NoAtlas(f"{l.ptype.value} has no ambient vector field here")


def equation_residual(l: LocusSpec, p, t, q: ChartPoint) -> complex:
    eq = l.equation(q.chart)
    g = _numeric(l.ptype, eq.value)(t, *_values(l.ptype, p))
    if eq.coord == "x":
        return q.x - g
    if eq.coord == "y":
        return q.y - g
    return q.x * q.y - g


def invariance_residual(l: LocusSpec, p, t, q: ChartPoint, check: bool = True) -> float:
    """``|d/dt|`` of the defining equation along the Painleve field at ``(t, q)``."""
    _require_atlas(l)
    p = Params(l.ptype, p) if not isinstance(p, Params) else p
    if check:
        if not l.holds(p, 1e-9):
            raise NotOnLocus(f"parameters {p} violate {l.constraint} = 0")
        r = abs(equation_residual(l, p, t, q))
        if r > 1e-8 * max(1.0, abs(q.x), abs(q.y)):
            raise NotOnLocus(f"point {q} is not on {l.name} (residual {r:g})")
    eq = l.equation(q.chart)
    # closed-form chart field: loci such as x4 = 0 are invisible from chart 0
    vx, vy = _atlas.chart_field(l.ptype, q.chart, p, t, (q.x, q.y))
    if eq.coord == "xy":
        return abs(vx * q.y + q.x * vy)
    dg = _numeric(l.ptype, eq.value, True)(t, *_values(l.ptype, p))
    return abs((vx if eq.coord == "x" else vy) - dg)


def sample_params(l: LocusSpec, rng: np.random.Generator, complex_values: bool = True) -> Params:
    """Random parameters on the hyperplane of ``l`` (reducible points avoided)."""
    syms = _param_symbols(l.ptype)
    cons = l.constraint_expr()
    solve_for = next(s for s in syms.values() if cons.has(s))
    while True:
        vals = {}
        for name, s in syms.items():
            if s is solve_for:
                continue
            v = rng.normal() + (1j * rng.normal() if complex_values else 0)
            vals[name] = complex(round(v.real, 6), round(v.imag, 6)) if complex_values else round(float(v), 6)
        # constraints are affine: cons = offset + slope * solve_for
        slope = complex(sp.diff(cons, solve_for))
        offset = complex(cons.subs(solve_for, 0).subs({syms[k]: v for k, v in vals.items()}))
        sol = -offset / slope
        vals[str(solve_for)] = sol if complex_values else float(sol.real)
        p = Params(l.ptype, vals)
        if not l.is_reducible(p, 1e-6):
            return p


def sample_point(l: LocusSpec, chart: int, p, t, rng: np.random.Generator, scale: float = 1.0) -> ChartPoint:
    eq = l.equation(chart)
    free = complex(rng.normal(), rng.normal()) * scale
    g = _numeric(l.ptype, eq.value)(t, *_values(l.ptype, p))
    if eq.coord == "x":
        return ChartPoint(chart, g, free)
    if eq.coord == "y":
        return ChartPoint(chart, free, g)
    return ChartPoint(chart, free, g / free)


def cross_chart_residual(l: LocusSpec, c1: int, c2: int, p, t, q: ChartPoint) -> float:
    """Residual of the chart-``c2`` equation at the image of an on-locus point of chart ``c1``."""
    _require_atlas(l)
    x, y = _atlas.change_chart(l.ptype, c1, c2, p, t, (q.x, q.y))
    return abs(equation_residual(l, p, t, ChartPoint(c2, complex(x), complex(y))))


def restriction_matches(l: LocusSpec) -> bool:
    """Symbolically compare the printed equation with the field restricted to the locus."""
    _require_atlas(l)
    chart, coord = l.reduced_on
    syms = _param_symbols(l.ptype)
    if chart == 0:
        vx, vy = _atlas.get_atlas(l.ptype).vf0(syms, T, X, Y)
    else:
        args, (ex, ey) = _atlas._chart_field_exprs(l.ptype, chart)
        sub = dict(zip(args[:3], (T, X, Y)))
        vx, vy = ex.subs(sub, simultaneous=True), ey.subs(sub, simultaneous=True)
    eq = l.equation(chart)
    g = _parse(l.ptype, eq.value)
    if eq.coord == "x":
        on = {X: g}
    elif eq.coord == "y":
        on = {Y: g}
    else:
        on = {Y: g / X}
    cons = l.constraint_expr()
    solve_for = next(s for s in syms.values() if cons.has(s))
    pin = {solve_for: sp.solve(cons, solve_for)[0]}
    field = vx if coord == "x" else vy
    printed = _parse(l.ptype, l.rhs)
    diff = (field.subs(on) - printed).subs(pin)
    return sp.simplify(sp.together(diff.subs(pin))) == 0


# ---------------------------------------------------------------------------
# Configurations, intersections and rational solutions


def active_loci(pt, p) -> list[LocusSpec]:
    pt = PainleveType.parse(pt)
    p = Params(pt, p) if not isinstance(p, Params) else p
    return [l for l in catalog(pt) if l.holds(p) and not l.is_reducible(p)]


def _bound_value(l: LocusSpec, eq: Equation, p) -> sp.Expr:
    return sp.simplify(_subs_params(l.ptype, _parse(l.ptype, eq.value), p))


def intersect(l1: LocusSpec, l2: LocusSpec, p) -> list[tuple[int, sp.Expr, sp.Expr]]:
    """Common points ``(chart, x(t), y(t))`` of two loci in charts they share."""
    out = []
    for c in sorted(set(l1.chart_ids) & set(l2.chart_ids)):
        e1, e2 = l1.equation(c), l2.equation(c)
        g1, g2 = _bound_value(l1, e1, p), _bound_value(l2, e2, p)
        if "xy" in (e1.coord, e2.coord):
            if e1.coord == e2.coord:
                continue
            lin, glin, k = (e2, g2, g1) if e1.coord == "xy" else (e1, g1, g2)
            if sp.simplify(glin) == 0:
                continue
            other = sp.simplify(k / glin)
            out.append((c, glin, other) if lin.coord == "x" else (c, other, glin))
        elif e1.coord != e2.coord:
            out.append((c, g1, g2) if e1.coord == "x" else (c, g2, g1))
    return out


def config_at_params(pt, p) -> tuple[list[str], rootlat.RootSystemType]:
    """Active loci at ``p`` and the Dynkin type of their intersection graph."""
    loci = active_loci(pt, p)
    names = [l.name for l in loci]
    edges = [(a.name, b.name) for a, b in itertools.combinations(loci, 2) if intersect(a, b, p)]
    if not names:
        return [], rootlat.RootSystemType(())
    diagram = rootlat.DynkinDiagram(frozenset(names), frozenset(frozenset(e) for e in edges))
    labels = diagram.classify()
    if any(isinstance(x, rootlat.AffineType) for x in labels):
        raise RiccatiError(f"intersection graph {edges} is not of finite type")
    return names, rootlat.RootSystemType.from_components(labels)


@dataclass(frozen=True)
class RationalSolution:
    chart: int
    x: str
    y: str
    source: str

    def at(self, t) -> ChartPoint:
        return ChartPoint(self.chart, complex(sp.sympify(self.x).subs(T, t)),
                          complex(sp.sympify(self.y).subs(T, t)))

    def derivative(self, t) -> tuple[complex, complex]:
        return (complex(sp.diff(sp.sympify(self.x), T).subs(T, t)),
                complex(sp.diff(sp.sympify(self.y), T).subs(T, t)))


def rational_points(pt, p) -> list[RationalSolution]:
    """Rational solutions from pairwise locus intersections (and ~E7 at alpha = 0)."""
    pt = PainleveType.parse(pt)
    p = Params(pt, p) if not isinstance(p, Params) else p
    out = []
    for a, b in itertools.combinations(active_loci(pt, p), 2):
        for c, x, y in intersect(a, b, p):
            out.append(RationalSolution(c, str(x), str(y), f"{a.name} & {b.name}"))
    if pt is E7 and complex(p["alpha"]) == 0:
        # the integer-alpha family is only written down at alpha = 0
        out.append(RationalSolution(0, "0", "t/2", "alpha = 0"))
    return out


def solution_residual(pt, p, sol: RationalSolution, t) -> float:
    """``|v(t, q(t)) - q'(t)|`` for a closed-form solution curve."""
    q = sol.at(t)
    v = _atlas.vf_any_chart(pt, q.chart, p, t, (q.x, q.y))
    d = sol.derivative(t)
    return float(math.hypot(abs(v[0] - d[0]), abs(v[1] - d[1])))


def confluence_check() -> dict:
    """The ~E6 family ``x y = k0`` degenerating to ``C0 + Cinf`` at ``k0 = 0``."""
    conf = get_locus(E6, "Ck0=kinf")
    c0, cinf = get_locus(E6, "C0"), get_locus(E6, "Cinf")
    k0 = _param_symbols(E6)["k0"]
    kinf = _param_symbols(E6)["kinf"]
    poly = conf.equation(0).expr(E6)

    def factors(expr):
        _, fl = sp.factor_list(sp.expand(expr), X, Y)
        return [str(f) for f, m in fl for _ in range(m)]

    split = factors(poly.subs(k0, 0))
    expected = sorted([str(c0.equation(0).expr(E6)), str(cinf.equation(0).expr(E6))])
    rx, ry = reduce(conf), reduce_alternate(conf)
    same_x = all(sp.simplify(u.subs(k0, 0) - v.subs(k0, 0)) == 0
                 for u, v in zip(rx.coefficients(), reduce(cinf).coefficients()))
    # C0 lives at k0 = 0 and the confluence at k0 = kinf, so both pin kinf = 0
    same_y = all(sp.simplify(u.subs(k0, 0) - v.subs({k0: 0, kinf: 0})) == 0
                 for u, v in zip(ry.coefficients(), reduce(c0).coefficients()))
    generic = factors(poly.subs(k0, 1))
    return {
        "factors_at_k0_0": sorted(split),
        "matches_C0_Cinf": sorted(split) == expected,
        "x_equation_matches_Cinf": same_x,
        "y_equation_matches_C0": same_y,
        "factors_at_k0_1": generic,
        "irreducible_at_k0_1": len(generic) == 1,
    }


def nonexistence(pt) -> dict:
    pt = PainleveType.parse(pt)
    if catalog(pt):
        raise NotApplicable(f"{pt.value} has Riccati loci")
    comp = rootlat.complement_types(pt.value)
    return {
        "type": pt.base,
        "catalog": [],
        "complement_types": sorted(str(t) for t in comp),
        "reason": (f"no root sublattice of E8 contains {pt.base} plus a further root, "
                   f"so S - Y carries no (-2)-curve and the equation has no Riccati solutions"),
    }


def locus_dump(pt) -> dict:
    pt = PainleveType.parse(pt)
    return {"type": pt.base, "loci": [l.to_dict() for l in catalog(pt)]}


def locus_dump_json(pt) -> str:
    return json.dumps(locus_dump(pt), indent=2)
