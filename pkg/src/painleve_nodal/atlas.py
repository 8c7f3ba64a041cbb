"""Chart atlases of Painleve phase spaces with their vector fields.

Three types carry a complete atlas: ~E7 (P_II), ~E6 (P_IV) and ~D4 (P_VI).
Each atlas is a set of affine charts ``(x_i, y_i)`` glued by explicit
birational transitions, plus the Painleve vector field written in chart 0.
The field in any other chart is the pushforward of the chart-0 field.

Transition and vector-field formulas only use ``+ - * /`` and integer
powers, so the same code evaluates on complex numbers, on
:class:`~painleve_nodal.dual.Dual` numbers and on sympy symbols.
"""

from __future__ import annotations

import enum
from collections.abc import Mapping
from dataclasses import dataclass
from functools import cache
from typing import Callable

import numpy as np

from .dual import jacobian


class AtlasError(ValueError):
    pass


class NoAtlas(AtlasError):
    pass


class PunctureHit(AtlasError):
    pass


class NotAdjacent(AtlasError):
    pass


class OutsideOverlap(AtlasError):
    pass


class Capability(enum.Enum):
    FULL_ATLAS = "FullAtlas"
    RICCATI_CATALOG_ONLY = "RiccatiCatalogOnly"
    NONEXISTENCE_ONLY = "NonExistenceOnly"


class PainleveType(enum.Enum):
    E7t = "E7t"
    E6t = "E6t"
    D4t = "D4t"
    D5t = "D5t"
    D6t = "D6t"
    E8t = "E8t"
    D7t = "D7t"
    D8t = "D8t"

    @classmethod
    def parse(cls, text: "str | PainleveType") -> "PainleveType":
        if isinstance(text, PainleveType):
            return text
        s = str(text).strip().replace("~", "").replace("̃", "")
        aliases = {"PI": "E8", "PII": "E7", "PIV": "E6", "PV": "D5", "PVI": "D4"}
        s = aliases.get(s.upper().replace("_", ""), s)
        if not s.endswith("t"):
            s += "t"
        s = s[0].upper() + s[1:]
        try:
            return cls(s)
        except ValueError:
            raise AtlasError(f"unknown Painleve type {text!r}") from None

    @property
    def base(self) -> str:
        return self.value[:-1]

    @property
    def capability(self) -> Capability:
        if self in (PainleveType.E7t, PainleveType.E6t, PainleveType.D4t):
            return Capability.FULL_ATLAS
        if self in (PainleveType.D5t, PainleveType.D6t):
            return Capability.RICCATI_CATALOG_ONLY
        return Capability.NONEXISTENCE_ONLY

    @property
    def param_names(self) -> tuple[str, ...]:
        return PARAM_NAMES[self]

    @property
    def punctures(self) -> frozenset[complex]:
        return PUNCTURES[self]


PARAM_NAMES = {
    PainleveType.E7t: ("alpha",),
    PainleveType.E6t: ("k0", "kinf"),
    PainleveType.D4t: ("k0", "k1", "kt", "kinf"),
    PainleveType.D5t: ("k0", "kt", "kinf"),
    PainleveType.D6t: ("k0", "kinf"),
    PainleveType.E8t: (),
    PainleveType.D7t: (),
    PainleveType.D8t: (),
}

PUNCTURES = {
    PainleveType.E7t: frozenset(),
    PainleveType.E6t: frozenset(),
    PainleveType.D4t: frozenset({0j, 1 + 0j}),
    PainleveType.D5t: frozenset({0j}),
    PainleveType.D6t: frozenset({0j}),
    PainleveType.E8t: frozenset(),
    PainleveType.D7t: frozenset(),
    PainleveType.D8t: frozenset(),
}


class Params(Mapping):
    """Named parameter values for one Painleve type (exactly its names)."""

    def __init__(self, ptype: "PainleveType | str", values: Mapping | None = None, **kw):
        self.type = PainleveType.parse(ptype)
        vals = dict(values or {}, **kw)
        names = self.type.param_names
        extra = set(vals) - set(names)
        missing = set(names) - set(vals)
        if extra or missing:
            raise AtlasError(
                f"{self.type.value} takes parameters {names}; "
                f"missing {sorted(missing)}, unexpected {sorted(extra)}"
            )
        self._values = {n: vals[n] for n in names}

    def __getitem__(self, k):
        return self._values[k]

    def __iter__(self):
        return iter(self._values)

    def __len__(self):
        return len(self._values)

    def as_tuple(self) -> tuple:
        return tuple(self._values.values())

    def __repr__(self):
        inner = ", ".join(f"{k}={v!r}" for k, v in self._values.items())
        return f"Params({self.type.value}, {inner})"


@dataclass(frozen=True)
class ChartPoint:
    chart: int
    x: complex
    y: complex

    def __post_init__(self):
        if not (np.isfinite(self.x) and np.isfinite(self.y)):
            raise AtlasError("chart points must be finite; switch charts instead")

    @property
    def size(self) -> float:
        return max(abs(self.x), abs(self.y))


# ---------------------------------------------------------------------------
# Atlas data
#
# Step functions take (p, t, x, y) in the source chart and return the
# target-chart coordinates.  Parameter access is by name so that p can hold
# numbers or sympy symbols.


def _e7_vf(p, t, x, y):
    return y - x ** 2 - t / 2, 2 * x * y + (2 * p["alpha"] + 1) / 2


def _e7_c(p):
    # y0 = x1 (c - x1 y1) with c = -alpha - 1/2
    return (-2 * p["alpha"] - 1) / 2


def _e7_steps():
    def s10(p, t, x, y):
        return 1 / x, x * (_e7_c(p) - x * y)

    def s01(p, t, x, y):
        return 1 / x, (_e7_c(p) - y * x) * x

    def s20(p, t, x, y):
        return 1 / x, 2 / x ** 2 + t + (2 * p["alpha"] - 1) / 2 * x - y * x ** 2

    def s02(p, t, x, y):
        return 1 / x, (2 * x ** 2 + t + (2 * p["alpha"] - 1) / (2 * x) - y) * x ** 2

    return {(1, 0): s10, (0, 1): s01, (2, 0): s20, (0, 2): s02}


def _e6_vf(p, t, x, y):
    k0, ki = p["k0"], p["kinf"]
    return (4 * x * y - x ** 2 - 2 * t * x - 2 * k0,
            -2 * y ** 2 + 2 * (x + t) * y - ki)


def _e6_steps():
    def s10(p, t, x, y):
        return y * (p["k0"] - x * y), 1 / y

    def s01(p, t, x, y):
        return y * (p["k0"] - x * y), 1 / y

    def s20(p, t, x, y):
        return 1 / x, x * (p["kinf"] - x * y)

    def s02(p, t, x, y):
        return 1 / x, x * (p["kinf"] - x * y)

    def s32(p, t, x, y):
        c = 2 * p["kinf"] - p["k0"] + 1
        return x, -1 / (2 * x ** 3) - t / x ** 2 + c / x + y

    def s23(p, t, x, y):
        c = 2 * p["kinf"] - p["k0"] + 1
        return x, 1 / (2 * x ** 3) + t / x ** 2 - c / x + y

    return {(1, 0): s10, (0, 1): s01, (2, 0): s20, (0, 2): s02, (3, 2): s32, (2, 3): s23}


def _d4_vf(p, t, x, y):
    k0, k1, kt, ki = p["k0"], p["k1"], p["kt"], p["kinf"]
    den = t * (t - 1)
    # A with the apparent poles at x = 0, 1, t cleared
    a = (2 * x * (x - 1) * (x - t) * y
         - (k0 * (x - 1) * (x - t) + k1 * x * (x - t) + (kt - 1) * x * (x - 1))) / den
    s = k0 + k1 + kt - 1
    b = -((3 * x ** 2 - 2 * (t + 1) * x + t) * y ** 2
          - (2 * s * x - (k0 + k1) * t - k0 - kt + 1) * y
          + (s ** 2 - ki ** 2) / 4) / den
    return a, b


def _d4_half(p):
    return (p["k0"] + p["k1"] + p["kt"] - 1 + p["kinf"]) / 2


def _d4_steps():
    def s10(p, t, x, y):
        return y * (p["k0"] - x * y), 1 / y

    def s01(p, t, x, y):
        return y * (p["k0"] - x * y), 1 / y

    def s20(p, t, x, y):
        return 1 + y * (p["k1"] - x * y), 1 / y

    def s02(p, t, x, y):
        return y * (p["k1"] + y - x * y), 1 / y

    def s30(p, t, x, y):
        return t + y * (p["kt"] - x * y), 1 / y

    def s03(p, t, x, y):
        return y * (p["kt"] + t * y - x * y), 1 / y

    def s40(p, t, x, y):
        return 1 / x, x * (_d4_half(p) - x * y)

    def s04(p, t, x, y):
        return 1 / x, x * (_d4_half(p) - x * y)

    def s54(p, t, x, y):
        return y * (p["kinf"] - x * y), 1 / y

    def s45(p, t, x, y):
        return y * (p["kinf"] - x * y), 1 / y

    return {(1, 0): s10, (0, 1): s01, (2, 0): s20, (0, 2): s02, (3, 0): s30, (0, 3): s03,
            (4, 0): s40, (0, 4): s04, (5, 4): s54, (4, 5): s45}


@dataclass(frozen=True)
class AtlasSpec:
    ptype: PainleveType
    n_charts: int
    vf0: Callable
    steps: dict
    parent: dict  # chart -> neighbour one step closer to chart 0

    def route(self, i: int, j: int) -> list[int]:
        """Charts visited going from ``i`` to ``j`` through the chart tree."""
        def up(c):
            path = [c]
            while c != 0:
                c = self.parent[c]
                path.append(c)
            return path

        a, b = up(i), up(j)
        while len(a) > 1 and len(b) > 1 and a[-2] == b[-2]:
            a.pop()
            b.pop()
        return a + b[-2::-1]


ATLASES = {
    PainleveType.E7t: AtlasSpec(PainleveType.E7t, 3, _e7_vf, _e7_steps(), {1: 0, 2: 0}),
    PainleveType.E6t: AtlasSpec(PainleveType.E6t, 4, _e6_vf, _e6_steps(), {1: 0, 2: 0, 3: 2}),
    PainleveType.D4t: AtlasSpec(PainleveType.D4t, 6, _d4_vf, _d4_steps(),
                                {1: 0, 2: 0, 3: 0, 4: 0, 5: 4}),
}


def get_atlas(pt: "PainleveType | str") -> AtlasSpec:
    pt = PainleveType.parse(pt)
    if pt not in ATLASES:
        raise NoAtlas(f"no chart atlas for {pt.value} ({pt.capability.value})")
    return ATLASES[pt]


def charts(pt) -> list[int]:
    return list(range(get_atlas(pt).n_charts))


def adjacent_pairs(pt) -> list[tuple[int, int]]:
    return sorted(get_atlas(pt).steps)


def _check_params(pt: PainleveType, p) -> Mapping:
    if isinstance(p, Params):
        if p.type != pt:
            raise AtlasError(f"parameters for {p.type.value} given to {pt.value}")
        return p
    return Params(pt, p)


def _check_time(pt: PainleveType, t: complex):
    if complex(t) in pt.punctures:
        raise PunctureHit(f"t = {t} is a puncture of {pt.value}")


def vf_chart0(pt, p, t, x, y) -> tuple[complex, complex]:
    """Painleve vector field ``(dx0/dt, dy0/dt)`` in chart 0."""
    atlas = get_atlas(pt)
    p = _check_params(atlas.ptype, p)
    _check_time(atlas.ptype, t)
    return atlas.vf0(p, t, x, y)


def _step(atlas: AtlasSpec, i: int, j: int, p, t, x, y):
    try:
        return atlas.steps[(i, j)](p, t, x, y)
    except ZeroDivisionError:
        raise OutsideOverlap(f"point outside the overlap of charts {i} and {j}") from None


def transition(pt, frm: int, to: int, p, t, q) -> tuple[complex, complex]:
    """Coordinates in chart ``to`` of the point ``q`` given in chart ``frm``."""
    atlas = get_atlas(pt)
    p = _check_params(atlas.ptype, p)
    if frm == to:
        return tuple(q)
    if (frm, to) not in atlas.steps:
        raise NotAdjacent(f"charts {frm} and {to} of {atlas.ptype.value} have no direct transition")
    return _step(atlas, frm, to, p, t, *q)


def change_chart(pt, frm: int, to: int, p, t, q) -> tuple[complex, complex]:
    """Like :func:`transition` but composes steps along the chart tree."""
    atlas = get_atlas(pt)
    p = _check_params(atlas.ptype, p)
    _check_chart(atlas, frm)
    _check_chart(atlas, to)
    x, y = q
    route = atlas.route(frm, to)
    for a, b in zip(route, route[1:]):
        x, y = _step(atlas, a, b, p, t, x, y)
    return x, y


def _check_chart(atlas: AtlasSpec, c: int):
    if not 0 <= c < atlas.n_charts:
        raise AtlasError(f"chart {c} out of range for {atlas.ptype.value}")


def _pushforward(atlas: AtlasSpec, i: int, j: int, p, t, q, v):
    """Push the tangent ``(1, v)`` at ``q`` in chart ``i`` to chart ``j``.

    Returns ``(q_j, v_j)`` with ``v_j = J v + dT/dt``.
    """
    x, y = q
    vx, vy = v
    route = atlas.route(i, j)
    for a, b in zip(route, route[1:]):
        fn = atlas.steps[(a, b)]
        try:
            (nx, ny), (cx, cy, ct) = jacobian(lambda X, Y, T: fn(p, T, X, Y), (x, y, t), (0, 1, 2))
        except ZeroDivisionError:
            raise OutsideOverlap(f"point outside the overlap of charts {a} and {b}") from None
        vx, vy = (cx[0] * vx + cy[0] * vy + ct[0], cx[1] * vx + cy[1] * vy + ct[1])
        x, y = nx, ny
    return (x, y), (vx, vy)


def vf_any_chart(pt, c: int, p, t, q) -> tuple[complex, complex]:
    """Vector field in chart ``c`` by dual-number pushforward from chart 0."""
    atlas = get_atlas(pt)
    p = _check_params(atlas.ptype, p)
    _check_time(atlas.ptype, t)
    _check_chart(atlas, c)
    if c == 0:
        return atlas.vf0(p, t, *q)
    q0 = change_chart(atlas.ptype, c, 0, p, t, q)
    v0 = atlas.vf0(p, t, *q0)
    return _pushforward(atlas, 0, c, p, t, q0, v0)[1]


# ---------------------------------------------------------------------------
# Closed-form chart fields
#
# Pushing the field through chart 0 numerically cancels badly near the
# divisor that chart 0 cannot see (e.g. x1 -> 0 for ~E7), which is exactly
# where trajectories sit after a chart switch.  The closed forms below are
# derived once with sympy from the same transition code and are polynomial
# in the chart coordinates.


@cache
def _chart_field_exprs(pt: PainleveType, c: int):
    import sympy as sp

    atlas = get_atlas(pt)
    names = pt.param_names
    syms = tuple(sp.Symbol(n) for n in names)
    p = dict(zip(names, syms))
    t, X, Y = sp.symbols("t X Y")
    x0, y0 = sp.symbols("x0 y0")
    route = atlas.route(0, c)
    # forward map chart 0 -> chart c as expressions in (x0, y0, t)
    fx, fy = x0, y0
    for a, b in zip(route, route[1:]):
        fx, fy = atlas.steps[(a, b)](p, t, fx, fy)
    # inverse map chart c -> chart 0 as expressions in (X, Y, t)
    gx, gy = X, Y
    back = route[::-1]
    for a, b in zip(back, back[1:]):
        gx, gy = atlas.steps[(a, b)](p, t, gx, gy)
    v = atlas.vf0(p, t, x0, y0)
    out = []
    for f in (fx, fy):
        expr = sp.diff(f, x0) * v[0] + sp.diff(f, y0) * v[1] + sp.diff(f, t)
        expr = expr.subs({x0: gx, y0: gy}, simultaneous=True)
        out.append(sp.factor(sp.cancel(sp.together(expr))))
    return (t, X, Y, *syms), tuple(out)


@cache
def _chart_field_fn(pt: PainleveType, c: int):
    import sympy as sp

    args, exprs = _chart_field_exprs(pt, c)
    return sp.lambdify(args, exprs, modules="cmath")


def chart_field_expressions(pt, c: int):
    """Sympy expressions ``(dX/dt, dY/dt)`` in chart ``c`` (symbols t, X, Y, params)."""
    return _chart_field_exprs(PainleveType.parse(pt), c)[1]


def chart_field(pt, c: int, p, t, q) -> tuple[complex, complex]:
    """Vector field in chart ``c`` from the closed-form pushforward."""
    atlas = get_atlas(pt)
    p = _check_params(atlas.ptype, p)
    _check_time(atlas.ptype, t)
    _check_chart(atlas, c)
    if c == 0:
        return atlas.vf0(p, t, *q)
    fn = _chart_field_fn(atlas.ptype, c)
    dx, dy = fn(t, q[0], q[1], *p.as_tuple())
    return complex(dx), complex(dy)


def consistency_residual(pt, i: int, j: int, p, t, q) -> float:
    """Mismatch between the chart-``j`` field and the pushforward of the chart-``i`` field."""
    atlas = get_atlas(pt)
    p = _check_params(atlas.ptype, p)
    if i == j:
        return 0.0
    vi = chart_field(atlas.ptype, i, p, t, q)
    qj, pushed = _pushforward(atlas, i, j, p, t, q, vi)
    vj = chart_field(atlas.ptype, j, p, t, qj)
    return float(np.hypot(abs(vj[0] - pushed[0]), abs(vj[1] - pushed[1])))


def round_trip_error(pt, i: int, j: int, p, t, q) -> float:
    """Relative error of ``T_{j->i}(T_{i->j}(q))`` against ``q``."""
    qj = change_chart(pt, i, j, p, t, q)
    back = change_chart(pt, j, i, p, t, qj)
    scale = max(1.0, abs(q[0]), abs(q[1]))
    return max(abs(back[0] - q[0]), abs(back[1] - q[1])) / scale


def field_function(pt, c: int, p) -> Callable:
    """Fast ``f(t, x, y)`` for the field in chart ``c`` with ``p`` bound."""
    atlas = get_atlas(pt)
    p = _check_params(atlas.ptype, p)
    _check_chart(atlas, c)
    if c == 0:
        vf0 = atlas.vf0
        return lambda t, x, y: vf0(p, t, x, y)
    fn = _chart_field_fn(atlas.ptype, c)
    vals = p.as_tuple()
    return lambda t, x, y: fn(t, x, y, *vals)
