"""Adaptive complex-time integration with chart switching at poles.

Time runs along straight segments between complex waypoints.  Each segment
is parametrized by arclength ``s`` so the stepper only ever sees a real
independent variable: ``dz/ds = e * f(t(s), z)`` with ``e`` the unit
direction of the segment.

The stepper is the Dormand-Prince 5(4) pair with a PI step-size controller.
"""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

import numpy as np

from . import atlas as _atlas
from .atlas import ChartPoint, OutsideOverlap, PainleveType, PunctureHit


class NoChartAvailable(RuntimeError):
    pass


class Status(enum.Enum):
    COMPLETED = "Completed"
    STEP_LIMIT = "StepLimit"
    NO_CHART_AVAILABLE = "NoChartAvailable"


@dataclass(frozen=True)
class IntegratorConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_step: float = 0.05
    switch_threshold: float = 1e3
    min_puncture_distance: float = 0.05
    max_steps: int = 200_000

    def __post_init__(self):
        for name in ("rel_tol", "abs_tol", "max_step", "switch_threshold", "min_puncture_distance"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.rel_tol < 10 * np.finfo(float).eps:
            raise ValueError("rel_tol below 10 * machine epsilon")
        if self.max_steps < 1:
            raise ValueError("max_steps must be positive")


def _segment_distance(a: complex, b: complex, p: complex) -> float:
    d = b - a
    if d == 0:
        return abs(p - a)
    s = ((p - a) * d.conjugate()).real / abs(d) ** 2
    s = min(1.0, max(0.0, s))
    return abs(a + s * d - p)


@dataclass(frozen=True)
class PathSpec:
    """Piecewise-linear path through complex time."""

    waypoints: tuple[complex, ...]
    punctures: frozenset = frozenset()
    min_puncture_distance: float = 0.05

    def __post_init__(self):
        pts = tuple(complex(w) for w in self.waypoints)
        if not pts:
            raise ValueError("path needs at least one waypoint")
        object.__setattr__(self, "waypoints", pts)
        for a, b in zip(pts, pts[1:]):
            if a == b:
                raise ValueError("consecutive waypoints must differ")
        for pole in self.punctures:
            segs = list(zip(pts, pts[1:])) or [(pts[0], pts[0])]
            for a, b in segs:
                if _segment_distance(a, b, complex(pole)) < self.min_puncture_distance:
                    raise PunctureHit(f"path passes within {self.min_puncture_distance} of t = {pole}")

    @classmethod
    def for_type(cls, waypoints, ptype, cfg: IntegratorConfig | None = None) -> "PathSpec":
        cfg = cfg or IntegratorConfig()
        return cls(tuple(waypoints), PainleveType.parse(ptype).punctures, cfg.min_puncture_distance)

    @property
    def length(self) -> float:
        return sum(abs(b - a) for a, b in zip(self.waypoints, self.waypoints[1:]))


class Sample(NamedTuple):
    t: complex
    chart: int
    x: complex
    y: complex


class ChartSwitch(NamedTuple):
    t: complex
    frm: int
    to: int


@dataclass
class Trajectory:
    samples: list[Sample] = field(default_factory=list)
    events: list[ChartSwitch] = field(default_factory=list)
    status: Status = Status.COMPLETED
    waypoint_samples: list[int] = field(default_factory=list)
    message: str = ""

    @property
    def final(self) -> Sample:
        return self.samples[-1]

    def at_waypoints(self) -> list[Sample]:
        return [self.samples[i] for i in self.waypoint_samples]

    def to_csv(self, fh=None) -> str | None:
        """Write ``t_re,t_im,chart,x_re,x_im,y_re,y_im`` rows (17 significant digits)."""
        own = fh is None
        if own:
            fh = io.StringIO()
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t_re", "t_im", "chart", "x_re", "x_im", "y_re", "y_im"])
        for s in self.samples:
            w.writerow([_fmt(s.t.real), _fmt(s.t.imag), s.chart, _fmt(s.x.real), _fmt(s.x.imag),
                        _fmt(s.y.real), _fmt(s.y.imag)])
        return fh.getvalue() if own else None

    def events_dict(self) -> dict:
        return {
            "status": self.status.value,
            "message": self.message,
            "events": [{"t": [_fmt(e.t.real), _fmt(e.t.imag)], "from": e.frm, "to": e.to}
                       for e in self.events],
        }


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


# Dormand-Prince 5(4)
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_B4 = (5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40)
_E = tuple(a - b for a, b in zip(_B5, _B4))


def _dopri_step(f, s, z, h, k1):
    ks = [k1]
    for i in range(1, 7):
        zi = z + h * sum(a * k for a, k in zip(_A[i], ks))
        ks.append(f(s + _C[i] * h, zi))
    znew = z + h * sum(b * k for b, k in zip(_B5, ks) if b)
    err = h * sum(e * k for e, k in zip(_E, ks) if e)
    return znew, err, ks[-1]


Rhs = Callable[[int, complex, np.ndarray], np.ndarray]
Switch = Callable[[int, complex, np.ndarray], "tuple[int, np.ndarray] | None"]


def integrate_path(rhs: Rhs, path: PathSpec, z0, chart0: int, cfg: IntegratorConfig,
                   switch: Switch | None = None, record: Callable | None = None) -> Trajectory:
    """Generic driver.

    ``rhs(chart, t, z)`` is the vector field, ``switch(chart, t, z)`` may return a
    new ``(chart, z)`` after an accepted step (or raise ``NoChartAvailable``), and
    ``record(t, chart, z)`` turns a state into a :class:`Sample`.
    """
    record = record or (lambda t, c, z: Sample(t, c, complex(z[0]), complex(z[1]) if len(z) > 1 else 0j))
    z = np.array(z0, dtype=complex)
    chart = chart0
    traj = Trajectory()
    t = path.waypoints[0]
    traj.samples.append(record(t, chart, z))
    traj.waypoint_samples.append(0)
    steps = 0
    h = None
    for ta, tb in zip(path.waypoints, path.waypoints[1:]):
        length = abs(tb - ta)
        e = (tb - ta) / length
        s = 0.0

        def f(si, zi, _e=e, _ta=ta):
            return _e * rhs(chart, _ta + si * _e, zi)

        def safe_f(si, zi):
            with np.errstate(over="raise", invalid="raise"):
                try:
                    out = f(si, zi)
                except (OutsideOverlap, ZeroDivisionError, OverflowError, FloatingPointError):
                    return None
            if not np.all(np.isfinite(out)):
                return None
            return out

        k1 = safe_f(s, z)
        if k1 is None:
            traj.status = Status.STEP_LIMIT
            traj.message = f"vector field not finite at t = {ta}"
            return traj
        if h is None:
            scale = cfg.abs_tol + cfg.rel_tol * np.abs(z)
            d0 = np.sqrt(np.mean(np.abs(z / scale) ** 2))
            d1 = np.sqrt(np.mean(np.abs(k1 / scale) ** 2))
            h = 0.01 * d0 / d1 if d0 > 1e-5 and d1 > 1e-5 else 1e-6
            h = min(h, cfg.max_step, length)
        err_prev = 1.0
        while s < length:
            if steps >= cfg.max_steps:
                traj.status = Status.STEP_LIMIT
                traj.message = f"max_steps={cfg.max_steps} reached"
                return traj
            h = min(h, cfg.max_step)
            last = s + h >= length * (1 - 1e-13)
            if last:
                h = length - s
            if h <= 1e-15 * max(1.0, length):
                traj.status = Status.STEP_LIMIT
                traj.message = f"step size underflow near t = {ta + s * e}"
                return traj
            ks_ok = True
            try:
                with np.errstate(over="raise", invalid="raise"):
                    znew, err, klast = _stepper(safe_f, s, z, h, k1)
            except _BadStage:
                ks_ok = False
            if ks_ok:
                sc = cfg.abs_tol + cfg.rel_tol * np.maximum(np.abs(z), np.abs(znew))
                en = float(np.sqrt(np.mean(np.abs(err / sc) ** 2)))
            else:
                en = math.inf
            steps += 1
            if en <= 1.0:
                s = length if last else s + h
                z = znew
                k1 = klast
                tcur = tb if last else ta + s * e
                fac = 0.9 * max(en, 1e-10) ** (-0.7 / 5) * err_prev ** (0.4 / 5)
                err_prev = max(en, 1e-4)
                h = h * min(5.0, max(0.2, fac))
                if switch is not None:
                    try:
                        res = switch(chart, tcur, z)
                    except NoChartAvailable as exc:
                        traj.samples.append(record(tcur, chart, z))
                        traj.status = Status.NO_CHART_AVAILABLE
                        traj.message = str(exc)
                        return traj
                    if res is not None:
                        new_chart, z = res
                        z = np.array(z, dtype=complex)
                        traj.events.append(ChartSwitch(tcur, chart, new_chart))
                        chart = new_chart
                        k1 = safe_f(s, z)
                        if k1 is None:
                            traj.status = Status.STEP_LIMIT
                            traj.message = f"vector field not finite after switch at t = {tcur}"
                            return traj
                traj.samples.append(record(tcur, chart, z))
            else:
                fac = 0.9 * en ** (-1 / 5) if math.isfinite(en) else 0.2
                h = h * min(1.0, max(0.2, fac))
        traj.waypoint_samples.append(len(traj.samples) - 1)
    return traj


class _BadStage(Exception):
    pass


def _stepper(safe_f, s, z, h, k1):
    def g(si, zi):
        out = safe_f(si, zi)
        if out is None:
            raise _BadStage
        return out

    znew, err, klast = _dopri_step(g, s, z, h, k1)
    if not np.all(np.isfinite(znew)):
        raise _BadStage
    return znew, err, klast


# ---------------------------------------------------------------------------
# Painleve systems on an atlas


def switch_chart(pt, p, t, q: ChartPoint, rho: float) -> ChartPoint:
    """Representation of ``q`` with both coordinates at most ``rho``.

    Returns ``q`` unchanged if it is already small enough, otherwise the
    image in the chart minimizing ``max(|x|, |y|)`` (lowest index on ties).
    """
    if q.size <= rho:
        return q
    pt = PainleveType.parse(pt)
    best = None
    for c in _atlas.charts(pt):
        if c == q.chart:
            continue
        try:
            with np.errstate(over="ignore", invalid="ignore"):
                x, y = _atlas.change_chart(pt, q.chart, c, p, t, (q.x, q.y))
        except (OutsideOverlap, ZeroDivisionError, OverflowError):
            continue
        if not (np.isfinite(x) and np.isfinite(y)):
            continue
        size = max(abs(x), abs(y))
        if best is None or size < best[0]:
            best = (size, c, x, y)
    if best is None or best[0] > rho:
        raise NoChartAvailable(f"no chart of {pt.value} holds the point below rho={rho} at t = {t}")
    return ChartPoint(best[1], complex(best[2]), complex(best[3]))


def integrate_atlas(pt, p, path: PathSpec, init: ChartPoint, cfg: IntegratorConfig | None = None) -> Trajectory:
    """Integrate the Painleve system, switching charts whenever a coordinate exceeds rho."""
    cfg = cfg or IntegratorConfig()
    pt = PainleveType.parse(pt)
    spec = _atlas.get_atlas(pt)
    p = p if isinstance(p, _atlas.Params) else _atlas.Params(pt, p)
    for pole in pt.punctures:
        if path.punctures != pt.punctures and any(
            _segment_distance(a, b, pole) < cfg.min_puncture_distance
            for a, b in (list(zip(path.waypoints, path.waypoints[1:])) or [(path.waypoints[0],) * 2])
        ):
            raise PunctureHit(f"path passes within {cfg.min_puncture_distance} of t = {pole}")
    fields = {c: _atlas.field_function(pt, c, p) for c in range(spec.n_charts)}

    def rhs(chart, t, z):
        dx, dy = fields[chart](t, z[0], z[1])
        return np.array((dx, dy), dtype=complex)

    def switch(chart, t, z):
        q = ChartPoint(chart, complex(z[0]), complex(z[1]))
        if q.size <= cfg.switch_threshold:
            return None
        new = switch_chart(pt, p, t, q, cfg.switch_threshold)
        return new.chart, (new.x, new.y)

    return integrate_path(rhs, path, (init.x, init.y), init.chart, cfg, switch)


# ---------------------------------------------------------------------------
# Scalar Riccati equations on P^1 = {x} u {u = 1/x}


def integrate_riccati(ode, path: PathSpec, x0: complex, cfg: IntegratorConfig | None = None) -> Trajectory:
    """Integrate ``x' = a x^2 + b x + c`` on P^1.

    Chart 0 holds ``x``, chart 1 holds ``u = 1/x`` with
    ``u' = -(a + b u + c u^2)``.  Samples store the chart coordinate in ``x``.
    """
    cfg = cfg or IntegratorConfig()
    _check_poles(ode, path, cfg)
    coeffs = ode.evaluator()

    def rhs(chart, t, z):
        a, b, c = coeffs(t)
        v = z[0]
        if chart == 0:
            return np.array((a * v * v + b * v + c,), dtype=complex)
        return np.array((-(a + b * v + c * v * v),), dtype=complex)

    def switch(chart, t, z):
        if abs(z[0]) <= cfg.switch_threshold:
            return None
        return 1 - chart, (1 / z[0],)

    start = complex(x0)
    chart0 = 0
    if not np.isfinite(start):
        start, chart0 = 0j, 1
    elif abs(start) > cfg.switch_threshold:
        start, chart0 = 1 / start, 1
    return integrate_path(rhs, path, (start,), chart0, cfg, switch)


def _check_poles(ode, path: PathSpec, cfg: IntegratorConfig):
    pts = path.waypoints
    segs = list(zip(pts, pts[1:])) or [(pts[0], pts[0])]
    for pole in ode.pole_set:
        if any(_segment_distance(a, b, complex(pole)) < cfg.min_puncture_distance for a, b in segs):
            raise PunctureHit(f"path passes within {cfg.min_puncture_distance} of coefficient pole t = {pole}")


def p1_value(sample: Sample) -> complex:
    """The point of P^1 a Riccati sample represents (``inf`` at u = 0)."""
    if sample.chart == 0:
        return sample.x
    return complex(math.inf) if sample.x == 0 else 1 / sample.x


def p1_gap(a: Sample, b: Sample) -> float:
    """Distance between two P^1 samples, measured in whichever chart is bounded by 1.

    Uses ``|x_a - x_b|`` when both points satisfy ``|x| <= 1`` and
    ``|u_a - u_b|`` when both satisfy ``|u| <= 1``; otherwise the chordal
    distance.
    """
    xa, xb = p1_value(a), p1_value(b)
    if abs(xa) <= 1 and abs(xb) <= 1:
        return abs(xa - xb)
    ua = 0j if not np.isfinite(xa) else 1 / xa if xa != 0 else complex(math.inf)
    ub = 0j if not np.isfinite(xb) else 1 / xb if xb != 0 else complex(math.inf)
    if abs(ua) <= 1 and abs(ub) <= 1:
        return abs(ua - ub)
    return abs(xa - xb) / (math.sqrt(1 + abs(xa) ** 2) * math.sqrt(1 + abs(xb) ** 2))
