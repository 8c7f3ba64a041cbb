import numpy as np
import pytest
import sympy as sp

from painleve_nodal import atlas as A
from painleve_nodal import flow as F
from painleve_nodal.riccati import RiccatiODE

E7, E6 = A.PainleveType.E7t, A.PainleveType.E6t


def square_ode():
    return RiccatiODE(1, 0, 0)


def test_config_validation():
    with pytest.raises(ValueError):
        F.IntegratorConfig(rel_tol=0)
    with pytest.raises(ValueError):
        F.IntegratorConfig(rel_tol=1e-17)
    with pytest.raises(ValueError):
        F.IntegratorConfig(max_steps=0)


def test_path_validation():
    with pytest.raises(ValueError):
        F.PathSpec(())
    with pytest.raises(ValueError):
        F.PathSpec((0, 1, 1))
    with pytest.raises(A.PunctureHit):
        F.PathSpec.for_type([0.5, 1.5], "D4")
    assert F.PathSpec((0, 3, 3 + 4j)).length == pytest.approx(7.0)


def test_single_waypoint_is_trivial():
    tr = F.integrate_atlas(E6, {"k0": 1, "kinf": 1}, F.PathSpec((0.5,)), A.ChartPoint(0, 0.3, 0.2))
    assert tr.status is F.Status.COMPLETED
    assert len(tr.samples) == 1 and tr.events == []
    assert tr.final.x == 0.3 and tr.final.y == 0.2


def test_fixed_point_stays_put():
    tr = F.integrate_atlas(E6, {"k0": 0, "kinf": 0}, F.PathSpec((0, 1, 1 + 1j)), A.ChartPoint(0, 0, 0))
    assert tr.status is F.Status.COMPLETED
    assert abs(tr.final.x) < 1e-14 and abs(tr.final.y) < 1e-14


def test_e6_x_zero_locus_is_invariant():
    tr = F.integrate_atlas(E6, {"k0": 0, "kinf": 0.5}, F.PathSpec((0, 1)), A.ChartPoint(0, 0, 0.2))
    assert max(abs(s.x) for s in tr.samples) < 1e-12


def test_waypoints_are_sampled():
    path = F.PathSpec((0, 0.5, 0.5 + 0.5j))
    tr = F.integrate_riccati(square_ode(), path, 0.1)
    ts = [s.t for s in tr.at_waypoints()]
    assert np.allclose(ts, path.waypoints, atol=1e-14)


def test_x_squared_without_poles():
    tr = F.integrate_riccati(square_ode(), F.PathSpec((0, 0.5)), 1)
    assert abs(tr.final.x - 2) < 1e-8
    assert tr.events == []


def test_x_squared_through_pole():
    tr = F.integrate_riccati(square_ode(), F.PathSpec((0, 1.5)), 1)
    assert tr.status is F.Status.COMPLETED
    assert abs(F.p1_value(tr.final) + 2) < 1e-6
    assert len(tr.events) >= 1
    t_switch = tr.events[0].t.real
    assert 0.99 < t_switch < 1.0


def test_riccati_start_at_infinity():
    tr = F.integrate_riccati(square_ode(), F.PathSpec((1, 1.5)), complex("inf"))
    assert tr.samples[0].chart == 1
    # x = 1/(1 - t) passes through inf at t = 1
    assert abs(F.p1_value(tr.final) + 2) < 1e-8


def test_riccati_rejects_path_through_coefficient_pole():
    ode = RiccatiODE(1, 1 / sp.Symbol("t"), 0)
    with pytest.raises(A.PunctureHit):
        F.integrate_riccati(ode, F.PathSpec((-1, 1)), 0.1)


def test_switch_chart_keeps_small_points():
    q = A.ChartPoint(0, 1.0, -2.0)
    assert F.switch_chart(E7, {"alpha": 0.1}, 0.3, q, 1e3) is q


def test_switch_chart_large_point():
    p = {"alpha": 0.2}
    x, y = A.transition(E7, 2, 0, p, 0.4, (1e-3, 0.1))
    new = F.switch_chart(E7, p, 0.4, A.ChartPoint(0, x, y), 1e2)
    assert new.chart == 2
    # chart 0 rounding on y0 ~ 2e6 is divided by x2^2 on the way back
    eps = np.finfo(float).eps
    assert abs(new.x - 1e-3) < 1e-15
    assert abs(new.y - 0.1) < 10 * abs(y) * eps / 1e-6


def test_switch_chart_fails_when_no_chart_fits():
    q = A.ChartPoint(0, 1e6, 1e6)
    with pytest.raises(F.NoChartAvailable):
        F.switch_chart(E7, {"alpha": 0.2}, 0.4, q, 1e-9)


def test_step_limit_reported():
    cfg = F.IntegratorConfig(max_steps=3)
    tr = F.integrate_atlas(E6, {"k0": 1, "kinf": 0.5}, F.PathSpec((0, 2)), A.ChartPoint(0, 0.3, 0.2), cfg)
    assert tr.status is F.Status.STEP_LIMIT


def run_e7(cfg):
    path = F.PathSpec.for_type([0, 3, 3 + 2j], E7, cfg)
    return F.integrate_atlas(E7, {"alpha": 0.3}, path, A.ChartPoint(0, 0.1, 0.2), cfg)


def test_determinism():
    cfg = F.IntegratorConfig()
    a, b = run_e7(cfg), run_e7(cfg)
    assert a.to_csv() == b.to_csv()
    assert a.events_dict() == b.events_dict()


def in_chart2(tr):
    f = tr.final
    if f.chart == 2:
        return np.array((f.x, f.y))
    return np.array(A.change_chart(E7, f.chart, 2, {"alpha": 0.3}, f.t, (f.x, f.y)))


def test_tolerance_scaling():
    ref = in_chart2(run_e7(F.IntegratorConfig(rel_tol=1e-12, abs_tol=1e-14)))
    loose = in_chart2(run_e7(F.IntegratorConfig(rel_tol=1e-6, abs_tol=1e-8)))
    tight = in_chart2(run_e7(F.IntegratorConfig(rel_tol=1e-9, abs_tol=1e-11)))
    assert np.max(np.abs(tight - ref)) < np.max(np.abs(loose - ref))


@pytest.mark.parametrize("rhos", [(50.0, 200.0), (100.0, 1000.0)])
def test_switch_threshold_transparency(rhos):
    # chart 0 loses about rho^2 * rel_tol near the E7 poles, so that is the bound
    tol = 1e-10
    ends = [in_chart2(run_e7(F.IntegratorConfig(rel_tol=tol, switch_threshold=r))) for r in rhos]
    rel = np.max(np.abs(ends[0] - ends[1])) / np.max(np.abs(ends[0]))
    assert rel < max(rhos) ** 2 * tol


def test_csv_format():
    tr = F.integrate_riccati(square_ode(), F.PathSpec((0, 0.1)), 1)
    lines = tr.to_csv().splitlines()
    assert lines[0] == "t_re,t_im,chart,x_re,x_im,y_re,y_im"
    assert len(lines) == len(tr.samples) + 1
    assert float(lines[-1].split(",")[0]) == pytest.approx(0.1)


def test_events_dict_shape():
    d = run_e7(F.IntegratorConfig()).events_dict()
    assert d["status"] == F.Status.COMPLETED.value
    assert all(set(e) == {"t", "from", "to"} for e in d["events"])
