import json

import numpy as np
import pytest
import sympy as sp

from painleve_nodal import flow as F
from painleve_nodal import riccati as R
from painleve_nodal import rootlat
from painleve_nodal.atlas import ChartPoint, NoAtlas

t = sp.Symbol("t")


@pytest.mark.parametrize("pt,n", [("E7", 1), ("E6", 3), ("D4", 5), ("D5", 3), ("D6", 4),
                                  ("E8", 0), ("D7", 0), ("D8", 0)])
def test_catalog_sizes(pt, n):
    assert len(R.catalog(pt)) == n


def test_unknown_locus():
    with pytest.raises(R.RiccatiError):
        R.get_locus("E6", "Cfoo")


def test_constraints():
    l = R.get_locus("E7", "C")
    assert l.holds({"alpha": -0.5})
    assert not l.holds({"alpha": 0.5})
    ck = R.get_locus("E6", "Ck0=kinf")
    assert ck.holds({"k0": 2, "kinf": 2})
    assert ck.is_reducible({"k0": 0, "kinf": 0})
    assert not ck.is_reducible({"k0": 1, "kinf": 1})


def coeffs(pt, name):
    return tuple(sp.simplify(c) for c in R.reduce(R.get_locus(pt, name)).coefficients())


def test_reduce_e7():
    assert coeffs("E7", "C") == (-1, 0, -t / 2)


def test_reduce_e6_c0():
    kinf = sp.Symbol("kinf")
    a, b, c = coeffs("E6", "C0")
    assert (a, sp.expand(b - 2 * t), sp.expand(c + kinf)) == (-2, 0, 0)


def test_reduce_d5_cinf():
    assert R.reduce(R.get_locus("D5", "Cinf")).coefficients_str() == (
        "-1/t", "-(kt + t)/t", "(k0 - kt)*(k0 + kt)/(4*t)")


def test_reduce_alternate_only_for_e6_family():
    assert R.reduce_alternate(R.get_locus("E6", "C0")) is None
    alt = R.reduce_alternate(R.get_locus("E6", "Ck0=kinf"))
    assert alt.var == "y" and sp.simplify(alt.a + 2) == 0


def test_linearize_e7():
    lin = R.linearize(R.reduce(R.get_locus("E7", "C")))
    assert sp.simplify(lin.p) == 0
    assert sp.simplify(lin.q - t / 2) == 0


def test_linear_coefficients_formula():
    ode = R.RiccatiODE(t, 1, t ** 2)
    lin = R.linearize(ode)
    assert sp.simplify(lin.p - (-(1 / t) - 1)) == 0
    assert sp.simplify(lin.q - t ** 3) == 0
    assert lin.pole_set == frozenset({0j})


def test_degenerate_quadratic():
    with pytest.raises(R.DegenerateQuadratic):
        R.RiccatiODE(0, 1, 1)


def test_bind_substitutes_parameters():
    ode = R.reduce(R.get_locus("E6", "C0"))
    assert ode.free_params == {"kinf"}
    assert ode.bind({"k0": 0, "kinf": 3}).free_params == set()


def test_solve_via_linear_flags_pole():
    sol = R.solve_via_linear(R.RiccatiODE(1, 0, 0), 1, F.PathSpec((0, 1.5)))
    assert sol.pole_times
    assert all(abs(tp - 1) < 0.05 for tp in sol.pole_times)
    assert abs(F.p1_value(sol.trajectory.final) + 2) < 1e-8


def test_solve_via_linear_matches_direct():
    ode = R.reduce(R.get_locus("E7", "C"))
    path = F.PathSpec((0, 1, 1 + 1j))
    a = R.solve_via_linear(ode, 0.3, path).trajectory.final
    b = F.integrate_riccati(ode, path, 0.3).final
    assert F.p1_gap(a, b) < 1e-9


def test_invariance_on_every_chart():
    rng = np.random.default_rng(7)
    for pt in ("E7", "E6", "D4"):
        for l in R.catalog(pt):
            p = R.sample_params(l, rng)
            for c in l.chart_ids:
                tt = complex(2.3, 0.4)
                q = R.sample_point(l, c, p, tt, rng)
                assert abs(R.equation_residual(l, p, tt, q)) < 1e-12
                assert R.invariance_residual(l, p, tt, q) < 1e-9


def test_invariance_requires_point_on_locus():
    l = R.get_locus("E7", "C")
    with pytest.raises(R.NotOnLocus):
        R.invariance_residual(l, {"alpha": -0.5}, 0.3, ChartPoint(0, 1, 1))


def test_invariance_needs_atlas():
    l = R.get_locus("D5", "C0")
    with pytest.raises(NoAtlas):
        R.invariance_residual(l, {"k0": 0, "kt": 1, "kinf": 1}, 0.3, ChartPoint(0, 0, 1))


def test_cross_chart_consistency():
    rng = np.random.default_rng(2)
    l = R.get_locus("D4", "Ceps")
    p = R.sample_params(l, rng)
    q = R.sample_point(l, 0, p, 2.5, rng)
    assert R.cross_chart_residual(l, 0, 4, p, 2.5, q) < 1e-10


@pytest.mark.parametrize("pt", ["E7", "E6", "D4"])
def test_restrictions_match_symbolically(pt):
    assert all(R.restriction_matches(l) for l in R.catalog(pt))


def test_rational_points_e7_alpha_zero():
    (sol,) = R.rational_points("E7", {"alpha": 0})
    assert sp.sympify(sol.y) == t / 2
    assert R.solution_residual("E7", {"alpha": 0}, sol, 0.7 + 0.2j) < 1e-14


def test_rational_points_from_intersections():
    p = {"k0": 0, "k1": 0.5, "kt": 0.3, "kinf": 0.2}
    (sol,) = R.rational_points("D4", p)
    assert sol.source == "C0 & Ceps" and (sol.x, sol.y) == ("0", "0")
    assert R.solution_residual("D4", p, sol, 2.5 + 1j) < 1e-14
    assert R.rational_points("D4", {"k0": 0, "k1": 0.5, "kt": 0.3, "kinf": -0.2}) == []


def typ(s):
    return rootlat.RootSystemType.parse(s)


@pytest.mark.parametrize("pt,p,names,kind", [
    ("E6", {"k0": 0, "kinf": 0}, ["C0", "Cinf"], "A2"),
    ("D4", {"k0": 0, "k1": 0.5, "kt": 0.3, "kinf": 0.2}, ["C0", "Ceps"], "A2"),
    ("D4", {"k0": 0, "k1": 0, "kt": 0, "kinf": 1}, ["C0", "C1", "Ct", "Ceps"], "D4"),
    ("D4", {"k0": 0, "k1": 1, "kt": 0, "kinf": 1}, ["C0", "Ct"], "A1^2"),
    ("D5", {"k0": 0, "kt": 0.5, "kinf": 0}, ["C0", "Cinf"], "A1^2"),
    ("D6", {"k0": 1, "kinf": -1}, ["C1"], "A1"),
])
def test_configs(pt, p, names, kind):
    got_names, got = R.config_at_params(pt, p)
    assert got_names == names
    assert got == typ(kind)


def test_generic_parameters_have_empty_config():
    assert R.config_at_params("E7", {"alpha": 0.3}) == ([], rootlat.RootSystemType(()))


def test_config_types_lie_in_complement():
    comp = set(rootlat.complement_types("D4"))
    for k1 in (0, 0.5, 1):
        _, got = R.config_at_params("D4", {"k0": 0, "k1": k1, "kt": 0, "kinf": 1})
        assert got in comp or got == rootlat.RootSystemType(())


def test_confluence():
    d = R.confluence_check()
    assert d["factors_at_k0_0"] == ["x", "y"]
    assert d["matches_C0_Cinf"] and d["irreducible_at_k0_1"]


def test_nonexistence():
    d = R.nonexistence("E8")
    assert d["catalog"] == [] and d["complement_types"] == []
    for pt in ("D7", "D8"):
        assert R.nonexistence(pt)["catalog"] == []
    with pytest.raises(R.NotApplicable):
        R.nonexistence("E7")


def test_json_dump():
    d = json.loads(R.locus_dump_json("E6"))
    assert d["type"] == "E6"
    first = d["loci"][0]
    assert first["name"] == "C0" and first["riccati"] == {"a": "-2", "b": "2*t", "c": "-kinf"}
