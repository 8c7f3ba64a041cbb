import cmath

import numpy as np
import pytest
import sympy as sp

from painleve_nodal import atlas as A
from painleve_nodal.dual import Dual, jacobian

E7, E6, D4 = A.PainleveType.E7t, A.PainleveType.E6t, A.PainleveType.D4t


def close(a, b, tol=1e-12):
    return all(abs(complex(u) - complex(v)) <= tol for u, v in zip(a, b))


def test_type_parsing_and_capabilities():
    assert A.PainleveType.parse("~E6") is E6
    assert A.PainleveType.parse("P_IV") is E6
    assert A.PainleveType.parse("D4") is D4
    assert A.PainleveType.parse("D5").capability is A.Capability.RICCATI_CATALOG_ONLY
    assert A.PainleveType.parse("E8").capability is A.Capability.NONEXISTENCE_ONLY
    with pytest.raises(A.AtlasError):
        A.PainleveType.parse("Q7")


def test_params_need_exact_names():
    A.Params(E6, k0=1, kinf=2)
    with pytest.raises(A.AtlasError):
        A.Params(E6, k0=1)
    with pytest.raises(A.AtlasError):
        A.Params(E6, k0=1, kinf=2, alpha=0)


def test_chart_point_must_be_finite():
    with pytest.raises(A.AtlasError):
        A.ChartPoint(0, complex("inf"), 0)


def test_charts():
    assert A.charts(E7) == [0, 1, 2]
    assert A.charts(E6) == [0, 1, 2, 3]
    assert A.charts(D4) == [0, 1, 2, 3, 4, 5]
    with pytest.raises(A.NoAtlas):
        A.charts("D5")


def test_vf_chart0_examples():
    assert close(A.vf_chart0(E7, {"alpha": -0.5}, 0, 0, 0), (0, 0))
    t = 0.7 + 0.2j
    assert close(A.vf_chart0(E7, {"alpha": 0}, t, 0, t / 2), (0, 0.5))
    assert close(A.vf_chart0(E6, {"k0": 0, "kinf": 0}, 1.3, 0, 0), (0, 0))
    p = {"k0": 0, "k1": 0, "kt": 1, "kinf": 2}
    assert close(A.vf_chart0(D4, p, 2, 3, 0), (0, 0.5))


def test_d4_field_matches_uncleared_form():
    # the printed A has poles at x = 0, 1, t that the stored form clears
    x, y, t, k0, k1, kt, ki = sp.symbols("x y t k0 k1 kt kinf")
    p = {"k0": k0, "k1": k1, "kt": kt, "kinf": ki}
    a, _ = A.get_atlas(D4).vf0(p, t, x, y)
    printed = x * (x - 1) * (x - t) / (t * (t - 1)) * (
        2 * y - k0 / x - k1 / (x - 1) - (kt - 1) / (x - t))
    assert sp.simplify(a - printed) == 0


def test_puncture_rejected():
    p = {"k0": 0, "k1": 0, "kt": 0, "kinf": 0}
    with pytest.raises(A.PunctureHit):
        A.vf_chart0(D4, p, 1, 0.5, 0.5)


def test_transition_examples():
    assert close(A.transition(E6, 1, 0, {"k0": 3, "kinf": 0}, 0.5, (0, 1)), (3, 1))
    p = {"k0": 0, "k1": 0, "kt": 0, "kinf": 1}
    assert close(A.transition(D4, 0, 4, p, 2, (1, 0)), (1, 0))
    assert close(A.transition(E7, 0, 1, {"alpha": -0.5}, 0.3, (2, 0)), (0.5, 0))


def test_transition_errors():
    with pytest.raises(A.NotAdjacent):
        A.transition(D4, 1, 2, {"k0": 0, "k1": 0, "kt": 0, "kinf": 0}, 2, (1, 1))
    with pytest.raises(A.OutsideOverlap):
        A.transition(E7, 0, 1, {"alpha": 0}, 0.3, (0, 1))


def test_change_chart_composes_through_chart_zero():
    p = {"k0": 0.3, "k1": -0.2, "kt": 0.5, "kinf": 1.1}
    q = (0.4 + 0.1j, -0.7 + 0.2j)
    direct = A.change_chart(D4, 1, 2, p, 2.5, q)
    via0 = A.transition(D4, 0, 2, p, 2.5, A.transition(D4, 1, 0, p, 2.5, q))
    assert close(direct, via0)


def test_vf_any_chart_zero_is_identity():
    p = {"k0": 0.3, "kinf": -1.0}
    assert A.vf_any_chart(E6, 0, p, 0.4, (1.5, 2.0)) == A.vf_chart0(E6, p, 0.4, 1.5, 2.0)


def test_dual_and_closed_form_fields_agree():
    rng = np.random.default_rng(3)
    for pt in (E7, E6, D4):
        for c in A.charts(pt)[1:]:
            p = {n: complex(rng.normal(), rng.normal()) for n in pt.param_names}
            q = (complex(rng.normal(), 1), complex(1, rng.normal()))
            t = 2.2 + 0.3j
            assert close(A.vf_any_chart(pt, c, p, t, q), A.chart_field(pt, c, p, t, q), 1e-9)


def test_closed_form_fields_are_polynomial():
    for pt in (E7, E6, D4):
        for c in A.charts(pt):
            if c == 0:
                continue
            args = A._chart_field_exprs(pt, c)[0]
            X, Y = args[1], args[2]
            for e in A.chart_field_expressions(pt, c):
                num, den = sp.fraction(sp.together(e))
                assert not den.has(X) and not den.has(Y)


def test_consistency_residual_same_chart_is_zero():
    assert A.consistency_residual(E7, 1, 1, {"alpha": 0.2}, 0.5, (1, 1)) == 0.0


def test_consistency_t_dependent_transition():
    rng = np.random.default_rng(11)
    for _ in range(100):
        p = {n: complex(rng.normal(), rng.normal()) for n in D4.param_names}
        q = (complex(rng.normal(), rng.normal()), complex(rng.normal(), rng.normal()) + 0.5)
        assert A.consistency_residual(D4, 0, 3, p, 2.0 + 0.5j, q) < 1e-9


def test_e7_triple_overlap_cocycle():
    rng = np.random.default_rng(5)
    for _ in range(50):
        p = {"alpha": complex(rng.normal(), rng.normal())}
        q1 = (complex(rng.uniform(0.5, 2), 0.3), complex(rng.normal(), rng.normal()))
        t = 0.8 - 0.4j
        q0 = A.transition(E7, 1, 0, p, t, q1)
        via = A.transition(E7, 0, 2, p, t, q0)
        assert close(A.change_chart(E7, 1, 2, p, t, q1), via, 1e-10)


def test_dual_numbers():
    d = Dual(2.0, 1.0)
    assert (d * d).b == 4.0
    assert (1 / d).b == pytest.approx(-0.25)
    assert (d ** -2).b == pytest.approx(-0.25)
    assert (3 - d).a == 1.0
    vals, cols = jacobian(lambda x, y: (x * y, x / y), (2.0, 4.0), (0, 1))
    assert vals == (8.0, 0.5)
    assert cols[0] == (4.0, 0.25) and cols[1] == (2.0, -0.125)
    with pytest.raises(ZeroDivisionError):
        1 / Dual(0.0, 1.0)


def test_field_function_matches_chart_field():
    p = A.Params(E6, k0=0.5, kinf=-0.25)
    for c in A.charts(E6):
        f = A.field_function(E6, c, p)
        got = f(0.3, 0.7 + 0.1j, -0.2)
        want = A.chart_field(E6, c, p, 0.3, (0.7 + 0.1j, -0.2))
        assert close(got, want, 1e-13)
