import cmath

import numpy as np
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from painleve_nodal import atlas as A
from painleve_nodal import rootlat as L
from painleve_nodal.dual import Dual

finite = st.floats(-50, 50, allow_nan=False, allow_infinity=False)
cplx = st.builds(complex, finite, finite)
small = st.builds(complex, st.floats(-3, 3), st.floats(-3, 3))


@given(st.lists(st.sampled_from(["A1", "A2", "A3", "A4", "D4", "D5", "E6", "E7", "A5"]),
                min_size=1, max_size=4))
def test_type_string_round_trip(parts):
    r = L.RootSystemType.parse("+".join(parts))
    assert L.RootSystemType.parse(str(r)) == r
    assert L.RootSystemType.parse(r.exponent_form()) == r
    assert r.rank == sum(int(p[1:]) for p in parts)


@given(cplx, cplx, cplx, cplx)
def test_dual_product_rule(a, da, b, db):
    u, v = Dual(a, da), Dual(b, db)
    w = u * v
    assert cmath.isclose(w.a, a * b, abs_tol=1e-9)
    assert cmath.isclose(w.b, da * b + a * db, rel_tol=1e-12, abs_tol=1e-9)


@given(cplx, cplx)
def test_dual_quotient_rule(a, b):
    assume(abs(b) > 1e-3)
    q = Dual(a, 1.0) / Dual(b, 0.0)
    assert cmath.isclose(q.a, a / b, rel_tol=1e-12)
    assert cmath.isclose(q.b, 1 / b, rel_tol=1e-12)


@settings(max_examples=60, deadline=None)
@given(small, small, small, st.sampled_from([(E, c) for E in ("E7", "E6", "D4")
                                             for c in A.charts(E)[1:]]))
def test_transition_round_trip(x, y, t, chart):
    pt, c = chart
    pt = A.PainleveType.parse(pt)
    assume(abs(t) > 0.2 and abs(t - 1) > 0.2)
    rng = np.random.default_rng(abs(hash((x, y))) % 2**32)
    p = {n: complex(rng.normal(), rng.normal()) for n in pt.param_names}
    try:
        q0 = A.change_chart(pt, c, 0, p, t, (x, y))
        back = A.change_chart(pt, 0, c, p, t, q0)
    except (A.OutsideOverlap, ZeroDivisionError):
        assume(False)
    scale = max(1.0, abs(q0[0]), abs(q0[1]))
    assume(scale < 1e4)
    assert abs(back[0] - x) < 1e-9 * scale ** 2 and abs(back[1] - y) < 1e-9 * scale ** 3


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(sorted(L.subsystem_closure(), key=str)))
def test_embedded_gram_classifies_back(r):
    cert = L.find_embedding(r)
    vecs = np.array(cert.vectors)
    assert (vecs @ vecs.T // 4).tolist() == cert.gram()
    assert L.classify_gram(cert.gram()) == r
