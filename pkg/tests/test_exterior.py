from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from conftest import rationals
from g2verify.exactmath import RatFn, coordinate
from g2verify.exterior import Form, MetricSpec, contract, hodge_star, pullback, pullback_linear
from g2verify.structures import dq, frame_set, model_forms, omega_x, omega_y, psi0, r_contract

X = [coordinate(i) for i in range(8)]


@st.composite
def const_forms(draw, n, k):
    from itertools import combinations

    idx = list(combinations(range(n), k))
    chosen = draw(st.lists(st.sampled_from(idx), max_size=4, unique=True))
    return Form(n, k, {i: draw(rationals()) for i in chosen})


@st.composite
def poly_one_forms(draw, n=8):
    comps = []
    for _ in range(n):
        a, b, c = draw(rationals()), draw(rationals()), draw(st.integers(0, n - 1))
        comps.append(X[c] * a + b if draw(st.booleans()) else RatFn.const(b))
    return Form.one_form(comps)


def test_wedge_basics():
    assert dq(0).wedge(dq(1)) == dq(0, 1)
    assert dq(0, 1).wedge(dq(0, 2)).is_zero()


@given(const_forms(6, 1), const_forms(6, 2))
def test_graded_commutativity(a, b):
    assert a.wedge(b) == b.wedge(a)
    assert a.wedge(a).is_zero()


@given(const_forms(6, 1), const_forms(6, 2), const_forms(6, 1))
def test_wedge_associative(a, b, c):
    assert a.wedge(b).wedge(c) == a.wedge(b.wedge(c))


def test_kahler_wedge_re_omega_vanishes():
    mf = model_forms()
    assert mf.ReOmega.wedge(mf.omega).is_zero()
    assert psi0().wedge(mf.omega) == mf.omega.wedge(mf.omega).wedge(mf.omega).rmul(mpq(1, 2))


def test_exterior_derivative():
    assert r_contract(omega_x(1)).d() == omega_x(1).rmul(2)
    assert psi0().d().is_zero()
    assert r_contract(psi0()).d() == psi0().rmul(4)


@given(poly_one_forms())
def test_d_squared_zero(a):
    assert a.d().d().is_zero()


def test_interior_conventions():
    e0 = [1, 0, 0, 0]
    e1 = [0, 1, 0, 0]
    w = Form.basis(4, (0, 1))
    assert w.interior_last(e1) == Form.basis(4, (0,))
    assert w.interior_last(e0) == -Form.basis(4, (1,))
    assert w.interior_first(e0) == Form.basis(4, (1,))


def test_form_contraction():
    w = Form.basis(4, (0, 1))
    assert contract(w, Form.basis(4, (1,))) == Form.basis(4, (0,))
    assert contract(w, w) == Form.scalar(4, mpq(1))


def test_hodge_star():
    assert hodge_star(dq(0, 1, 2, 3)) == dq(4, 5, 6, 7)
    assert hodge_star(psi0()) == psi0()


@given(const_forms(5, 2))
def test_star_star(a):
    # on R^5, ** = (-1)^{k(n-k)} = 1
    assert hodge_star(hodge_star(a)) == a


@given(const_forms(4, 2), const_forms(4, 2))
def test_star_inner_product(a, b):
    vol = Form.basis(4, range(4))
    lhs = a.wedge(hodge_star(b))
    assert lhs == vol.rmul(contract(a, b).terms.get(0, mpq(0)))


def test_star_scaled_metric():
    # *_{2g} dx^0 on R^2: |dx^0|^2 = 1/2 and vol = 2 dx^{01}
    g = MetricSpec.diagonal([2, 2])
    assert hodge_star(Form.basis(2, (0,)), g) == Form.basis(2, (1,))


def test_pullback_identity_and_quotient_rule():
    f = Form.one_form([X[0] * X[1]] + [RatFn.zero()] * 7)
    assert pullback(f, X) == f
    ny = RatFn(sum((X[i] * X[i] for i in range(4, 8)), RatFn.zero()).num)
    w0 = X[4] / ny
    dw0 = pullback(Form.basis(8, (0,)), [w0] + [RatFn.zero()] * 7)
    assert dw0 == Form.one_form([w0.partial(i) for i in range(8)])


@given(const_forms(4, 2), st.lists(rationals(), min_size=16, max_size=16))
def test_pullback_linear_evaluation(a, m):
    M = [m[4 * i:4 * i + 4] for i in range(4)]
    u, v = [1, 2, 0, -1], [0, 1, 3, 1]
    Mu = [sum(M[i][j] * u[j] for j in range(4)) for i in range(4)]
    Mv = [sum(M[i][j] * v[j] for j in range(4)) for i in range(4)]
    assert pullback_linear(a, M).evaluate([u, v]) == a.evaluate([Mu, Mv])


def test_matrix_round_trip():
    w = omega_x(1) + omega_y(2)
    assert Form.from_matrix(w.to_matrix()) == w


def test_frame_zeta_is_linear():
    z = frame_set().zeta[0]
    assert all(c.is_poly() for c in z.terms.values())
