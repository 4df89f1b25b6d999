import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from g2verify import instanton as I
from g2verify import structures as S
from g2verify.exactmath import Poly, RatFn
from g2verify.exterior import Form
from g2verify.quaternion import Quat
from g2verify.sphere import r8_points, rat_sphere_points

PTS = rat_sphere_points(7, 3, 21, ["axes"])
STD = S.build_sphere_structure("std")


@pytest.fixture(scope="module")
def F():
    return I.f_a0()


def test_flat_connection():
    zero = I.GaugeConnection(Form.zero(4, 1), "0")
    assert I.curvature(zero).is_zero()


def test_b0_curvature():
    F0 = I.curvature(I.b0())
    assert F0 == I.f_b0_formula()
    at0 = F0.at((0, 0, 0, 0))
    assert I.component(at0, 1) == Form(4, 2, {(0, 1): -2, (2, 3): 2})


def test_duality_types():
    assert I.asd_check(Form(4, 2, {(0, 1): 1, (2, 3): 1}))["type"] == "self-dual"
    assert I.asd_check(Form(4, 2, {(0, 1): 1, (2, 3): -1}))["type"] == "anti-self-dual"
    t0 = I.b0_duality_type()
    assert t0 in ("self-dual", "anti-self-dual")
    assert I.asd_check(I.f_bsd_formula())["type"] != t0


def test_a0_routes_and_conical():
    assert I.a0().form == I.a0_by_pullback().form
    r = [RatFn(Poly.var(i)) for i in range(8)]
    assert I.a0().form.interior_first(r).is_zero()


def test_a0_curvature(F):
    assert F == I.f_a0_formula()
    assert F == I.f_a0_formula_square()
    assert I.bianchi_defect(I.a0(), F).is_zero()


def test_curvature_intermediates():
    got = {k: lhs == rhs for k, (lhs, rhs) in I.curvature_intermediates().items()}
    failing = sorted(k for k, ok in got.items() if not ok)
    assert failing == sorted(I.PRINTED_INTERMEDIATE_FAILURES)


def test_gauge_formula(F):
    q = I.quat_data()
    Ag = I.connection("A0:gauge-x")
    assert Ag.form == I.a0_gauge_x_formula()
    assert I.curvature(Ag) == I.gauge_curvature(F, q.y)
    assert I.gauge_transform(I.a0(), Quat(1)).form == I.a0().form


def test_gauge_regularity():
    xa, ya = (1, 0, 0, 0, 0, 0, 0, 0), (0, 0, 0, 0, 1, 0, 0, 0)
    Ax = I.connection("A0:gauge-x").form
    assert I.regular_at(Ax, xa) and not I.regular_at(Ax, ya)
    assert not I.regular_at(I.a0().form, xa) and not I.regular_at(I.a0().form, ya)


@pytest.mark.parametrize("label", ["std", "sq"])
def test_g2_instanton(F, label):
    assert I.g2_instanton_check(F, S.build_sphere_structure(label), PTS).passed


def test_perturbed_a0_is_not_an_instanton():
    e1 = Quat.basis(1)
    Ap = I.GaugeConnection(I.a0().form + Form.basis(8, (0,), e1), "perturbed")
    assert not I.g2_instanton_check(I.curvature(Ap), STD, PTS).passed


def test_spin7(F):
    assert I.spin7_instanton_check(F, r8_points(4, 1, ["axes"])).passed
    assert I.spin7_instanton_check(Form.zero(8, 2), r8_points(1, 1)).passed
    e1 = Quat.basis(1)
    w = (S.omega_x(1) + S.omega_y(1)).map_coeffs(lambda c: e1 * c)
    assert not I.spin7_instanton_check(w, r8_points(1, 1)).passed


def test_hopf_pullbacks():
    Fb = I.hopf_pullback_form(I.f_b0_formula())
    assert I.curvature(I.connection("pullback:B0")) == Fb
    assert I.g2_instanton_check(Fb, STD, PTS).passed
    assert not I.g2_instanton_check(I.hopf_pullback_form(I.f_bsd_formula()), STD, PTS).passed


def test_hym(F):
    assert I.hym_check(F, PTS).passed


@given(st.integers(0, 200))
def test_bundle_class(k):
    c = I.bundle_class(k)
    assert 0 <= c < 12
    assert c == (k * (k + 1) // 2) % 12
    assert I.bundle_class(k + 24) == c


def test_bundle_class_values():
    assert [I.bundle_class(k) for k in (0, 1, 3)] == [0, 1, 6]
    with pytest.raises(ValueError):
        I.bundle_class(-1)


def test_connection_registry():
    for label in I.CONNECTIONS:
        assert I.connection(label).form.k == 1
    with pytest.raises(KeyError):
        I.connection("nope")
