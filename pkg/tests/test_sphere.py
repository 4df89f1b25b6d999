import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from conftest import rationals
from g2verify import structures as S
from g2verify.exactmath import coordinate
from g2verify.exterior import Form
from g2verify.sphere import (
    PointGenerationError,
    codifferential,
    covariant_deriv,
    d_split_check,
    dbstar_check,
    inverse_stereographic,
    rat_sphere_points,
    restrict_equals,
    rough_laplacian,
    s3_zero_points,
    tangent_frame,
    vertical_horizontal_split,
    vertical_laplacian_check,
)

PTS = rat_sphere_points(7, 3, 5, ["axes"])
FS = S.frame_set()


def test_inverse_stereographic():
    assert inverse_stereographic([0] * 7) == (0,) * 7 + (-1,)
    assert inverse_stereographic([1] + [0] * 6) == (1,) + (0,) * 7


@given(st.lists(rationals(), min_size=7, max_size=7))
def test_points_are_on_the_sphere(q):
    p = inverse_stereographic(q)
    assert sum(c * c for c in p) == 1


def test_points_are_deterministic():
    assert rat_sphere_points(7, 5, 9) == rat_sphere_points(7, 5, 9)
    assert rat_sphere_points(7, 5, 9) != rat_sphere_points(7, 5, 10)
    assert all(any(p.x) and any(p.y) for p in PTS)


def test_point_exhaustion():
    with pytest.raises(PointGenerationError):
        rat_sphere_points(7, 2, 0, [lambda p: False], retry_budget=50)


def test_s3_zero_points():
    for p in s3_zero_points(4, 2):
        assert not any(p.y) and sum(c * c for c in p.x) == 1


def test_frame_is_tangent():
    fr = tangent_frame(PTS[0])
    for v in fr.basis:
        assert sum(a * b for a, b in zip(v, fr.point)) == 0
    # vertical vectors are I_i p
    assert len(fr.vertical) == 3 and len(fr.horizontal) == 4


def test_restrict_equals():
    for pt in PTS:
        fr = tangent_frame(pt)
        assert S.psi_at(S.build_sphere_structure("std"), fr) == fr.restrict(S.psi0())
    assert restrict_equals(S.phi_std(), S.phi_std(), PTS).passed
    assert not restrict_equals(S.phi_std(), S.phi_sq_explicit(), PTS).passed


def test_gradient_of_zeta():
    # (nabla_X zeta_1)(Y) = omega_1(X, Y) for tangent X, Y
    for pt in PTS[:2]:
        fr = tangent_frame(pt)
        X, Y = fr.basis[1], fr.basis[5]
        lhs = covariant_deriv(FS.zeta[0], X, pt).evaluate([Y])
        assert lhs == FS.omega_circ[0].evaluate([X, Y])


@pytest.mark.parametrize("part,c", [("full", 6), ("vertical", 2), ("horizontal", 4)])
def test_rough_laplacian_zeta(part, c):
    for pt in PTS:
        fr = tangent_frame(pt)
        assert fr.restrict(rough_laplacian(FS.zeta[0], pt, part=part)) == fr.restrict(FS.zeta[0]).rmul(c)


def test_laplacian_on_a_linear_function():
    # x^0 is a degree-1 harmonic: Delta_S f = -Delta_R8 f + f_rr + 7 f_r = 7 x^0
    f = Form.scalar(8, coordinate(0))
    for pt in PTS:
        assert rough_laplacian(f, pt).terms[0] == 7 * pt.coords[0]
        assert codifferential(f.d(), pt).terms[0] == 7 * pt.coords[0]


def test_zeta_is_coclosed():
    for pt in PTS:
        for z in FS.zeta:
            assert codifferential(z, pt).is_zero()


def test_vertical_horizontal_split():
    pt = PTS[0]
    f, b = vertical_horizontal_split(FS.zeta[1].at(pt.coords), pt)
    assert f == (0, 1, 0) and b.is_zero()


def test_d_split_and_vertical_laplacian():
    for a in (FS.zeta[0], Form.zero(8, 1), Form.basis(8, (5,))):
        assert d_split_check(a, PTS).passed
        assert vertical_laplacian_check(a, PTS).passed


def test_dbstar():
    spec = S.build_sphere_structure("std")
    assert dbstar_check(FS.omega_bar[0], spec, PTS).passed
    assert dbstar_check(Form.zero(8, 2), spec, PTS).passed
    assert not dbstar_check(FS.omega_bar[0], spec, PTS, coefficient=spec.tau0 / 2).passed
