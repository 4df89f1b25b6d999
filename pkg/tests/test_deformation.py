import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from conftest import rationals
from g2verify import deformation as D
from g2verify import instanton as I
from g2verify import structures as S
from g2verify.exterior import Form
from g2verify.quaternion import Quat, complex_structure
from g2verify.sphere import hopf_structure, rat_sphere_points, s3_zero_points

PTS = rat_sphere_points(7, 2, 31, ["axes"])
RANK_PTS = rat_sphere_points(7, 8, 31, ["axes"])
ZERO8 = tuple(tuple(mpq(0) for _ in range(8)) for _ in range(8))
ID8 = tuple(tuple(mpq(int(i == j)) for j in range(8)) for i in range(8))


@pytest.fixture(scope="module")
def F():
    return I.f_a0()


@pytest.fixture(scope="module")
def fifteen():
    return [D.linear_deformation(M, label=name) for name, M in D.fifteen_basis()]


def test_matrix_families():
    sp2 = D.sp2_lie_basis()
    assert D.matrix_family(sp2).rank() == 10
    for M in sp2:
        assert D.times_complex_structure(M, 3) == D._tuple([[sum(hopf_structure(3)[i][k] * M[k][j] for k in range(8)) for j in range(8)] for i in range(8)])
    assert D.matrix_family(D.w_basis()).rank() == 5
    assert all(D.trace_pairing(W, M) == 0 for W in D.w_basis() for M in sp2)
    for _, M in D.fifteen_basis()[5:]:
        assert S.spin7_lie_check(Form.from_matrix(M))[0]


def test_classify():
    assert D.classify(D.w_basis()[0]) == "W"
    assert D.classify(D.times_complex_structure(D.w_basis()[2], 1)) == "W I1"
    assert D.classify(D.sp2_lie_basis()[0]) == "Lie(Sp(2))"
    assert D.classify(D.times_complex_structure(D.w_basis()[0], 3)) == "other"


def test_trivial_deformations(F):
    assert D.linear_deformation(ZERO8, F).alpha.is_zero()
    # the curvature of a conical connection kills the radial vector
    assert D.linear_deformation(ID8, F).alpha.is_zero()
    assert not D.linear_deformation(D.w_basis()[0], F).alpha.is_zero()


def test_radial_free(fifteen):
    for c in fifteen[:3]:
        assert D.radial_contraction(c) == Quat(0)


@given(st.lists(rationals(), min_size=36, max_size=36))
def test_symmetric_pairing_vanishes(cs):
    it = iter(cs)
    M = [[mpq(0)] * 8 for _ in range(8)]
    for i in range(8):
        for j in range(i, 8):
            M[i][j] = M[j][i] = next(it)
    assert D.curvature_pairing(M, I.f_a0_formula()) == Quat(0)


def test_coulomb(F):
    w_i1 = D.linear_deformation(D.times_complex_structure(D.w_basis()[1], 1), F, "W:1 I1")
    res = D.coulomb_check(w_i1, PTS)
    assert res.passed and res.details["in_coulomb_gauge"]
    sp = D.linear_deformation(D.sp2_lie_basis()[0], F, "sp2:0")
    res = D.coulomb_check(sp, PTS)
    assert res.passed and not res.details["in_coulomb_gauge"]


def test_kernel(fifteen):
    assert D.kernel_check(fifteen, PTS[:1]).passed
    i3 = D.complex_image(D.w_candidates()[0], 3)
    assert not D.kernel_check([i3], PTS).passed


def test_operator_requires_round_metric(fifteen):
    with pytest.raises(ValueError):
        D.operator_at(fifteen[0], PTS[0], spec=S.build_sphere_structure("sq"))


def test_rank(fifteen):
    assert D.independence_rank(fifteen, RANK_PTS) == 15
    assert D.independence_rank(fifteen + fifteen[:4], RANK_PTS) == 15


def test_gauge_direction():
    (s, one), = D.deform_operator_eval(D.gauge_direction(Quat.basis(2)), PTS[:1])
    assert one.is_zero() and not s == 0


def test_horizontal_operator():
    pts = s3_zero_points(3, 4)
    eb = D.ebar_frame()
    for pt in pts:
        for j in range(4):
            assert D.horiz_op_apply(eb[j], pt) == tuple(mpq(int(i == j)) for i in range(4))
        ident = [[int(i == j) for j in range(4)] for i in range(4)]
        assert all(c == 0 for c in D.horiz_op_apply(D.fueter_section(ident), pt))
        assert any(c != 0 for c in D.horiz_op_apply(D.fueter_section(complex_structure(3)), pt))
    with pytest.raises(ValueError):
        D.horiz_op_apply(eb[0], PTS[0])


def test_fueter_kernel():
    K = D.fueter_kernel_solve(s3_zero_points(2, 0))
    assert K.rank() == 12 and K.same_span(D.fueter_family())
    assert not K.contains(complex_structure(3))


def test_dimension_formula():
    assert D.dimension_formula(1) == 15 and D.dimension_formula(2) == 39
    with pytest.raises(ValueError):
        D.dimension_formula(0)


def test_weitzenbock_flat_zeta():
    flat = I.GaugeConnection(Form.zero(8, 1), "trivial")
    z = S.frame_set().zeta[0].map_coeffs(lambda c: Quat.basis(1) * c)
    t = D.weitzenbock_terms(z, PTS[0], flat.form, None)
    assert t["rough"] == t["alpha"].rmul(6)
    assert t["phi_dalpha"] == t["alpha"].rmul(6)
    assert t["lhs"] == t["alpha"].rmul(36)
    assert D.weitzenbock_check(D.DeformCandidate(z), PTS[:1], A=flat).passed
    # coefficient 2 does not balance: 2*6 + 6 + 6 = 24 != 36
    assert not D.weitzenbock_check(D.DeformCandidate(z), PTS[:1], A=flat, coefficient=2).passed


def test_weitzenbock_zero():
    assert D.weitzenbock_check(D.DeformCandidate(Form.zero(8, 1)), PTS[:1]).passed


def test_weitzenbock_fifteen_family(fifteen):
    t = D.weitzenbock_terms(fifteen[6].alpha, PTS[0], I.a0().form, I.f_a0())
    assert t["lhs"].is_zero()
    assert (D.weitzenbock_rhs(t)).is_zero()


def test_candidate_registry():
    assert D.candidate("15fam:3").label == "15fam:3"
    assert D.candidate("sp2:1").M == D.sp2_lie_basis()[1]
    with pytest.raises(KeyError):
        D.candidate("other:0")
