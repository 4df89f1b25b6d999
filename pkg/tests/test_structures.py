from itertools import combinations

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from conftest import rationals
from g2verify import structures as S
from g2verify.exterior import Form, MetricSpec
from g2verify.sphere import rat_sphere_points, restrict_equals

PTS = rat_sphere_points(7, 3, 11)


def test_model_forms():
    mf = S.model_forms()
    assert mf.phi0[(0, 1, 2)] == 1
    assert mf.phi0 == S.phi0_formula()
    assert mf.psi0 == S.psi0_formula()
    assert mf.Psi0 == mf.omega.wedge(mf.omega).rmul(mpq(1, 2)) + mf.ReOmega
    assert S.to_r8(mf.phi0) == mf.Psi0.interior_first([1] + [0] * 7)


def test_spin7_membership():
    assert S.spin7_lie_check(S.omega_x(1) - S.omega_y(1))[0]
    w = S.omega_x(1) + S.omega_y(1)
    ok, defect = S.spin7_lie_check(w)
    assert not ok and defect == w.rmul(4)
    assert S.spin7_lie_check(Form.zero(8, 2))[0]


def test_spin7_dimensions():
    assert len(S.spin7_lie_algebra()) == 21
    assert {k: len(v) for k, v in S.spin7_factors().items()} == {"minus_x": 3, "minus_y": 3, "plus_d": 3, "fueter_xy": 12}
    assert len(S.g2_lie_algebra()) == 14


def test_spin7_decomposition():
    assert S.spin7_decompose(S.omega_x(3) + S.omega_y(3))["plus_d"] == S.omega_x(3) + S.omega_y(3)
    ident = Form(8, 2, {(4 + i, i): 1 for i in range(4)})
    parts = S.spin7_decompose(ident)
    assert parts["fueter_xy"] == ident
    asd = Form(8, 2, {(0, 1): 1, (2, 3): -1})
    assert S.spin7_decompose(asd)["minus_x"] == asd


@given(st.lists(rationals(), min_size=21, max_size=21))
def test_spin7_algebra_is_linear(cs):
    eta = Form.zero(8, 2)
    for c, f in zip(cs, S.spin7_lie_algebra()):
        eta = eta + f.rmul(c)
    assert S.spin7_lie_check(eta)[0]


def test_g2_nullspace_complement():
    from g2verify import linalg

    fam = linalg.LinearFamily.of([S.two_form_vector(f, 7) for f in S.g2_lie_algebra()])
    # v ⌟ phi0 spans the 7-dimensional complement of Lie(G2)
    xi = S.model_forms().phi0.interior_first([1, 0, 0, 0, 0, 0, 0])
    assert not S.g2_lie_check(xi)
    assert not fam.contains(S.two_form_vector(xi, 7))
    assert S.g2_lie_check(Form.zero(7, 2))


def test_phi_identities():
    scan = S.phi_identity_scan()
    assert not scan["identity1_failures"]
    assert not scan["identity2_failures"]
    assert scan["identity2_ratios"] == {S.PHI_PSI_CONSTANTS["full_sum"]}


def test_model_metric():
    vol = Form.basis(7, range(7))
    assert S.verify_metric(S.model_forms().phi0, MetricSpec.euclidean(7), vol).passed
    bad = S.verify_metric(S.model_forms().phi0, MetricSpec.diagonal([2] * 7), vol)
    assert not bad.passed and bad.witness is not None


def test_phi_std_formulas():
    assert S.phi_std() == S.phi_std_expanded()
    assert S.phi_std().d() == S.psi0().rmul(4)
    assert restrict_equals(S.phi_std_sp2(), S.phi_std(), PTS).passed


@pytest.mark.parametrize("label,tau0", [("std", 4), ("sq", -4), ("ab:1,5", mpq(-12, 5))])
def test_nearly_parallel(label, tau0):
    res = S.nearly_parallel_check(S.build_sphere_structure(label), PTS)
    assert res.passed and res.details["tau0"] == tau0


def test_phi_1_1_is_not_nearly_parallel():
    assert not S.nearly_parallel_check(S.build_sphere_structure("ab:1,1"), PTS).passed


def test_squashed_normalization():
    assert S.phi_sq_explicit() == S.phi_ab(1, 5).rmul(mpq(27, 125))
    assert S.squashed_rescaling_check(PTS).passed
    # the printed explicit expression does not match at generic points
    assert not restrict_equals(S.phi_sq_printed(), S.phi_sq_explicit(), PTS).passed


@pytest.mark.parametrize("label", ["std", "sq", "ab:1,5"])
def test_structure_metrics(label):
    assert S.verify_metric_at(S.build_sphere_structure(label), PTS).passed


def test_frame_calculus_and_gradient():
    assert S.frame_calculus_check(PTS).passed
    assert S.gradphi_check(PTS[:1]).passed
    assert S.appendix_family_check(1, 5, PTS).passed


def test_structure_registry_errors():
    with pytest.raises((KeyError, ValueError)):
        S.build_sphere_structure("round")
