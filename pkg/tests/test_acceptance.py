"""Acceptance criteria, one printed PASS/FAIL line each, at exact (zero) tolerance.

Criteria whose printed statement does not hold are left failing; the
analysis lives in the decisions ledger kept next to the repository.
"""

import time

import pytest
from gmpy2 import mpq

from g2verify import deformation as D
from g2verify import instanton as I
from g2verify import linalg
from g2verify import structures as S
from g2verify.checks import dbstar_test_forms, hym_controls, rough_laplacian_zeta_check, vertical_laplacian_forms
from g2verify.exterior import Form
from g2verify.quaternion import complex_structure, fueter_basis, is_fueter
from g2verify.sphere import dbstar_check, r8_points, rat_sphere_points, s3_zero_points, vertical_laplacian_check

SEED = 2026


@pytest.fixture
def line(capsys):
    """Print one result line (outside capture) and assert on it."""

    def emit(n, ok, detail=""):
        with capsys.disabled():
            print(f"\ncriterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail

    return emit


def sphere(count, seed=SEED):
    return rat_sphere_points(7, count, seed, ["axes"])


def test_criterion_01_dphi_std(line):
    S.phi_std.cache_clear() if hasattr(S.phi_std, "cache_clear") else None
    t = time.perf_counter()
    ok = S.phi_std().d() == S.psi0().rmul(4)
    dt = time.perf_counter() - t
    line(1, ok and dt < 1, f"d phi_std = 4 Psi0 on R^8 exactly ({dt:.2f} s)")


def test_criterion_02_phi_identities(line):
    t = time.perf_counter()
    scan = S.phi_identity_scan()
    dt = time.perf_counter() - t
    ratios = scan["identity2_ratios"]
    # full index sums give 4 phi; the pair-weighted contraction gives the stated 2 phi
    pair = {r / 2 for r in ratios}
    ok = not scan["identity1_failures"] and not scan["identity2_failures"] and pair == {2} and dt < 10
    line(2, ok, f"7^4 and 7^3 scans, phi-psi constant {sorted(pair)} pair-weighted ({dt:.1f} s)")


def test_criterion_03_dimensions(line):
    factors = {k: len(v) for k, v in S.spin7_factors().items()}
    dims = {
        "spin7": len(S.spin7_lie_algebra()),
        "factors": [factors[k] for k in ("minus_x", "minus_y", "plus_d", "fueter_xy")],
        "g2": len(S.g2_lie_algebra()),
        "fueter": linalg.rank([linalg.flatten(L) for L in fueter_basis()]),
        "sp2": D.matrix_family(D.sp2_lie_basis()).rank(),
        "W": D.matrix_family(D.w_basis()).rank(),
    }
    want = {"spin7": 21, "factors": [3, 3, 3, 12], "g2": 14, "fueter": 12, "sp2": 10, "W": 5}
    line(3, dims == want, str(dims))


def test_criterion_04_curvature_golden(line):
    t = time.perf_counter()
    F = I.f_a0()
    closed = F == I.f_a0_formula() and F == I.f_a0_formula_square()
    inter = {k: lhs == rhs for k, (lhs, rhs) in I.curvature_intermediates().items() if "symmetrized" not in k}
    dt = time.perf_counter() - t
    bad = sorted(k for k, ok in inter.items() if not ok)
    line(4, closed and not bad and dt < 30, f"closed form {'holds' if closed else 'fails'}; printed intermediates failing: {bad} ({dt:.1f} s)")


def test_criterion_05_g2_and_spin7_instanton(line):
    F = I.f_a0()
    pts = sphere(100)
    std = I.g2_instanton_check(F, S.build_sphere_structure("std"), pts)
    sq = I.g2_instanton_check(F, S.build_sphere_structure("sq"), pts)
    sp = I.spin7_instanton_check(F, r8_points(50, SEED, ["axes"]))
    line(5, std.passed and sq.passed and sp.passed, f"std {std.status}, sq {sq.status} at 100 points; Spin(7) {sp.status} at 50 points")


def test_criterion_06_gauge(line):
    q = I.quat_data()
    Ag = I.connection("A0:gauge-x")
    formula = Ag.form == I.a0_gauge_x_formula()
    x_reg = I.regular_at(Ag.form, (1, 0, 0, 0, 0, 0, 0, 0))
    y_reg = I.regular_at(Ag.form, (0, 0, 0, 0, 1, 0, 0, 0))
    line(6, formula and x_reg and not y_reg, f"q = y formula {formula}; x-axis regular {x_reg}; y-axis regular {y_reg}")


def test_criterion_07_deformation_family(line):
    pts = sphere(100)
    fam = [D.linear_deformation(M, label=n) for n, M in D.fifteen_basis()]
    kernel = D.kernel_check(fam, pts)
    rank = D.independence_rank(fam, pts[:8])
    nonzero = []
    for k, M in enumerate(D.sp2_lie_basis()):
        res = D.coulomb_residual(D.linear_deformation(M), pts[:4])
        nonzero.append(any(not (a == 0) for a, _, _ in res))
    ok = kernel.passed and rank == 15 and all(nonzero)
    line(7, ok, f"kernel {kernel.status} at 100 points; rank {rank}; Lie(Sp(2)) nonzero residuals {sum(nonzero)}/10")


def test_criterion_08_horizontal_operator(line):
    pts = s3_zero_points(20, SEED)
    eb = D.ebar_frame()
    eigen = all(D.horiz_op_apply(eb[j], p) == tuple(mpq(int(i == j)) for i in range(4)) for p in pts for j in range(4))
    K = D.fueter_kernel_solve(pts)
    i3_out = not K.contains(complex_structure(3)) and not is_fueter(complex_structure(3))
    ok = eigen and K.rank() == 12 and K.same_span(D.fueter_family()) and i3_out
    line(8, ok, f"ebar eigen {eigen} at 20 points; kernel dim {K.rank()}; I3 excluded {i3_out}")


def test_criterion_09_kerphi(line):
    pts = sphere(20)
    base = D.w_candidates()
    images = [D.complex_image(c, i) for i in (1, 2) for c in base]
    kernel = D.kernel_check(images, pts)
    fam = [D.linear_deformation(M, label=n) for n, M in D.fifteen_basis()]
    rank = D.independence_rank(fam + base + images, sphere(8))
    dims = (D.dimension_formula(1), D.dimension_formula(2))
    ok = kernel.passed and rank == 15 and len(fam + base + images) == 30 and dims == (15, 39)
    line(9, ok, f"I1/I2 images {kernel.status} at 20 points; 30-family rank {rank}; dimensions {dims}")


def test_criterion_10_appendix(line):
    pts = sphere(50)
    frames = S.frame_calculus_check(pts)
    fam = S.appendix_family_check(1, 5, pts)
    np15 = S.nearly_parallel_check(S.build_sphere_structure("ab:1,5"), pts)
    npsq = S.nearly_parallel_check(S.build_sphere_structure("sq"), pts)
    vol = S.build_sphere_structure("sq").volume_scale == mpq(3**7, 5**5) and S.squashed_rescaling_check(pts).passed
    p11 = not S.nearly_parallel_check(S.build_sphere_structure("ab:1,1"), pts).passed
    ok = frames.passed and fam.passed and np15.passed and np15.details["tau0"] == mpq(-12, 5) and npsq.passed and npsq.details["tau0"] == -4 and vol and p11
    line(10, ok, f"frames {frames.status}; tau0(1,5) {np15.details.get('tau0')}; tau0(sq) {npsq.details.get('tau0')}; volume {vol}; phi_1,1 rejected {p11}")


def test_criterion_11_sphere_calculus(line):
    pts = sphere(20)
    rough = rough_laplacian_zeta_check(pts)
    vert = all(vertical_laplacian_check(a, pts).passed for a in vertical_laplacian_forms().values())
    spec = S.build_sphere_structure("std")
    # the identity exactly as stated, with coefficient tau0/2 on b ⌞ phi
    stated = {k: dbstar_check(b, spec, pts, coefficient=spec.tau0 / 2).passed for k, b in dbstar_test_forms().items()}
    measured = {k: dbstar_check(b, spec, pts).passed for k, b in dbstar_test_forms().items()}
    ok = rough.passed and vert and all(stated.values())
    line(11, ok, f"rough Laplacian {rough.status}; vertical Laplacian {vert}; d(b⌞phi)⌞phi with tau0/2 {stated}; with tau0 {measured}")


def test_criterion_12_hym(line):
    pts = sphere(50)
    res = I.hym_check(I.f_a0(), pts)
    controls = {tag: I.hym_check(F, pts[:2]) for tag, F in hym_controls().items()}
    ctl_ok = all(not r.passed and r.witness.get("condition") == tag for tag, r in controls.items())
    line(12, res.passed and ctl_ok, f"F_A0 {res.status} at 50 points; (2,0) and trace controls rejected {ctl_ok}")


def test_criterion_13_out_of_scope(capsys):
    with capsys.disabled():
        print("\ncriterion 13: N/A   analytic vanishing, moduli topology and Chern-Simons values are not desk-checkable")
