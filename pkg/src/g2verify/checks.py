"""Registry of named checks, grouped into suites.

Every check takes a ``SuiteConfig`` and returns a ``CheckOutcome``.  Checks
that exercise a known non-example ("controls") pass when the underlying
check fails, and record the witness in their details.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

from gmpy2 import mpq

from . import deformation as dfm
from . import instanton as ins
from . import linalg, structures
from .exactmath import Poly, RatFn
from .exterior import Form, contract, hodge_star
from .quaternion import Quat, complex_structure, fueter_basis, is_fueter, right_mult_matrix
from .report import CheckOutcome, CheckReport, outcome
from .sphere import (
    d_split_check,
    dbstar_check,
    hopf_structure,
    r8_points,
    rat_sphere_points,
    restrict_equals,
    rough_laplacian,
    s3_zero_points,
    tangent_frame,
    vertical_laplacian_check,
)

SUITES = ("algebra", "structures", "appendix", "instanton", "deformation")


@dataclass
class SuiteConfig:
    name: str = "all"
    points: int = 20
    seed: int = 0
    exclude_axes: bool = True
    structures: tuple = ("std", "sq")
    connections: tuple = ("A0", "A0:gauge-x", "A0:gauge-y", "pullback:B0")

    def validate(self) -> None:
        if self.name not in SUITES + ("all",):
            raise ValueError(f"unknown suite {self.name!r}")
        if self.points < 1:
            raise ValueError("points must be at least 1")
        for s in self.structures:
            if s not in structures.STRUCTURES and not s.startswith("ab:"):
                raise ValueError(f"unknown structure {s!r}")
        for c in self.connections:
            if c not in ins.CONNECTIONS:
                raise ValueError(f"unknown connection {c!r}")


@dataclass(frozen=True)
class Check:
    check_id: str
    suite: str
    anchor: str
    run: Callable[[SuiteConfig], CheckOutcome] = field(compare=False)


REGISTRY: dict[str, Check] = {}


def register(check_id: str, suite: str, anchor: str):
    def deco(fn):
        REGISTRY[check_id] = Check(check_id, suite, anchor, fn)
        return fn

    return deco


def checks_for(suite: str) -> list[Check]:
    if suite == "all":
        return sorted(REGISTRY.values(), key=lambda c: c.check_id)
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    return sorted((c for c in REGISTRY.values() if c.suite == suite), key=lambda c: c.check_id)


def run_check(check_id: str, cfg: SuiteConfig) -> CheckOutcome:
    chk = REGISTRY[check_id]
    t = time.perf_counter()
    res = chk.run(cfg)
    res.check_id, res.anchor = chk.check_id, chk.anchor
    res.elapsed = time.perf_counter() - t
    return res


def run_suite(cfg: SuiteConfig, parallel: int = 1) -> CheckReport:
    cfg.validate()
    ids = [c.check_id for c in checks_for(cfg.name)]
    report = CheckReport(cfg.name, cfg.seed, cfg.points)
    if parallel > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=parallel) as ex:
            report.runs = list(ex.map(run_check, ids, [cfg] * len(ids)))
    else:
        report.runs = [run_check(i, cfg) for i in ids]
    return report


# ---------------------------------------------------------------------------
# Point sets


def sphere_points(cfg: SuiteConfig, axes: bool | None = None, count: int | None = None):
    """Seeded points of S^7; ``axes=True`` forces the axis exclusion."""
    excl = ["axes"] if (cfg.exclude_axes if axes is None else axes) else []
    return rat_sphere_points(7, count or cfg.points, cfg.seed, excl)


def _control(res: CheckOutcome, inner: CheckOutcome, what: str) -> CheckOutcome:
    """Pass when ``inner`` failed, as expected of a non-example."""
    res.details[what] = inner.status
    if inner.passed:
        return res.fail({what: "unexpectedly passed"})
    res.details[f"{what}_witness"] = inner.witness
    return res


# ---------------------------------------------------------------------------
# algebra


def _mat(m) -> tuple:
    return tuple(tuple(mpq(c) for c in r) for r in m)


@register("quaternion-relations", "algebra", r"We shall identify $\H$ with ${\mathbb R}^4$")
def _quaternion_relations(cfg):
    res = outcome("", "", 0)
    i, j, k = (-Quat.basis(a) for a in (1, 2, 3))  # e_a = -i, -j, -k
    minus_one = Quat(-1)
    for name, lhs in (("i^2", i * i), ("j^2", j * j), ("k^2", k * k), ("ijk", i * j * k)):
        if not (lhs == minus_one):
            return res.fail({"relation": name, "value": lhs})
    # right multiplication composes contravariantly: R_a R_b = R_{ba}
    for a in range(4):
        for b in range(4):
            qa, qb = Quat.basis(a), Quat.basis(b)
            if _mat(linalg.matmul(right_mult_matrix(qa), right_mult_matrix(qb))) != _mat(right_mult_matrix(qb * qa)):
                return res.fail({"relation": "R_a R_b = R_ba", "pair": (a, b)})
    return res


@register("complex-structures", "algebra", "Define the complex structures")
def _complex_structures(cfg):
    res = outcome("", "", 0)
    I = {a: complex_structure(a) for a in (1, 2, 3)}
    minus = _mat([[-int(r == c) for c in range(4)] for r in range(4)])
    for a in (1, 2, 3):
        if _mat(linalg.matmul(I[a], I[a])) != minus:
            return res.fail({"relation": f"I{a}^2 = -1"})
    prod = _mat(linalg.matmul(I[1], I[2]))
    if prod == _mat(I[3]):
        res.details["I1 I2"] = "+I3"
    elif prod == _mat([[-c for c in r] for r in I[3]]):
        res.details["I1 I2"] = "-I3"
    else:
        return res.fail({"relation": "I1 I2 = +-I3"})
    return res


@register("fueter-space", "algebra", "The 12-dimensional subspace of Fueter maps")
def _fueter_space(cfg):
    res = outcome("", "", 0)
    fb = fueter_basis()
    fam = linalg.LinearFamily.of(fb)
    res.details["dimension"] = fam.rank()
    if fam.rank() != 12 or not all(is_fueter(L) for L in fb):
        return res.fail({"dimension": fam.rank()})
    if is_fueter(complex_structure(3)):
        return res.fail({"I3": "unexpectedly Fueter"})
    return res


@register("spin7-lie-algebra", "algebra", "corresponds to the subspace of 2-forms")
def _spin7_lie_algebra(cfg):
    res = outcome("", "", 0)
    alg = structures.spin7_lie_algebra()
    dims = {}
    vecs = []
    for name, forms in structures.spin7_factors().items():
        vs = [structures.two_form_vector(f) for f in forms]
        dims[name] = linalg.rank(vs)
        if not all(structures.spin7_lie_check(f)[0] for f in forms):
            return res.fail({"factor": name, "reason": "not inside Lie(Spin(7))"})
        vecs += vs
    res.details.update({"dimension": len(alg), "factor_dimensions": dims, "sum_rank": linalg.rank(vecs)})
    if len(alg) != 21 or list(dims.values()) != [3, 3, 3, 12] or linalg.rank(vecs) != 21:
        return res.fail(dict(res.details))
    return res


@register("g2-lie-algebra", "algebra", "preserves the model 3-form")
def _g2_lie_algebra(cfg):
    res = outcome("", "", 0)
    n = len(structures.g2_lie_algebra())
    res.details["dimension"] = n
    return res if n == 14 else res.fail({"dimension": n})


@register("sp2-lie-algebra", "algebra", r"the 10-dimensional group ${\mathrm{Sp} }(2)$ of orthogonal quaternionic matrices")
def _sp2_lie_algebra(cfg):
    res = outcome("", "", 0)
    basis = dfm.sp2_lie_basis()
    r = dfm.matrix_family(basis).rank()
    res.details["dimension"] = r
    if r != 10:
        return res.fail({"dimension": r})
    for M in basis:
        if not structures.spin7_lie_check(Form.from_matrix(M))[0]:
            return res.fail({"reason": "Sp(2) element outside Lie(Spin(7))"})
    return res


@register("w-representation", "algebra", "has a 5-dimensional irreducible representation $W,$")
def _w_representation(cfg):
    res = outcome("", "", 0)
    W = dfm.w_basis()
    fam = dfm.fifteen_basis()
    res.details["W_rank"] = dfm.matrix_family(W).rank()
    res.details["fifteen_rank"] = dfm.matrix_family([m for _, m in fam]).rank()
    if res.details["W_rank"] != 5 or res.details["fifteen_rank"] != 15:
        return res.fail(dict(res.details))
    if not all(dfm.is_symmetric(M) for M in W):
        return res.fail({"reason": "W element not symmetric"})
    for label, M in fam[5:]:
        if not structures.spin7_lie_check(Form.from_matrix(M))[0]:
            return res.fail({"reason": f"{label} outside Lie(Spin(7))"})
    for M in W:
        for S in dfm.sp2_lie_basis():
            if dfm.trace_pairing(M, S) != 0:
                return res.fail({"reason": "W not orthogonal to Lie(Sp(2))"})
    return res


@register("model-forms", "algebra", "Denote the dual 4-form by")
def _model_forms(cfg):
    res = outcome("", "", 0)
    mf = structures.model_forms()
    claims = {
        "phi0 formula": (mf.phi0, structures.phi0_formula()),
        "psi0 formula": (mf.psi0, structures.psi0_formula()),
        "psi0 = *phi0": (mf.psi0, hodge_star(mf.phi0)),
        "Psi0 = omega^2/2 + Re Omega": (mf.Psi0, mf.omega.wedge(mf.omega).rmul(mpq(1, 2)) + mf.ReOmega),
        "*Psi0 = Psi0": (hodge_star(mf.Psi0), mf.Psi0),
    }
    for name, (a, b) in claims.items():
        if a != b:
            return res.fail({"identity": name})
    return res


@register("phi-contraction-identities", "algebra", "The following identities hold between")
def _phi_identities(cfg):
    res = outcome("", "", 7**4 + 7**3)
    scan = structures.phi_identity_scan()
    ratios = scan["identity2_ratios"]
    res.details["identity2_full_sum"] = sorted(ratios)
    res.details["identity2_pair_weighted"] = [r / 2 for r in sorted(ratios)]
    if scan["identity1_failures"]:
        return res.fail({"identity": 1, "first": scan["identity1_failures"][0]})
    if scan["identity2_failures"] or ratios != {structures.PHI_PSI_CONSTANTS["full_sum"]}:
        return res.fail({"identity": 2, "ratios": sorted(ratios)})
    return res


@register("model-metric", "algebra", "defines a unique Riemannian metric")
def _model_metric(cfg):
    from .exterior import MetricSpec

    mf = structures.model_forms()
    vol = Form.basis(7, range(7))
    return structures.verify_metric(mf.phi0, MetricSpec.euclidean(7), vol)


@register("form-contraction-convention", "algebra", "We also take interior products between differential forms")
def _contraction_convention(cfg):
    """phi ⌞ b = *(psi ^ b) for the model forms, on all basis 2-forms."""
    res = outcome("", "", 21)
    mf = structures.model_forms()
    for i in range(7):
        for j in range(i + 1, 7):
            b = Form.basis(7, (i, j))
            if contract(mf.phi0, b) != hodge_star(mf.psi0.wedge(b)):
                return res.fail({"basis": (i, j)})
    return res


# ---------------------------------------------------------------------------
# structures


@register("dphi-std-ambient", "structures", r"d \phi_{std} = \left. 4 \Psi_0 \right|_{S^7}")
def _dphi_ambient(cfg):
    res = outcome("", "", 0)
    if structures.phi_std().d() != structures.psi0().rmul(4):
        return res.fail({"identity": "d phi_std = 4 Psi0"})
    res.details["identity"] = "d phi_std = 4 Psi0 on R^8"
    return res


@register("std-nearly-parallel", "structures", r"is a nearly parallel ${\mathbb G}_2$-structure")
def _std_np(cfg):
    return structures.nearly_parallel_check(structures.build_sphere_structure("std"), sphere_points(cfg))


@register("std-metric", "structures", "defines the round metric")
def _std_metric(cfg):
    return structures.verify_metric_at(structures.build_sphere_structure("std"), sphere_points(cfg))


@register("std-sp2-invariant-form", "structures", r"define the global ${\mathrm{Sp} }(2)$-invariant forms on $S^7$")
def _std_sp2(cfg):
    return restrict_equals(structures.phi_std_sp2(), structures.phi_std(), sphere_points(cfg))


@register("std-gradient-phi", "structures", "is nearly parallel if and only if")
def _gradphi(cfg):
    return structures.gradphi_check(sphere_points(cfg))


@register("frame-derivatives", "structures", r"The frame $\{\zeta_i\}$ is coclosed")
def _frames(cfg):
    return structures.frame_calculus_check(sphere_points(cfg))


def rough_laplacian_zeta_check(points, check_id="rough-laplacian-zeta", anchor="") -> CheckOutcome:
    """nabla*nabla zeta_i = 6 zeta_i, with vertical part 2 zeta_i and horizontal part 4 zeta_i."""
    res = outcome(check_id, anchor, len(points))
    zeta = structures.frame_set().zeta
    for pt in points:
        fr = tangent_frame(pt)
        for i, z in enumerate(zeta):
            rz = fr.restrict(z)
            for part, c in (("full", 6), ("vertical", 2), ("horizontal", 4)):
                lap = fr.restrict(rough_laplacian(z, pt, part=part))
                if lap != rz.rmul(c):
                    return res.fail({"point": fr.point, "zeta": i + 1, "part": part, "value": str(lap)})
    return res


@register("rough-laplacian-zeta", "structures", r"\nabla^* \nabla^v \zeta_i = 2 \zeta_i, \qquad \nabla^* \nabla^h \zeta_i = 4 \zeta_i")
def _rough_zeta(cfg):
    return rough_laplacian_zeta_check(sphere_points(cfg))


def generic_one_form() -> Form:
    """A fixed polynomial 1-form used as a test input."""
    v = [RatFn(Poly.var(i)) for i in range(8)]
    return Form(8, 1, {(0,): v[1] * v[5] + 1, (3,): v[2] - v[7] * v[7], (6,): v[0] * v[4]})


def generic_two_form() -> Form:
    v = [RatFn(Poly.var(i)) for i in range(8)]
    return Form(8, 2, {(0, 5): v[1], (2, 3): v[6] * v[0] + 2, (4, 7): v[3] - v[5]})


def dbstar_test_forms() -> dict:
    fs = structures.frame_set()
    return {"omegabar_1": fs.omega_bar[0], "generic": generic_two_form(), "zero": Form.zero(8, 2)}


@register("dbstar-identity", "structures", "any 2-form $b,$ there holds")
def _dbstar(cfg):
    res = outcome("", "", 0)
    spec = structures.build_sphere_structure("std")
    pts = sphere_points(cfg)
    res.details["coefficient"] = f"{structures.DBSTAR_COEFFICIENT} * tau0"
    for name, b in dbstar_test_forms().items():
        r = dbstar_check(b, spec, pts)
        res.points_tested = r.points_tested
        if not r.passed:
            return res.fail({"form": name, **r.witness})
    half = dbstar_check(structures.frame_set().omega_bar[0], spec, pts, coefficient=spec.tau0 / 2)
    res.details["tau0/2 coefficient on omegabar_1"] = half.status
    return res


def vertical_laplacian_forms() -> dict:
    return {"zeta_1": structures.frame_set().zeta[0], "generic": generic_one_form(), "zero": Form.zero(8, 1)}


@register("vertical-laplacian", "structures", "The vertical component of the Laplacian")
def _vertical_laplacian(cfg):
    res = outcome("", "", 0)
    pts = sphere_points(cfg)
    for name, a in vertical_laplacian_forms().items():
        r = vertical_laplacian_check(a, pts)
        res.points_tested = r.points_tested
        if not r.passed:
            return res.fail({"form": name, **r.witness})
    return res


@register("d-split-decomposition", "structures", r"\Omega^1_{S^7} = \Omega^1_v \oplus \Omega^1_h")
def _d_split(cfg):
    res = outcome("", "", 0)
    pts = sphere_points(cfg)
    for name, a in vertical_laplacian_forms().items():
        r = d_split_check(a, pts)
        res.points_tested = r.points_tested
        if not r.passed:
            return res.fail({"form": name, **r.witness})
    return res


# ---------------------------------------------------------------------------
# appendix


@register("appendix-frame-identities", "appendix", r"d \zeta_i  = \epsilon_{ijk} \zeta_j \wedge \zeta_k + 2 \bar{\omega}_i")
def _app_frames(cfg):
    return structures.frame_calculus_check(sphere_points(cfg))


@register("appendix-family-formulas", "appendix", r"\phi_{a,b} = a \nu - b \zeta_i \wedge \bar{\omega}_i")
def _app_family(cfg):
    res = structures.appendix_family_check(1, 5, sphere_points(cfg))
    if res.passed:
        res.details["psi_ab"] = "a^{-2/3} b (b nubar - (a/2) eps zeta zeta omegabar)"
    return res


@register("appendix-squashed-nearly-parallel", "appendix", "After normalizing by")
def _app_np(cfg):
    pts = sphere_points(cfg)
    res = structures.nearly_parallel_check(structures.build_sphere_structure("sq"), pts)
    if not res.passed:
        return res
    r15 = structures.nearly_parallel_check(structures.build_sphere_structure("ab:1,5"), pts)
    res.details["tau0(phi_1,5)"] = r15.details.get("tau0")
    if not r15.passed or r15.details.get("tau0") != mpq(-12, 5):
        return res.fail({"phi_1,5": r15.witness or r15.details.get("tau0")})
    return res


@register("squashed-rescaling", "appendix", "After normalizing by")
def _app_rescale(cfg):
    res = structures.squashed_rescaling_check(sphere_points(cfg))
    res.details["Vol_sq/Vol_std"] = "3^7/5^5"
    return res


@register("squashed-metric", "appendix", r"Vol_{sq} = \frac{3^7}{5^5} Vol_{std}")
def _app_metric(cfg):
    return structures.verify_metric_at(structures.build_sphere_structure("sq"), sphere_points(cfg))


@register("phi-1-1-not-nearly-parallel", "appendix", "is nearly parallel if and only")
def _app_control(cfg):
    res = outcome("", "", cfg.points)
    inner = structures.nearly_parallel_check(structures.build_sphere_structure("ab:1,1"), sphere_points(cfg, axes=True))
    return _control(res, inner, "phi_1,1 nearly parallel")


# ---------------------------------------------------------------------------
# instanton


@register("b0-curvature", "instanton", "we obtain the well-known connection matrix")
def _b0_curv(cfg):
    res = outcome("", "", 0)
    if ins.curvature(ins.b0()) != ins.f_b0_formula():
        return res.fail({"identity": "F_B0 = dx ^ dxbar / (1 + |x|^2)^2"})
    if ins.curvature(GaugeZero()) != Form.zero(4, 2):
        return res.fail({"identity": "F_0 = 0"})
    return res


def GaugeZero() -> ins.GaugeConnection:
    return ins.GaugeConnection(Form.zero(4, 1), "0")


@register("b0-duality-type", "instanton", "standard anti-self-dual (ASD) instanton")
def _b0_type(cfg):
    res = outcome("", "", 0)
    t = ins.b0_duality_type()
    res.details["F_B0 type (dx^0123 orientation)"] = t
    res.details["F_Bsd type"] = ins.asd_check(ins.f_bsd_formula())["type"]
    if t not in ("self-dual", "anti-self-dual") or res.details["F_Bsd type"] == t:
        return res.fail(dict(res.details))
    return res


@register("a0-two-routes", "instanton", "by the fiber-preserving map")
def _a0_routes(cfg):
    res = outcome("", "", 0)
    if ins.a0().form != ins.a0_by_pullback().form:
        return res.fail({"identity": "A0 formula = pullback of the ASD connection form"})
    return res


@register("a0-conical", "instanton", "the cross-section of the tangent cone")
def _a0_conical(cfg):
    res = outcome("", "", 0)
    r = [RatFn(Poly.var(i)) for i in range(8)]
    if not ins.a0().form.interior_first(r).is_zero():
        return res.fail({"identity": "r ⌟ A0 = 0"})
    if not ins.f_a0().interior_first(r).is_zero():
        return res.fail({"identity": "r ⌟ F_A0 = 0"})
    return res


@register("a0-curvature-closed-form", "instanton", "we obtain the curvature form")
def _a0_curv(cfg):
    res = outcome("", "", 0)
    F = ins.f_a0()
    if F != ins.f_a0_formula():
        return res.fail({"identity": "first closed form"})
    if F != ins.f_a0_formula_square():
        return res.fail({"identity": "second closed form"})
    return res


@register("a0-curvature-intermediates", "instanton", r"dA_0 + A_0 \wedge A_0")
def _a0_intermediates(cfg):
    """Checks every intermediate, using the symmetrized cross term where the displays drop it."""
    res = outcome("", "", 0)
    printed_failures = []
    for name, (lhs, rhs) in ins.curvature_intermediates().items():
        ok = lhs == rhs
        if name in ins.PRINTED_INTERMEDIATE_FAILURES:
            if not ok:
                printed_failures.append(name)
            continue
        if not ok:
            return res.fail({"identity": name})
    res.details["printed displays that do not hold"] = printed_failures
    return res


@register("a0-gauge-x-formula", "instanton", "can be removed by applying the gauge transformation $g(x,y) = y/|y|")
def _a0_gauge(cfg):
    res = outcome("", "", 0)
    q = ins.quat_data()
    Ag = ins.connection("A0:gauge-x")
    if Ag.form != ins.a0_gauge_x_formula():
        return res.fail({"identity": "q = y gauge formula"})
    if ins.curvature(Ag) != ins.gauge_curvature(ins.f_a0(), q.y):
        return res.fail({"identity": "F transforms by conjugation"})
    if ins.gauge_transform(ins.a0(), Quat(1)).form != ins.a0().form:
        return res.fail({"identity": "constant gauge e0 acts trivially"})
    return res


@register("gauge-axis-regularity", "instanton", "along the $x$-axis can be removed")
def _gauge_axes(cfg):
    res = outcome("", "", 0)
    xa = (1, 0, 0, 0, 0, 0, 0, 0)
    ya = (0, 0, 0, 0, 1, 0, 0, 0)
    got = {
        "A0:gauge-x on x-axis": ins.regular_at(ins.connection("A0:gauge-x").form, xa),
        "A0:gauge-x on y-axis": ins.regular_at(ins.connection("A0:gauge-x").form, ya),
        "A0:gauge-y on x-axis": ins.regular_at(ins.connection("A0:gauge-y").form, xa),
        "A0:gauge-y on y-axis": ins.regular_at(ins.connection("A0:gauge-y").form, ya),
    }
    res.details.update({k: ("regular" if v else "pole") for k, v in got.items()})
    if list(got.values()) != [True, False, False, True]:
        return res.fail(dict(res.details))
    return res


@register("a0-g2-instanton-std", "instanton", "if its curvature $F_A$ satisfies")
def _a0_g2_std(cfg):
    return ins.g2_instanton_check(ins.f_a0(), structures.build_sphere_structure("std"), sphere_points(cfg, axes=True))


@register("a0-g2-instanton-sq", "instanton", "if and only if the pullback")
def _a0_g2_sq(cfg):
    return ins.g2_instanton_check(ins.f_a0(), structures.build_sphere_structure("sq"), sphere_points(cfg, axes=True))


@register("a0-spin7-instanton", "instanton", "the cross-section of the tangent cone")
def _a0_spin7(cfg):
    return ins.spin7_instanton_check(ins.f_a0(), r8_points(cfg.points, cfg.seed, ["axes"]))


@register("a0-curvature-in-sp2", "instanton", r"takes values in ${\mathrm{Lie}}({\mathrm{Sp} }(2))")
def _a0_sp2(cfg):
    pts = sphere_points(cfg, axes=True)
    res = outcome("", "", len(pts))
    fam = dfm.matrix_family(dfm.sp2_lie_basis())
    F = ins.f_a0()
    for pt in pts:
        Fp = F.at(pt.coords)
        for a in (1, 2, 3):
            m = ins.component(Fp, a).to_matrix()
            if not fam.contains(m):
                return res.fail({"point": pt.coords, "component": a})
    return res


@register("pullback-b0-g2", "instanton", "if and only if the pullback")
def _pb_b0(cfg):
    pts = sphere_points(cfg, axes=True)
    F = ins.hopf_pullback_form(ins.f_b0_formula())
    res = outcome("", "", len(pts))
    if ins.curvature(ins.connection("pullback:B0")) != F:
        return res.fail({"identity": "curvature commutes with pullback"})
    for s in ("std", "sq"):
        r = ins.g2_instanton_check(F, structures.build_sphere_structure(s), pts)
        if not r.passed:
            return res.fail({"structure": s, **r.witness})
    return res


@register("pullback-bsd-not-g2", "instanton", "if and only if the pullback")
def _pb_bsd(cfg):
    res = outcome("", "", cfg.points)
    F = ins.hopf_pullback_form(ins.f_bsd_formula())
    inner = ins.g2_instanton_check(F, structures.build_sphere_structure("std"), sphere_points(cfg, axes=True))
    return _control(res, inner, "pullback of the opposite-type connection is a G2-instanton")


def hym_controls() -> dict:
    """F_A0 plus a (2,0)+(0,2) piece for I1, and F_A0 plus a trace piece."""
    e1 = Quat.basis(1)
    w2 = structures.omega_x(2) + structures.omega_y(2)
    w1 = structures.omega_x(1) + structures.omega_y(1)
    F = ins.f_a0()
    return {
        "(i)": F + w2.map_coeffs(lambda c: e1 * c),
        "(ii)": F + w1.map_coeffs(lambda c: e1 * c),
    }


@register("hym-a0", "instanton", "if and only if $B$ is Hermitian-Yang-Mills")
def _hym(cfg):
    pts = sphere_points(cfg, axes=True)
    res = ins.hym_check(ins.f_a0(), pts)
    if not res.passed:
        return res
    for tag, F in hym_controls().items():
        r = ins.hym_check(F, pts[:1])
        res.details[f"control {tag}"] = r.witness.get("condition") if r.witness else "pass"
        if r.passed or r.witness.get("condition") != tag:
            return res.fail({"control": tag, "result": r.status})
    return res


@register("bundle-class", "instanton", "has homotopy class")
def _bundle(cfg):
    res = outcome("", "", 0)
    want = {0: 0, 1: 1, 3: 6}
    got = {k: ins.bundle_class(k) for k in want}
    res.details["classes"] = got
    return res if got == want else res.fail(got)


@register("bianchi-identity", "instanton", "we obtain the curvature form")
def _bianchi(cfg):
    res = outcome("", "", 0)
    for A, F in ((ins.b0(), ins.f_b0_formula()), (ins.a0(), ins.f_a0())):
        if not ins.bianchi_defect(A, F).is_zero():
            return res.fail({"connection": A.label})
    return res


@register("g2-instanton-matrix", "instanton", "if its curvature $F_A$ satisfies")
def _g2_matrix(cfg):
    pts = sphere_points(cfg, axes=True)
    res = outcome("", "", len(pts))
    for label in cfg.connections:
        F = ins.curvature(ins.connection(label)) if label != "A0" else ins.f_a0()
        for s in cfg.structures:
            r = ins.g2_instanton_check(F, structures.build_sphere_structure(s), pts)
            res.details[f"{label} on {s}"] = r.status
            if not r.passed:
                res.fail({"connection": label, "structure": s, **r.witness})
    return res


# ---------------------------------------------------------------------------
# deformation


def _fifteen():
    return [dfm.linear_deformation(M, label=name) for name, M in dfm.fifteen_basis()]


@register("sp2-coulomb-nonzero", "deformation", "vanishes identically if and only if $M$ lies in the orthogonal complement")
def _sp2_coulomb(cfg):
    pts = sphere_points(cfg, axes=True)
    res = outcome("", "", len(pts))
    for k, M in enumerate(dfm.sp2_lie_basis()):
        r = dfm.coulomb_check(dfm.linear_deformation(M, label=f"sp2:{k}"), pts)
        if not r.passed:
            return res.fail(r.witness)
        if r.details["in_coulomb_gauge"]:
            return res.fail({"candidate": f"sp2:{k}", "reason": "zero Coulomb residual at every point"})
    res.details["coulomb_sign"] = dfm.COULOMB_SIGN
    return res


@register("15fam-coulomb", "deformation", "contains the 15-dimensional space")
def _fam_coulomb(cfg):
    pts = sphere_points(cfg, axes=True)
    res = outcome("", "", len(pts))
    for c in _fifteen():
        r = dfm.coulomb_check(c, pts)
        if not r.passed or not r.details["in_coulomb_gauge"]:
            return res.fail({"candidate": c.label, **(r.witness or {"reason": "nonzero residual"})})
    return res


@register("15fam-kernel", "deformation", "contains the 15-dimensional space")
def _fam_kernel(cfg):
    return dfm.kernel_check(_fifteen(), sphere_points(cfg, axes=True))


RANK_MIN_POINTS = 8


@register("15fam-rank", "deformation", "contains the 15-dimensional space")
def _fam_rank(cfg):
    n = max(cfg.points, RANK_MIN_POINTS)
    pts = sphere_points(cfg, axes=True, count=n)
    res = outcome("", "", n)
    r = dfm.independence_rank(_fifteen(), pts)
    res.details["15fam rank"] = r
    sp = dfm.independence_rank([dfm.linear_deformation(M) for M in dfm.sp2_lie_basis()], pts)
    res.details["Lie(Sp(2)) candidates rank"] = sp
    return res if r == 15 and sp > 0 else res.fail(dict(res.details))


@register("horizontal-ebar-eigen", "deformation", r"define a local frame for $\Omega^1_h$ near $S^3_0$")
def _ebar(cfg):
    pts = s3_zero_points(cfg.points, cfg.seed)
    res = outcome("", "", len(pts))
    for pt in pts:
        for j, e in enumerate(dfm.ebar_frame()):
            beta = dfm.horiz_op_apply(e, pt)
            want = tuple(mpq(int(i == j)) for i in range(4))
            if beta != want:
                return res.fail({"point": pt.coords, "j": j, "value": beta})
    return res


@register("fueter-kernel", "deformation", r"The kernel of $\varphi_0$ consists of sections of the form")
def _fueter_kernel(cfg):
    pts = s3_zero_points(max(cfg.points, 2), cfg.seed)
    res = outcome("", "", len(pts))
    K = dfm.fueter_kernel_solve(pts)
    res.details["kernel_dimension"] = K.rank()
    ident = [[mpq(int(i == j)) for j in range(4)] for i in range(4)]
    I3 = complex_structure(3)
    if K.rank() != 12 or not K.same_span(dfm.fueter_family()):
        return res.fail(dict(res.details))
    if K.contains(I3) or not K.contains(ident):
        return res.fail({"reason": "Id must lie in the kernel and I3 must not"})
    return res


@register("kerphi-decomposition", "deformation", "Here the complex structures $I_1$ and $I_2$ act pointwise")
def _kerphi(cfg):
    n = max(cfg.points, RANK_MIN_POINTS)
    pts = sphere_points(cfg, axes=True, count=n)
    res = dfm.ker_phi_decomposition_check(pts)
    if not res.passed:
        return res
    i3 = [dfm.complex_image(c, 3) for c in dfm.w_candidates()]
    inner = dfm.kernel_check(i3, pts)
    return _control(res, inner, "I3 images in the kernel")


@register("dimension-formula", "deformation", r"this has dimension $3 \left( 8\kappa - 3 \right).$")
def _dimension(cfg):
    res = outcome("", "", 0)
    got = {k: dfm.dimension_formula(k) for k in (1, 2)}
    res.details["dimensions"] = got
    return res if got == {1: 15, 2: 39} else res.fail(got)


WEITZENBOCK_MAX_POINTS = 2


def weitzenbock_candidates() -> list:
    fam = _fifteen()
    wi3 = dfm.linear_deformation(dfm.times_complex_structure(dfm.w_basis()[1], 3), label="W:1 I3")
    return [fam[6], wi3]


@register("weitzenbock-round", "deformation", "In the case of the round $7$-sphere, we have")
def _weitzenbock(cfg):
    pts = sphere_points(cfg, axes=True, count=min(cfg.points, WEITZENBOCK_MAX_POINTS))
    res = outcome("", "", len(pts))
    res.details["coefficient"] = dfm.WEITZENBOCK_COEFFICIENT
    z = structures.frame_set().zeta[0].map_coeffs(lambda c: Quat.basis(1) * c)
    flat = ins.GaugeConnection(Form.zero(8, 1), "trivial")
    r = dfm.weitzenbock_check(dfm.DeformCandidate(z, "zeta_1 e1"), pts, A=flat, F=None)
    if not r.passed:
        return res.fail(r.witness)
    for c in weitzenbock_candidates():
        r = dfm.weitzenbock_check(c, pts)
        if not r.passed:
            return res.fail(r.witness)
    return res


@register("gauge-direction-control", "deformation", r"we obtain the \emph{deformation operator}")
def _gauge_dir(cfg):
    """L(D_A u) has one-form part phi ⌞ [F, u] = 0 and a nonzero scalar part."""
    pts = sphere_points(cfg, axes=True, count=min(cfg.points, 4))
    res = outcome("", "", len(pts))
    cand = dfm.gauge_direction(Quat.basis(2))
    nonzero = False
    for pt, (s, one) in zip(pts, dfm.deform_operator_eval(cand, pts)):
        if not one.is_zero():
            return res.fail({"point": pt.coords, "one_form": str(one)})
        nonzero = nonzero or not (s == 0)
    if not nonzero:
        return res.fail({"reason": "D_A u in Coulomb gauge at every point"})
    return res
