"""Model Spin(7)/G2 forms, Lie-algebra conditions, and G2-structures on S^7.

Coordinates on R^8 are x0..x3, y0..y3 with orientation dx^{0123} ^ dy^{0123};
R^7 is the span of x1, x2, x3, y0..y3 with orientation dx^{123} ^ dy^{0123}.

Sphere structures are stored as ambient polynomial 3-forms on R^8.  Their
metrics are the round metric rescaled by constants on the vertical and
horizontal distributions of the Hopf fibration, so at a point the metric in
the adapted frame (U_1, U_2, U_3, h_1..h_4) is block diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Sequence

import gmpy2
from gmpy2 import mpq

from . import linalg
from .exactmath import Poly, RatFn
from .exterior import Form, MetricSpec, UnsupportedMetric, contract, hodge_star, rational_sqrt, wedge
from .quaternion import OMEGA_MATRICES, fueter_basis
from .report import CheckOutcome, outcome
from .sphere import TangentFrame, codifferential, covariant_deriv, restrict_equals, tangent_frame

EPS_CYCLIC = ((0, 1, 2), (1, 2, 0), (2, 0, 1))
# sign pattern of the omega_i^x ^ omega_i^y terms in Psi0
PSI_SIGNS = (1, 1, -1)

# Full index sums over (p, l) in  g^pq g^lm phi_pli psi_qmjk  give FULL_SUM * phi_ijk;
# the stated constant 2 corresponds to one term per unordered pair (p, l).
PHI_PSI_CONSTANTS = {"full_sum": 4, "unordered_pair": 2}

# Coefficient c in  d(b ⌟ phi) ⌟ phi = d*b - db ⌟ psi + c tau0 b ⌟ phi, measured
# with the contraction weights of exterior.CONTRACTION_WEIGHTS.  The value 1/2
# follows only if the phi-psi contraction constant is taken to be 2 under full
# index sums, where it is actually 4.
DBSTAR_COEFFICIENT = mpq(1)


# ---------------------------------------------------------------------------
# Basic forms on R^8


def dq(*idx: int, n: int = 8) -> Form:
    return Form.basis(n, idx)


def _omega(i: int, offset: int, n: int = 8) -> Form:
    return Form(n, 2, {(a + offset, b + offset): mpq(v) for (a, b), v in OMEGA_MATRICES[i].items()})


def omega_x(i: int) -> Form:
    return _omega(i, 0)


def omega_y(i: int) -> Form:
    return _omega(i, 4)


def position_field() -> tuple:
    """r = sum x^a d/dx^a + y^a d/dy^a."""
    return tuple(RatFn(Poly.var(i)) for i in range(8))


def r_contract(form: Form) -> Form:
    return form.interior_first(position_field())


@lru_cache(maxsize=None)
def psi0() -> Form:
    out = dq(0, 1, 2, 3) + dq(4, 5, 6, 7)
    for i, s in zip((1, 2, 3), PSI_SIGNS):
        out = out + omega_x(i).wedge(omega_y(i)).rmul(s)
    return out


def to_r7(form8: Form) -> Form:
    """Drop the x0 slot of a form with no dx^0 components."""
    terms = {}
    for idx, c in form8.items():
        if 0 in idx:
            raise ValueError("form has dx^0 components")
        terms[tuple(i - 1 for i in idx)] = c
    return Form(7, form8.k, terms)


def to_r8(form7: Form) -> Form:
    return Form(8, form7.k, {tuple(i + 1 for i in idx): c for idx, c in form7.items()})


def _complex_wedge(factors):
    """Wedge of complex 1-forms given as (re, im) pairs."""
    re, im = factors[0]
    for r2, i2 in factors[1:]:
        re, im = re.wedge(r2) - im.wedge(i2), re.wedge(i2) + im.wedge(r2)
    return re, im


@dataclass(frozen=True)
class ModelForms:
    Psi0: Form
    phi0: Form
    psi0: Form
    omega: Form
    ReOmega: Form
    ImOmega: Form


@lru_cache(maxsize=None)
def model_forms() -> ModelForms:
    Psi = psi0()
    phi8 = Psi.interior_first([1, 0, 0, 0, 0, 0, 0, 0])
    phi = to_r7(phi8)
    psi = hodge_star(phi)
    dz = [(dq(2 * j), dq(2 * j + 1)) for j in range(4)]
    re, im = _complex_wedge(dz)
    return ModelForms(Psi, phi, psi, omega_x(1) + omega_y(1), re, im)


def phi0_formula() -> Form:
    """dx^{123} + dx^1 ^ omega_1^y + dx^2 ^ omega_2^y - dx^3 ^ omega_3^y on R^7."""
    f = dq(1, 2, 3)
    for i, s in zip((1, 2, 3), PSI_SIGNS):
        f = f + dq(i).wedge(omega_y(i)).rmul(s)
    return to_r7(f)


def psi0_formula() -> Form:
    """dy^{0123} + dx^{23} ^ w1y - dx^{13} ^ w2y - dx^{12} ^ w3y on R^7."""
    f = dq(4, 5, 6, 7) + dq(2, 3).wedge(omega_y(1)) - dq(1, 3).wedge(omega_y(2)) - dq(1, 2).wedge(omega_y(3))
    return to_r7(f)


# ---------------------------------------------------------------------------
# Lie algebra conditions


def spin7_defect(eta: Form) -> Form:
    return eta + hodge_star(psi0().wedge(eta))


def spin7_lie_check(eta: Form) -> tuple[bool, Form]:
    d = spin7_defect(eta)
    return d.is_zero(), d


PAIRS8 = list(combinations(range(8), 2))
PAIRS7 = list(combinations(range(7), 2))


def two_form_vector(eta: Form, n: int = 8) -> list:
    return [eta[(i, j)] for i, j in combinations(range(n), 2)]


def two_form_from_vector(v: Sequence, n: int = 8) -> Form:
    return Form(n, 2, {ij: c for ij, c in zip(combinations(range(n), 2), v)})


def _linear_kernel(op, n: int, out_len) -> list[Form]:
    """Kernel of a linear map on 2-forms on R^n, returned as forms."""
    pairs = list(combinations(range(n), 2))
    cols = []
    for ij in pairs:
        img = op(Form(n, 2, {ij: mpq(1)}))
        cols.append(out_len(img))
    rows = [[cols[c][r] for c in range(len(pairs))] for r in range(len(cols[0]))]
    return [two_form_from_vector(v, n) for v in linalg.nullspace(rows, len(pairs))]


def spin7_lie_algebra() -> list[Form]:
    return _linear_kernel(spin7_defect, 8, lambda f: two_form_vector(f, 8))


def g2_lie_check(xi: Form) -> bool:
    return model_forms().psi0.wedge(xi).is_zero()


def g2_lie_algebra() -> list[Form]:
    psi = model_forms().psi0
    return _linear_kernel(lambda x: psi.wedge(x), 7, lambda f: [f[idx] for idx in combinations(range(7), 6)])


def fueter_two_form(L) -> Form:
    """L_ij dy^i ^ dx^j."""
    return Form(8, 2, {(4 + i, j): L[i][j] for i in range(4) for j in range(4) if L[i][j]})


@lru_cache(maxsize=None)
def spin7_factors() -> dict:
    asd = {1: ((0, 1), (2, 3), -1), 2: ((0, 2), (1, 3), 1), 3: ((0, 3), (1, 2), -1)}

    def asd_form(i, off):
        (a, b), (c, d), s = asd[i]
        return Form(8, 2, {(a + off, b + off): mpq(1), (c + off, d + off): mpq(s)})

    return {
        "minus_x": [asd_form(i, 0) for i in (1, 2, 3)],
        "minus_y": [asd_form(i, 4) for i in (1, 2, 3)],
        "plus_d": [omega_x(1) - omega_y(1), omega_x(2) - omega_y(2), omega_x(3) + omega_y(3)],
        "fueter_xy": [fueter_two_form(L) for L in fueter_basis()],
    }


def spin7_decompose(eta: Form) -> dict:
    """Components of a Lie(Spin(7)) element in the four factors."""
    member, _ = spin7_lie_check(eta)
    if not member:
        raise ValueError("not an element of Lie(Spin(7))")
    factors = spin7_factors()
    names = list(factors)
    cols, owner = [], []
    for name in names:
        for f in factors[name]:
            cols.append(two_form_vector(f))
            owner.append((name, f))
    coeffs = linalg.solve(cols, two_form_vector(eta))
    if coeffs is None:
        raise ValueError("factor bases do not span the input")
    out = {name: Form.zero(8, 2) for name in names}
    for c, (name, f) in zip(coeffs, owner):
        if c:
            out[name] = out[name] + f.rmul(c)
    return out


# ---------------------------------------------------------------------------
# Contraction identities and metric verification


def phi_identity_scan(phi: Form | None = None, psi: Form | None = None) -> dict:
    """Scan both contraction identities over all index tuples (Euclidean metric).

    Returns the defects of identity 1 and the ratio found for identity 2
    (full index sums).
    """
    mf = model_forms()
    phi = mf.phi0 if phi is None else phi
    psi = mf.psi0 if psi is None else psi
    n = phi.n
    r = range(n)
    P = {t: phi[t] for t in product(r, repeat=3)}
    S = {t: psi[t] for t in product(r, repeat=4)}
    delta = lambda a, b: 1 if a == b else 0
    bad1 = []
    for i, j, k, l in product(r, repeat=4):
        lhs = sum((P[(p, i, j)] * P[(p, k, l)] for p in r), mpq(0))
        rhs = delta(i, k) * delta(j, l) - delta(i, l) * delta(j, k) + S[(i, j, k, l)]
        if lhs != rhs:
            bad1.append(((i, j, k, l), lhs, rhs))
    ratios = set()
    bad2 = []
    for i, j, k in product(r, repeat=3):
        lhs = sum((P[(p, l, i)] * S[(p, l, j, k)] for p in r for l in r), mpq(0))
        target = P[(i, j, k)]
        if target:
            ratios.add(lhs / target)
        elif lhs:
            bad2.append(((i, j, k), lhs))
    return {"identity1_failures": bad1, "identity2_ratios": ratios, "identity2_failures": bad2}


def metric_form(phi: Form, v: Sequence) -> Form:
    """G_phi(v) = (v ⌟ phi) ^ (v ⌟ phi) ^ phi."""
    vp = phi.interior_first(v)
    return vp.wedge(vp).wedge(phi)


def verify_metric(phi: Form, g: MetricSpec, vol: Form, check_id: str = "verify-metric", anchor: str = "") -> CheckOutcome:
    """6 g(v,v) vol = G_phi(v) on the basis vectors and their pairwise sums."""
    n = phi.n
    res = outcome(check_id, anchor)
    basis = [tuple(mpq(int(i == j)) for j in range(n)) for i in range(n)]
    vectors = basis + [tuple(a + b for a, b in zip(basis[i], basis[j])) for i, j in combinations(range(n), 2)]
    for v in vectors:
        lhs = vol.rmul(6 * g.inner(v, v))
        rhs = metric_form(phi, v)
        if lhs != rhs:
            return res.fail({"vector": v, "6g(v,v)vol": str(lhs), "G_phi(v)": str(rhs)})
    res.points_tested = len(vectors)
    return res


# ---------------------------------------------------------------------------
# Invariant frames on S^7


@dataclass(frozen=True)
class FrameSet:
    zeta: tuple
    omega_circ: tuple
    omega_bar: tuple
    nu: Form
    nu_bar: Form
    zeta_x: tuple
    zeta_y: tuple
    nu_x: Form
    nu_y: Form


@lru_cache(maxsize=None)
def frame_set() -> FrameSet:
    oc = tuple(omega_x(i) + omega_y(i) for i in (1, 2, 3))
    zeta = tuple(r_contract(w) for w in oc)
    wbar = tuple(oc[i] - zeta[j].wedge(zeta[k]) for i, j, k in EPS_CYCLIC)
    nu = wedge(*zeta)
    nu_bar = wbar[0].wedge(wbar[0]).rmul(mpq(1, 2))
    zx = tuple(r_contract(omega_x(i)) for i in (1, 2, 3))
    zy = tuple(r_contract(omega_y(i)) for i in (1, 2, 3))
    return FrameSet(zeta, oc, wbar, nu, nu_bar, zx, zy, r_contract(dq(0, 1, 2, 3)), r_contract(dq(4, 5, 6, 7)))


def eps_zeta_zeta(i: int) -> Form:
    """eps_ijk zeta_j ^ zeta_k (a sum over ordered pairs, so twice zeta_j ^ zeta_k)."""
    fs = frame_set()
    _, j, k = EPS_CYCLIC[i]
    return fs.zeta[j].wedge(fs.zeta[k]).rmul(2)


# ---------------------------------------------------------------------------
# Structures on S^7


@dataclass(frozen=True)
class G2StructureSpec:
    """A G2-structure on S^7 given by an ambient 3-form.

    The metric is ``vertical_scale * g_round`` on the Hopf fibers plus
    ``horizontal_scale * g_round`` on their complement, and the volume form
    is ``orientation * volume_scale * Vol_round``.
    """

    label: str
    phi: Form
    vertical_scale: mpq
    horizontal_scale: mpq
    tau0: mpq | None
    # +1: the volume form is det[p, v_1, ..., v_7] on tangent vectors, which is
    # the orientation every structure here induces (checked by verify_metric_at)
    orientation: int = 1

    @property
    def volume_scale(self) -> mpq:
        return rational_sqrt(self.vertical_scale**3 * self.horizontal_scale**4)

    def metric_at(self, fr: TangentFrame) -> MetricSpec:
        G = fr.gram
        s = [self.vertical_scale] * 3 + [self.horizontal_scale] * 4
        return MetricSpec(tuple(tuple(G[i][j] * s[i] if i == j else G[i][j] for j in range(7)) for i in range(7)), self.label)

    def volume_at(self, fr: TangentFrame) -> mpq:
        """Volume form of the structure evaluated on the frame basis."""
        return self.orientation * self.volume_scale * fr.volume


def _rational_cbrt(q) -> mpq:
    q = mpq(q)
    rn, en = gmpy2.iroot(abs(q.numerator), 3)
    rd, ed = gmpy2.iroot(q.denominator, 3)
    if not (en and ed):
        raise UnsupportedMetric(f"{q}^(1/3) is irrational")
    return mpq(rn if q >= 0 else -rn, rd)


def phi_std() -> Form:
    return r_contract(psi0())


def phi_std_expanded() -> Form:
    fs = frame_set()
    out = fs.nu_x + fs.nu_y
    for i, s in enumerate(PSI_SIGNS):
        out = out + (fs.zeta_x[i].wedge(omega_y(i + 1)) + fs.zeta_y[i].wedge(omega_x(i + 1))).rmul(s)
    return out


def phi_std_sp2() -> Form:
    fs = frame_set()
    out = fs.nu
    for i, s in enumerate(PSI_SIGNS):
        out = out + fs.zeta[i].wedge(fs.omega_bar[i]).rmul(s)
    return out


def phi_ab(a, b) -> Form:
    """a nu - b sum_i zeta_i ^ omegabar_i."""
    fs = frame_set()
    out = fs.nu.rmul(mpq(a))
    for i in range(3):
        out = out - fs.zeta[i].wedge(fs.omega_bar[i]).rmul(mpq(b))
    return out


def _squashed_pieces():
    fs = frame_set()
    zx, zy = fs.zeta_x, fs.zeta_y
    mixed = Form.zero(8, 3)
    for choice in product((0, 1), repeat=3):
        if 0 < sum(choice) < 3:
            mixed = mixed + wedge(*[zy[i] if c else zx[i] for i, c in enumerate(choice)])
    cross = Form.zero(8, 3)
    for i in range(3):
        cross = cross + zx[i].wedge(omega_y(i + 1)) + zy[i].wedge(omega_x(i + 1))
    return fs, mixed, cross


def phi_sq_printed() -> Form:
    """The squashed form in x/y coordinates with pure terms (1/5)(nu^x + nu^y).

    Agrees with phi_sq only where |x| = 1 or |y| = 1, because
    zeta_1^x ^ zeta_2^x ^ zeta_3^x = |x|^2 nu^x rather than nu^x.
    """
    fs, mixed, cross = _squashed_pieces()
    out = (fs.nu_x + fs.nu_y).rmul(mpq(1, 5)) + mixed.rmul(mpq(16, 5)) - cross
    return out.rmul(mpq(27, 25))


def phi_sq_explicit() -> Form:
    """phi_sq in x/y coordinates, valid on all of S^7."""
    fs, mixed, cross = _squashed_pieces()
    pure = wedge(*fs.zeta_x) + wedge(*fs.zeta_y)
    out = (mixed + pure).rmul(mpq(16, 5)) - (fs.nu_x + fs.nu_y).rmul(3) - cross
    return out.rmul(mpq(27, 25))


def build_sphere_structure(which: str) -> G2StructureSpec:
    """Registry: "std", "sq", or "ab:a,b" (a must be a rational cube)."""
    if which == "std":
        return G2StructureSpec("std", phi_std(), mpq(1), mpq(1), mpq(4))
    if which == "sq":
        a, b = mpq(27, 125), mpq(27, 25)
        c = _rational_cbrt(a)
        return G2StructureSpec("sq", phi_ab(a, b), c * c, b / c, mpq(-4))
    if which.startswith("ab:"):
        a, b = (mpq(s) for s in which[3:].split(","))
        if a <= 0 or b <= 0:
            raise ValueError("a and b must be positive")
        c = _rational_cbrt(a)
        return G2StructureSpec(which, phi_ab(a, b), c * c, b / c, None)
    raise KeyError(f"unknown structure {which!r}")


STRUCTURES = ("std", "sq", "ab:1,5", "ab:1,1")


def psi_at(spec: G2StructureSpec, fr: TangentFrame) -> Form:
    """psi = *phi at a point, in the frame basis."""
    return hodge_star(fr.restrict(spec.phi), spec.metric_at(fr), volume_factor=spec.volume_at(fr))


def verify_metric_at(spec: G2StructureSpec, points: Sequence, check_id: str = "structure-metric", anchor: str = "") -> CheckOutcome:
    res = outcome(check_id, anchor, len(points))
    for pt in points:
        fr = tangent_frame(pt)
        vol = Form(7, 7, {tuple(range(7)): spec.volume_at(fr)})
        r = verify_metric(fr.restrict(spec.phi), spec.metric_at(fr), vol)
        if not r.passed:
            return res.fail({"point": fr.point, **r.witness})
    return res


def nearly_parallel_check(spec: G2StructureSpec, points: Sequence, check_id: str = "nearly-parallel", anchor: str = "") -> CheckOutcome:
    """d phi = tau0 psi as a restricted identity; tau0 is fitted when the spec leaves it open.

    For the standard structure the ambient identity d phi = 4 Psi0 and the
    restricted identity psi_std = Psi0 are checked instead.
    """
    res = outcome(check_id, anchor, len(points))
    dphi = spec.phi.d()
    if spec.label == "std":
        if dphi != psi0().rmul(4):
            return res.fail({"ambient": "d phi_std - 4 Psi0 is nonzero"})
        res.details["ambient"] = "d phi_std = 4 Psi0 on R^8"
    tau = spec.tau0
    for pt in points:
        fr = tangent_frame(pt)
        lhs = fr.restrict(dphi)
        psi = psi_at(spec, fr)
        if spec.label == "std" and psi != fr.restrict(psi0()):
            return res.fail({"point": fr.point, "reason": "psi_std differs from Psi0 on tangent vectors"})
        if tau is None:
            tau = _ratio(lhs, psi)
            if tau is None:
                return res.fail({"point": fr.point, "reason": "d phi is not proportional to psi"})
        if lhs != psi.rmul(tau):
            return res.fail({"point": fr.point, "tau0": tau, "defect": str(lhs - psi.rmul(tau))})
    res.details["tau0"] = tau
    return res


def _ratio(a: Form, b: Form):
    for m, c in b.terms.items():
        if c:
            return a.terms.get(m, mpq(0)) / c
    return None


def frame_calculus_check(points: Sequence, check_id: str = "frame-derivatives", anchor: str = "") -> CheckOutcome:
    """d zeta_i, d omegabar_i, d nu identities and coclosedness of zeta_i."""
    fs = frame_set()
    res = outcome(check_id, anchor, len(points))
    claims = []
    for i, j, k in EPS_CYCLIC:
        claims.append((f"d zeta_{i+1}", fs.zeta[i].d(), eps_zeta_zeta(i) + fs.omega_bar[i].rmul(2)))
        rhs = (fs.zeta[j].wedge(fs.omega_bar[k]) - fs.zeta[k].wedge(fs.omega_bar[j])).rmul(2)
        claims.append((f"d omegabar_{i+1}", fs.omega_bar[i].d(), rhs))
    dnu = Form.zero(8, 4)
    for i, j, k in EPS_CYCLIC:
        dnu = dnu + wedge(fs.omega_bar[i], fs.zeta[j], fs.zeta[k]).rmul(2)
    claims.append(("d nu", fs.nu.d(), dnu))
    for name, lhs, rhs in claims:
        r = restrict_equals(lhs, rhs, points)
        if not r.passed:
            return res.fail({"identity": name, **r.witness})
    for pt in points:
        for i in range(3):
            v = codifferential(fs.zeta[i], pt)
            if not v.is_zero():
                return res.fail({"identity": f"d* zeta_{i+1} = 0", "point": tangent_frame(pt).point, "value": str(v)})
    return res


def gradphi_check(points: Sequence, check_id: str = "std-gradient-phi", anchor: str = "") -> CheckOutcome:
    """nabla_X phi_std = (tau0/4) X ⌟ psi_std = X ⌟ Psi0 on tangent vectors, for X in the frame basis."""
    phi, Psi = phi_std(), psi0()
    res = outcome(check_id, anchor, len(points))
    for pt in points:
        fr = tangent_frame(pt)
        for a, X in enumerate(fr.basis):
            lhs = fr.restrict(covariant_deriv(phi, X, pt))
            rhs = fr.restrict(Psi.interior_first(X))
            if lhs != rhs:
                return res.fail({"point": fr.point, "direction": a, "defect": str(lhs - rhs)})
    return res


# ---------------------------------------------------------------------------
# The (a, b) family


def eps_zeta_zeta_omegabar() -> Form:
    """eps_ijk zeta_i ^ zeta_j ^ omegabar_k."""
    fs = frame_set()
    out = Form.zero(8, 4)
    for i, j, k in EPS_CYCLIC:
        out = out + wedge(fs.zeta[i], fs.zeta[j], fs.omega_bar[k]).rmul(2)
    return out


def psi_ab_formula(a, b) -> Form:
    """a^{-2/3} b (b nubar - (a/2) eps_ijk zeta_i ^ zeta_j ^ omegabar_k); a must be a rational cube."""
    a, b = mpq(a), mpq(b)
    c = _rational_cbrt(a)
    return (frame_set().nu_bar.rmul(b) - eps_zeta_zeta_omegabar().rmul(a / 2)).rmul(b / (c * c))


def dphi_ab_formula(a, b) -> Form:
    """(a + b) eps_ijk zeta_i ^ zeta_j ^ omegabar_k - 12 b nubar."""
    return eps_zeta_zeta_omegabar().rmul(mpq(a) + mpq(b)) - frame_set().nu_bar.rmul(12 * mpq(b))


def appendix_family_check(a, b, points: Sequence, check_id: str = "squashed-family-formulas", anchor: str = "") -> CheckOutcome:
    """Norms, stars, psi_{a,b} and d phi_{a,b} in the invariant frame, at each point."""
    a, b = mpq(a), mpq(b)
    spec = build_sphere_structure(f"ab:{a},{b}")
    c = _rational_cbrt(a)
    fs = frame_set()
    res = outcome(check_id, anchor, len(points))
    dphi = spec.phi.d()
    if spec.volume_scale != c * b * b:
        return res.fail({"volume_scale": spec.volume_scale, "expected": c * b * b})
    for pt in points:
        fr = tangent_frame(pt)
        g, vf, R = spec.metric_at(fr), spec.volume_at(fr), fr.restrict
        star = lambda f: hodge_star(f, g, volume_factor=vf)
        nu = R(fs.nu)
        claims = {"|nu|^2 = a^-2": (contract(nu, nu, g)[()], 1 / (a * a)),
                  "*nu = a^-5/3 b^2 nubar": (star(nu), R(fs.nu_bar).rmul(b * b / c**5))}
        for i, j in product(range(3), repeat=2):
            zw = R(fs.zeta[i].wedge(fs.omega_bar[j]))
            _, k, l = EPS_CYCLIC[i]
            claims[f"|zeta_{i+1} wbar_{j+1}|^2 = 2 b^-2"] = (contract(zw, zw, g)[()], 2 / (b * b))
            claims[f"*(zeta_{i+1} wbar_{j+1})"] = (star(zw), R(wedge(fs.zeta[k], fs.zeta[l], fs.omega_bar[j])).rmul(c))
        claims["psi_ab"] = (psi_at(spec, fr), R(psi_ab_formula(a, b)))
        claims["d phi_ab"] = (R(dphi), R(dphi_ab_formula(a, b)))
        for name, (lhs, rhs) in claims.items():
            if lhs != rhs:
                return res.fail({"point": fr.point, "identity": name, "lhs": str(lhs), "rhs": str(rhs)})
    return res


def squashed_rescaling_check(points: Sequence, check_id: str = "squashed-rescaling", anchor: str = "") -> CheckOutcome:
    """phi_sq = (3/5)^3 phi_{1,5}, the explicit x/y form, metric 9/5 (g_v/5 + g_h), Vol_sq = 3^7/5^5 Vol_std."""
    sq, one5 = build_sphere_structure("sq"), build_sphere_structure("ab:1,5")
    res = outcome(check_id, anchor, len(points))
    if sq.phi != one5.phi.rmul(mpq(27, 125)):
        return res.fail({"identity": "phi_sq = (3/5)^3 phi_{1,5}"})
    if (sq.vertical_scale, sq.horizontal_scale) != (mpq(9, 25), mpq(9, 5)):
        return res.fail({"identity": "g_sq scales", "scales": (sq.vertical_scale, sq.horizontal_scale)})
    if sq.volume_scale != mpq(3**7, 5**5):
        return res.fail({"identity": "Vol_sq / Vol_std", "value": sq.volume_scale})
    r = restrict_equals(phi_sq_explicit(), sq.phi, points)
    if not r.passed:
        return res.fail({"identity": "explicit x/y form", **r.witness})
    return res
