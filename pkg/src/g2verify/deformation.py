"""Linear deformations, Coulomb residuals, the deformation operator and the horizontal operator.

A deformation candidate is an Im H-valued ambient 1-form.  The deformation
operator at a point of S^7 is evaluated exactly as (D*alpha, phi ⌞ D alpha),
with D = d + [A, .] and the round metric.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from gmpy2 import mpq

from . import linalg, structures
from .exactmath import Poly, RatFn
from .exterior import Form, _eval_coeff, contract, pullback_linear
from .instanton import GaugeConnection, a0, f_a0
from .linalg import LinearFamily
from .quaternion import Quat, commutator, fueter_basis, left_mult_matrix
from .report import CheckOutcome, outcome
from .sphere import (
    _coords,
    codifferential,
    codifferential_jets,
    hopf_structure,
    projector_jets,
    rough_laplacian,
    tangent_frame,
    value_form,
)

ZERO = mpq(0)
RICCI_ROUND = 6


# ---------------------------------------------------------------------------
# Matrix families


def _zeros(n=8):
    return [[ZERO] * n for _ in range(n)]


def _tuple(m):
    return tuple(tuple(r) for r in m)


def block_matrix(a, b, c, d):
    """[[a, b], [c, d]] from four 4x4 blocks."""
    m = _zeros()
    for i in range(4):
        for j in range(4):
            m[i][j] = a[i][j]
            m[i][j + 4] = b[i][j]
            m[i + 4][j] = c[i][j]
            m[i + 4][j + 4] = d[i][j]
    return _tuple(m)


def quaternionic_matrix(q00: Quat, q01: Quat, q10: Quat, q11: Quat):
    """Real 8x8 matrix of (x, y) -> (q00 x + q01 y, q10 x + q11 y)."""
    return block_matrix(*(left_mult_matrix(q) for q in (q00, q01, q10, q11)))


def _flat(m):
    return [c for r in m for c in r]


def _unflat(v, n=8):
    return _tuple([v[i * n:(i + 1) * n] for i in range(n)])


def _commutes_rows(I):
    """Linear conditions M I - I M = 0 on the flattened M."""
    rows = []
    for i in range(8):
        for j in range(8):
            row = [ZERO] * 64
            for k in range(8):
                row[i * 8 + k] += I[k][j]
                row[k * 8 + j] -= I[i][k]
            rows.append(row)
    return rows


@lru_cache(maxsize=None)
def sp2_lie_basis() -> tuple:
    """Antisymmetric 8x8 matrices commuting with I1, I2, I3."""
    rows = []
    for i in range(8):
        for j in range(i, 8):
            row = [ZERO] * 64
            row[i * 8 + j] += 1
            row[j * 8 + i] += 1
            rows.append(row)
    for a in (1, 2, 3):
        rows += _commutes_rows(hopf_structure(a))
    return tuple(_unflat(v) for v in linalg.nullspace(rows, 64))


@lru_cache(maxsize=None)
def w_basis() -> tuple:
    """[[a, zbar], [z, -a]] for a = 1 and z = e0..e3."""
    one, zero = Quat(1), Quat(0)
    out = [quaternionic_matrix(one, zero, zero, -one)]
    for a in range(4):
        z = Quat.basis(a)
        out.append(quaternionic_matrix(zero, z.conj(), z, zero))
    return tuple(out)


def times_complex_structure(M, i: int):
    return _tuple(linalg.matmul(M, hopf_structure(i)))


@lru_cache(maxsize=None)
def fifteen_basis() -> tuple:
    """(label, M) for W, W I1 and W I2."""
    out = []
    for k, M in enumerate(w_basis()):
        out.append((f"15fam:{k}", M))
    for i in (1, 2):
        for k, M in enumerate(w_basis()):
            out.append((f"15fam:{5 * i + k}", times_complex_structure(M, i)))
    return tuple(out)


def matrix_family(ms) -> LinearFamily:
    return LinearFamily.of([_flat(m) for m in ms])


def is_symmetric(M) -> bool:
    return all(M[i][j] == M[j][i] for i in range(8) for j in range(8))


def trace_pairing(M, N):
    return sum((M[i][j] * N[i][j] for i in range(8) for j in range(8)), ZERO)


def classify(M) -> str:
    """W, W I1, W I2, Lie(Sp(2)) or other, by exact span membership."""
    v = _flat(M)
    for name, fam in (
        ("W", w_basis()),
        ("W I1", tuple(times_complex_structure(m, 1) for m in w_basis())),
        ("W I2", tuple(times_complex_structure(m, 2) for m in w_basis())),
        ("Lie(Sp(2))", sp2_lie_basis()),
    ):
        if matrix_family(fam).contains(v):
            return name
    return "other"


# ---------------------------------------------------------------------------
# Candidates


@dataclass(frozen=True)
class DeformCandidate:
    alpha: Form
    label: str = ""
    M: tuple | None = field(default=None, compare=False)


def position_vector() -> list:
    return [RatFn(Poly.var(i)) for i in range(8)]


def linear_deformation(M, F: Form | None = None, label: str = "") -> DeformCandidate:
    """alpha_M = X_M ⌟ F with X_M = M r."""
    F = f_a0() if F is None else F
    r = position_vector()
    X = [sum((r[j] * M[i][j] for j in range(8) if M[i][j]), RatFn.zero()) for i in range(8)]
    return DeformCandidate(F.interior_first(X), label, _tuple(M))


def radial_contraction(cand: DeformCandidate):
    """alpha(r) as a Quat over RatFn (zero for conical parents)."""
    acc = Quat(RatFn.zero())
    for m, c in cand.alpha.terms.items():
        acc = acc + c * RatFn(Poly.var(m.bit_length() - 1))
    return acc


def complex_image(cand: DeformCandidate, i: int) -> DeformCandidate:
    """Pointwise I_i action: (I_i alpha)(v) = alpha(I_i v)."""
    return DeformCandidate(pullback_linear(cand.alpha, hopf_structure(i)), f"I{i}({cand.label})")


def gauge_direction(u: Quat, A: GaugeConnection | None = None) -> DeformCandidate:
    """D_A u for a constant u."""
    A = a0() if A is None else A
    return DeformCandidate(A.form.map_coeffs(lambda c: commutator(c, u)), f"D_A({u})")


def candidate(label: str) -> DeformCandidate:
    """"15fam:k", "sp2:k" or "W:k"."""
    kind, _, k = label.partition(":")
    k = int(k)
    if kind == "15fam":
        name, M = fifteen_basis()[k]
        return linear_deformation(M, label=name)
    if kind == "sp2":
        return linear_deformation(sp2_lie_basis()[k], label=label)
    if kind == "W":
        return linear_deformation(w_basis()[k], label=label)
    raise KeyError(f"unknown candidate {label!r}")


# ---------------------------------------------------------------------------
# Covariant derivatives


def covariant_d(form: Form, A: Form | None) -> Form:
    """D form = d form + A ^ form - (-1)^k form ^ A."""
    out = form.d()
    if A is None:
        return out
    if form.k % 2:
        return out + A.wedge(form) + form.wedge(A)
    return out + A.wedge(form) - form.wedge(A)


def ambient_codifferential(alpha: Form, A: Form | None) -> Quat:
    """-sum_i (d_i alpha_i + [A_i, alpha_i]) on R^8."""
    acc = None
    for m, c in alpha.terms.items():
        i = m.bit_length() - 1
        t = c.partial(i)
        if A is not None and m in A.terms:
            t = t + commutator(A.terms[m], c)
        acc = t if acc is None else acc + t
    return -acc if acc is not None else Quat(RatFn.zero())


def curvature_pairing(M, F: Form) -> Quat:
    """sum_{ij} M_ij F_ij over all ordered pairs."""
    Fm = F.to_matrix(zero=Quat(RatFn.zero()))
    acc = Quat(RatFn.zero())
    for i in range(8):
        for j in range(8):
            if M[i][j]:
                acc = acc + Fm[i][j] * M[i][j]
    return acc


# Sign relating the ambient codifferential to the curvature pairing, measured
# on A0: D*alpha_M = COULOMB_SIGN * M_ij F_ij.
COULOMB_SIGN = -1


def coulomb_residual(cand: DeformCandidate, points: Sequence, A: GaugeConnection | None = None, F: Form | None = None) -> list:
    """Per point: (ambient D*alpha, COULOMB_SIGN * M_ij F_ij, intrinsic sphere D*alpha)."""
    A = a0() if A is None else A
    F = f_a0() if F is None else F
    amb = ambient_codifferential(cand.alpha, A.form)
    closed = curvature_pairing(cand.M, F) if cand.M is not None else None
    out = []
    for pt in points:
        p = _coords(pt)
        a = _eval_coeff(amb, p)
        c = _eval_coeff(closed, p) * COULOMB_SIGN if closed is not None else None
        s = codifferential(cand.alpha, p, A.form).terms.get(0, Quat(0))
        out.append((a, c, s))
    return out


def coulomb_check(cand: DeformCandidate, points: Sequence, check_id: str = "coulomb-residual", anchor: str = "") -> CheckOutcome:
    """The three routes agree at every point; details record whether all vanish."""
    res = outcome(check_id, anchor, len(points))
    vanishes = True
    for pt, (a, c, s) in zip(points, coulomb_residual(cand, points)):
        if not (a == s) or (c is not None and not (a == c)):
            return res.fail({"point": _coords(pt), "ambient": a, "closed": c, "sphere": s})
        vanishes = vanishes and (a == 0)
    res.details["in_coulomb_gauge"] = vanishes
    return res


# ---------------------------------------------------------------------------
# Deformation operator


def _require_round(spec):
    if (spec.vertical_scale, spec.horizontal_scale) != (1, 1):
        raise ValueError("the deformation operator is evaluated for the round metric only")


def operator_at(cand: DeformCandidate, point, A: GaugeConnection | None = None, spec=None) -> tuple:
    """(D*alpha, phi ⌞ D alpha) at one point, from first-order jets."""
    A = a0() if A is None else A
    spec = structures.build_sphere_structure("std") if spec is None else spec
    _require_round(spec)
    fr = tangent_frame(point)
    p = fr.point
    aj = cand.alpha.jet(p, 1)
    Aj = A.form.jet(p, 1)
    scalar = value_form(codifferential_jets(aj, projector_jets(p, 1), Aj)).terms.get(0, Quat(0))
    Da = value_form(covariant_d(aj, Aj))
    one = contract(fr.restrict(spec.phi), fr.restrict(Da), spec.metric_at(fr))
    return scalar, one


def deform_operator_eval(cand: DeformCandidate, points: Sequence, A: GaugeConnection | None = None, spec=None) -> list:
    """Per point: (D*alpha, phi ⌞ D alpha on the tangent frame)."""
    return [operator_at(cand, pt, A, spec) for pt in points]


def kernel_check(cands: Sequence[DeformCandidate], points: Sequence, check_id: str = "deformation-kernel", anchor: str = "", A=None) -> CheckOutcome:
    res = outcome(check_id, anchor, len(points))
    for cand in cands:
        for pt, (s, one) in zip(points, deform_operator_eval(cand, points, A)):
            if not (s == 0) or not one.is_zero():
                return res.fail({"candidate": cand.label, "point": _coords(pt), "scalar": s, "one_form": str(one)})
    res.details["candidates"] = len(cands)
    return res


def evaluation_vector(cand: DeformCandidate, points: Sequence) -> list:
    row = []
    for pt in points:
        fr = tangent_frame(pt)
        r = fr.restrict(cand.alpha)
        for a in range(7):
            c = r.terms.get(1 << a, Quat(0))
            row.extend(c.c)
    return row


def independence_rank(cands: Sequence[DeformCandidate], points: Sequence) -> int:
    """Rank of the candidates x (point, tangent direction, component) evaluation matrix."""
    return linalg.rank([evaluation_vector(c, points) for c in cands])


def dimension_formula(kappa: int) -> int:
    """Dimension 3(8 kappa - 3) of the deformation space of a pulled-back SU(2) instanton of charge kappa."""
    if kappa < 1:
        raise ValueError("kappa must be at least 1")
    return 3 * (8 * kappa - 3)


# ---------------------------------------------------------------------------
# Weitzenbock formula


# Coefficient c in L^2 alpha = c phi ⌞ D alpha + nabla*nabla alpha + Ric alpha - 2 [F ⌞ alpha]
# on the round sphere, as measured (see tests).
WEITZENBOCK_COEFFICIENT = mpq(4)


def _jet_cov_d(form: Form, Aj: Form | None) -> Form:
    return covariant_d(form, Aj)


def weitzenbock_terms(alpha: Form, point, A: Form | None = None, F: Form | None = None) -> dict:
    """Both sides of the Weitzenbock formula at a point, on the tangent frame.

    The left side dd*alpha + phi ⌞ D(phi ⌞ D alpha) is assembled from
    projected ambient extensions (jets at the point).
    """
    fr = tangent_frame(point)
    p = fr.point
    order = 2
    P = projector_jets(p, order)
    aj = alpha.jet(p, order)
    Aj = A.jet(p, order) if A is not None else None
    phij = pullback_linear(structures.phi_std().jet(p, order), P)
    f = codifferential_jets(aj, P, Aj)
    ddstar = _jet_cov_d(f, Aj)
    beta = contract(phij, pullback_linear(_jet_cov_d(aj, Aj), P))
    second = contract(phij, pullback_linear(_jet_cov_d(beta, Aj), P))
    lhs = fr.restrict(value_form(pullback_linear(ddstar, P) + second))
    phi = structures.phi_std()
    g = structures.build_sphere_structure("std").metric_at(fr)
    Da = covariant_d(alpha, A)
    phi_da = contract(fr.restrict(phi), fr.restrict(Da), g)
    rough = fr.restrict(rough_laplacian(alpha, p, A))
    ra = fr.restrict(alpha)
    if F is not None:
        bracket = contract(fr.restrict(F), ra, g, product=commutator)
    else:
        bracket = Form.zero(7, 1)
    return {"lhs": lhs, "phi_dalpha": phi_da, "rough": rough, "alpha": ra, "bracket": bracket}


def weitzenbock_rhs(t: dict, coefficient=None) -> Form:
    c = WEITZENBOCK_COEFFICIENT if coefficient is None else coefficient
    return t["phi_dalpha"].rmul(c) + t["rough"] + t["alpha"].rmul(RICCI_ROUND) - t["bracket"].rmul(2)


def weitzenbock_check(
    cand: DeformCandidate,
    points: Sequence,
    A: GaugeConnection | None = None,
    F: Form | None = None,
    check_id: str = "weitzenbock-round",
    anchor: str = "",
    coefficient=None,
) -> CheckOutcome:
    A = a0() if A is None else A
    if F is None:
        F = f_a0() if A.label == "A0" else None
    res = outcome(check_id, anchor, len(points))
    for pt in points:
        t = weitzenbock_terms(cand.alpha, pt, A.form, F)
        rhs = weitzenbock_rhs(t, coefficient)
        if not (t["lhs"] - rhs).is_zero():
            return res.fail({"candidate": cand.label, "point": _coords(pt), "lhs": str(t["lhs"]), "rhs": str(rhs)})
    return res


# ---------------------------------------------------------------------------
# Horizontal operator near the fiber over a pole


@lru_cache(maxsize=None)
def ebar_frame() -> tuple:
    """ebar^j = dy^j - zeta_i (dy^j ⌞ zeta_i): the horizontal projection of dy^j."""
    zeta = structures.frame_set().zeta
    out = []
    for j in range(4):
        e = Form(8, 1, {(4 + j,): RatFn.const(1)})
        for z in zeta:
            c = z.terms.get(1 << (4 + j))
            if c is not None:
                e = e - z.rmul(c)
        out.append(e)
    return tuple(out)


def _on_s30(p) -> bool:
    return all(c == 0 for c in p[4:])


def horiz_op_apply(b: Form, point) -> tuple:
    """Coefficients beta_j of (phi ⌞ db)^h = beta_j ebar^j at a point of S^3_0."""
    fr = tangent_frame(point)
    if not _on_s30(fr.point):
        raise ValueError("the horizontal operator is evaluated on the fiber y = 0 only")
    g = structures.build_sphere_structure("std").metric_at(fr)
    val = contract(fr.restrict(structures.phi_std()), fr.restrict(b.d()), g)
    # at y = 0 the horizontal space is spanned by d/dy^j, and ebar^j = dy^j there
    basis = fr.basis
    out = []
    for j in range(4):
        v = [ZERO] * 8
        v[4 + j] = mpq(1)
        coeffs = linalg.solve([list(e) for e in basis], v)
        acc = ZERO
        for a, c in enumerate(coeffs):
            if c:
                acc = acc + val.terms.get(1 << a, ZERO) * c
        out.append(acc)
    return tuple(out)


def fueter_section(L) -> Form:
    """x^i L_ij ebar^j."""
    eb = ebar_frame()
    acc = Form.zero(8, 1)
    for i in range(4):
        for j in range(4):
            if L[i][j]:
                acc = acc + eb[j].rmul(RatFn(Poly.var(i)) * L[i][j])
    return acc


def _unit4(a, b):
    return tuple(tuple(mpq(int((i, j) == (a, b))) for j in range(4)) for i in range(4))


def fueter_kernel_solve(points: Sequence) -> LinearFamily:
    """Solve horiz_op_apply(x^i L_ij ebar^j) = 0 for L over the 16-dimensional L-space."""
    cols = []
    for a in range(4):
        for b in range(4):
            s = fueter_section(_unit4(a, b))
            col = []
            for pt in points:
                col.extend(horiz_op_apply(s, pt))
            cols.append(col)
    rows = [[cols[k][r] for k in range(16)] for r in range(len(cols[0]))]
    return LinearFamily.of(linalg.nullspace(rows, 16))


def fueter_family() -> LinearFamily:
    return LinearFamily.of([[c for r in L for c in r] for L in fueter_basis()])


# ---------------------------------------------------------------------------
# Prop-level checks


def w_candidates(F: Form | None = None) -> list:
    return [linear_deformation(M, F, f"W:{k}") for k, M in enumerate(w_basis())]


def ker_phi_decomposition_check(points: Sequence, check_id: str = "kerphi-decomposition", anchor: str = "") -> CheckOutcome:
    """I1/I2 images of the pulled-back W family lie in ker L and span, with the 15-family, a 15-dimensional space."""
    base = w_candidates()
    images = [complex_image(c, i) for i in (1, 2) for c in base]
    res = kernel_check(base + images, points, check_id, anchor)
    if not res.passed:
        return res
    fam = [linear_deformation(M, label=name) for name, M in fifteen_basis()]
    r = independence_rank(fam + base + images, points)
    res.details["combined_rank"] = r
    res.details["combined_size"] = len(fam) + len(base) + len(images)
    if r != 15:
        res.fail({"combined_rank": r})
    return res
