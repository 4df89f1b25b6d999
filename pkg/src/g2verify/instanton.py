"""Im H-valued connections, curvature, gauge transformations and instanton checks.

A connection is a 1-form whose coefficients are ``Quat`` over ``RatFn``, in
the quaternion basis of ``quaternion``.  Curvature is F = dA + A ^ A with the
quaternion product in the wedge.  The quaternionic coordinate is
x = x^0 e0 + x^1 e1 + x^2 e2 + x^3 e3 (so x = x^0 - x^1 i - ...), and
dx = dx^a e_a.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from gmpy2 import mpq

from .exactmath import NORM_X, NORM_Y, Poly, RatFn, term_limit
from .exterior import CHART_R4, CHART_R8, Form, contract, hodge_star, pullback
from .quaternion import Quat, coordinate_quat
from .report import CheckOutcome, outcome
from .sphere import _coords, gram_schmidt, hopf_structure, tangent_frame
from . import linalg, structures

ZERO_Q = Quat(0)


@dataclass(frozen=True)
class GaugeConnection:
    form: Form
    label: str = ""

    @property
    def n(self) -> int:
        return self.form.n


# ---------------------------------------------------------------------------
# Quaternion-valued forms


def dq_quat(offset: int = 0, n: int = 8) -> Form:
    """dx (offset 0) or dy (offset 4) as an H-valued 1-form."""
    return Form(n, 1, {(offset + a,): Quat.basis(a) for a in range(4)})


def conj_form(f: Form) -> Form:
    return f.map_coeffs(lambda c: c.conj())


def im_form(f: Form) -> Form:
    return f.map_coeffs(lambda c: c.im())


def re_form(f: Form) -> Form:
    """Real part, kept as an H-valued form."""
    return f.map_coeffs(lambda c: Quat(c.re(), 0, 0, 0))


def component(f: Form, a: int) -> Form:
    return f.map_coeffs(lambda c: c[a])


def scale(f: Form, s) -> Form:
    return f.rmul(RatFn.coerce(s) if isinstance(s, Poly) else s)


def quat_inverse(q: Quat) -> Quat:
    return q.inverse()


def curvature(A: GaugeConnection | Form, limit: int | None = None) -> Form:
    """F = dA + A ^ A."""
    a = A.form if isinstance(A, GaugeConnection) else A
    if limit is None:
        return a.d() + a.wedge(a)
    with term_limit(limit):
        return a.d() + a.wedge(a)


def bianchi_defect(A: GaugeConnection, F: Form) -> Form:
    """dF + A ^ F - F ^ A."""
    a = A.form
    return F.d() + a.wedge(F) - F.wedge(a)


# ---------------------------------------------------------------------------
# Standard connections


def _x4() -> Quat:
    return coordinate_quat(0)


@lru_cache(maxsize=None)
def b0() -> GaugeConnection:
    """Im(x d xbar) / (1 + |x|^2) on R^4."""
    x = _x4()
    dxbar = conj_form(dq_quat(0, 4))
    return GaugeConnection(scale(im_form(dxbar.lmul(x)), RatFn(1, Poly.const(1) + NORM_X)), "B0")


@lru_cache(maxsize=None)
def b_sd() -> GaugeConnection:
    """Im(xbar dx) / (1 + |x|^2): the connection of the opposite duality type."""
    x = _x4()
    return GaugeConnection(scale(im_form(dq_quat(0, 4).lmul(x.conj())), RatFn(1, Poly.const(1) + NORM_X)), "Bsd")


def f_b0_formula() -> Form:
    """dx ^ dxbar / (1 + |x|^2)^2."""
    dx = dq_quat(0, 4)
    den = Poly.const(1) + NORM_X
    return scale(dx.wedge(conj_form(dx)), RatFn(1, den * den))


def f_bsd_formula() -> Form:
    dx = dq_quat(0, 4)
    den = Poly.const(1) + NORM_X
    return scale(conj_form(dx).wedge(dx), RatFn(1, den * den))


@dataclass(frozen=True)
class QuatData:
    """x, y, their inverses, dx, dy and the norms, over R^8."""

    x: Quat
    y: Quat
    xinv: Quat
    yinv: Quat
    dx: Form
    dy: Form
    nx: RatFn
    ny: RatFn
    N: RatFn


@lru_cache(maxsize=None)
def quat_data() -> QuatData:
    x, y = coordinate_quat(0), coordinate_quat(4)
    nx, ny = RatFn(NORM_X), RatFn(NORM_Y)
    return QuatData(x, y, x.inverse(), y.inverse(), dq_quat(0), dq_quat(4), nx, ny, nx + ny)


@lru_cache(maxsize=None)
def a0() -> GaugeConnection:
    """Im[|y|^2 x^-1 dx + |x|^2 y^-1 dy] / (|x|^2 + |y|^2)."""
    q = quat_data()
    inner = q.dx.lmul(q.xinv).rmul(q.ny) + q.dy.lmul(q.yinv).rmul(q.nx)
    return GaugeConnection(im_form(inner).rmul(q.N.inverse()), "A0")


def asd_connection_form() -> Form:
    """Im[w d wbar + z d zbar] / (|w|^2 + |z|^2) with w = coordinates 0..3, z = 4..7."""
    w, z = coordinate_quat(0), coordinate_quat(4)
    inner = conj_form(dq_quat(0)).lmul(w) + conj_form(dq_quat(4)).lmul(z)
    return im_form(inner).rmul(RatFn(NORM_X + NORM_Y).inverse())


def inverse_map() -> list:
    """(w, z) = (y^-1, x^-1) as eight RatFn coordinates."""
    q = quat_data()
    return list(q.yinv.c) + list(q.xinv.c)


@lru_cache(maxsize=None)
def a0_by_pullback() -> GaugeConnection:
    form = pullback(asd_connection_form(), inverse_map(), CHART_R8)
    return GaugeConnection(form.map_coeffs(lambda c: c.map(lambda s: s.reduced())), "A0(pullback)")


@lru_cache(maxsize=None)
def f_a0() -> Form:
    return curvature(a0())


def f_a0_formula() -> Form:
    """Im[|y|^2 x^-1 dx ^ dxbar x + |x|^2 y^-1 dy ^ dybar y - 2 xbar dx ^ dybar y] / N^2."""
    q = quat_data()
    dxb, dyb = conj_form(q.dx), conj_form(q.dy)
    t = (
        q.dx.lmul(q.xinv).wedge(dxb.rmul(q.x)).rmul(q.ny)
        + q.dy.lmul(q.yinv).wedge(dyb.rmul(q.y)).rmul(q.nx)
        - q.dx.lmul(q.x.conj()).wedge(dyb.rmul(q.y)).rmul(2)
    )
    return im_form(t).rmul((q.N * q.N).inverse())


def f_a0_formula_square() -> Form:
    """Im[conj(G) ^ G] / (N^2 |x|^2 |y|^2) with G = dxbar x |y|^2 - dybar y |x|^2."""
    q = quat_data()
    G = conj_form(q.dx).rmul(q.x).rmul(q.ny) - conj_form(q.dy).rmul(q.y).rmul(q.nx)
    return im_form(conj_form(G).wedge(G)).rmul((q.N * q.N * q.nx * q.ny).inverse())


def curvature_intermediates() -> dict:
    """Both sides of every intermediate display of the A0 curvature computation.

    Returns name -> (computed, displayed).
    """
    q = quat_data()
    u, v = q.dx.lmul(q.xinv), q.dy.lmul(q.yinv)
    dxb_x, dyb_y = conj_form(q.dx).rmul(q.x), conj_form(q.dy).rmul(q.y)
    nx, ny, N = q.nx, q.ny, q.N
    inv2 = (N * N).inverse()
    xy = nx * ny
    out = {}
    out["d(x^-1 dx)"] = (u.d(), -u.wedge(u))
    ratio = Form.scalar(8, ny * N.inverse())
    re_diff = re_form(v - u).map_coeffs(lambda c: c[0])
    out["d(|y|^2/N)"] = (ratio.d(), re_diff.rmul(2 * xy * inv2))
    out["d(|y|^2/N) = -d(|x|^2/N)"] = (ratio.d(), -Form.scalar(8, nx * N.inverse()).d())
    dA = a0().form.d()
    line1 = u.wedge(re_form(v - u).rmul(-2 * xy) - u.rmul(ny * ny + xy)) + v.wedge(
        re_form(u - v).rmul(-2 * xy) - v.rmul(nx * nx + xy)
    )
    line2 = u.wedge(re_form(v).rmul(-2 * xy) + dxb_x.rmul(ny) - u.rmul(ny * ny)) + v.wedge(
        re_form(u).rmul(-2 * xy) + dyb_y.rmul(nx) - v.rmul(nx * nx)
    )
    xbdx, ybdy = q.dx.lmul(q.x.conj()), q.dy.lmul(q.y.conj())
    line3 = (
        u.wedge(dxb_x).rmul(ny)
        + v.wedge(dyb_y).rmul(nx)
        - xbdx.wedge(dyb_y)
        - ybdy.wedge(dxb_x)
        - v.wedge(u).rmul(2 * xy)
        - v.wedge(v).rmul(nx * nx)
        - u.wedge(u).rmul(ny * ny)
    )
    for i, line in enumerate((line1, line2, line3), start=1):
        out[f"dA0 line {i}"] = (dA, im_form(line).rmul(inv2))
    A = a0().form
    asq = u.wedge(u).rmul(ny * ny) + v.wedge(v).rmul(nx * nx) + u.wedge(v).rmul(2 * xy)
    out["A0 ^ A0"] = (A.wedge(A), im_form(asq).rmul(inv2))
    # u ^ v + v ^ u does not vanish for H-valued forms; the displays above
    # replace it by 2 v ^ u and 2 u ^ v respectively.
    sym = (u.wedge(v) + v.wedge(u)).rmul(xy)
    out["dA0 line 3 (symmetrized)"] = (dA, im_form(line3 + v.wedge(u).rmul(2 * xy) - sym).rmul(inv2))
    asq_sym = u.wedge(u).rmul(ny * ny) + v.wedge(v).rmul(nx * nx) + sym
    out["A0 ^ A0 (symmetrized)"] = (A.wedge(A), im_form(asq_sym).rmul(inv2))
    return out


PRINTED_INTERMEDIATE_FAILURES = ("dA0 line 3", "A0 ^ A0")


# ---------------------------------------------------------------------------
# Gauge transformations


def gauge_transform(A: GaugeConnection, q: Quat, label: str = "") -> GaugeConnection:
    """(q A qbar - Im(dq qbar)) / |q|^2, the action of g = q/|q|."""
    n = A.n
    chart = A.form.chart
    dq = Form(n, 1, {(i,): q.partial(chart[i]) for i in range(n)}, chart)
    qbar = q.conj()
    num = A.form.lmul(q).rmul(qbar) - im_form(dq.rmul(qbar))
    inv = RatFn.coerce(q.norm2()).inverse()
    return GaugeConnection(num.rmul(inv), label or f"{A.label}:gauge")


def gauge_curvature(F: Form, q: Quat) -> Form:
    """q F qbar / |q|^2."""
    return F.lmul(q).rmul(q.conj()).rmul(RatFn.coerce(q.norm2()).inverse())


def a0_gauge_x_formula() -> Form:
    """Im[y x^-1 dx ybar + y dybar] / (|x|^2 + |y|^2): A0 with the x-axis singularity removed."""
    q = quat_data()
    t = q.dx.lmul(q.y * q.xinv).rmul(q.y.conj()) + conj_form(q.dy).lmul(q.y)
    return im_form(t).rmul(q.N.inverse())


def regular_at(form: Form, point: Sequence) -> bool:
    """True when every coefficient can be evaluated at the point."""
    from .exactmath import PoleError

    try:
        form.at(point)
    except (PoleError, ZeroDivisionError):
        return False
    return True


# ---------------------------------------------------------------------------
# Duality on R^4


def duality_parts(F: Form) -> tuple[Form, Form]:
    """(self-dual, anti-self-dual) parts for the orientation dx^{0123}."""
    if F.n != 4 or F.k != 2:
        raise ValueError("duality parts need a 2-form on R^4")
    s = hodge_star(F)
    half = mpq(1, 2)
    return (F + s).rmul(half), (F - s).rmul(half)


def asd_check(F: Form) -> dict:
    sd, asd = duality_parts(F)
    kind = "anti-self-dual" if sd.is_zero() and not asd.is_zero() else "self-dual" if asd.is_zero() and not sd.is_zero() else ("zero" if F.is_zero() else "mixed")
    return {"self_dual": sd, "anti_self_dual": asd, "type": kind}


@lru_cache(maxsize=None)
def b0_duality_type() -> str:
    """Duality type of F_B0, measured once and used as the artifact's "ASD" orientation."""
    return asd_check(f_b0_formula())["type"]


# ---------------------------------------------------------------------------
# Hopf pullback


def hopf_chart() -> list:
    """u = x y^-1, the stereographic coordinate of the right Hopf fibration."""
    q = quat_data()
    return list((q.x * q.yinv).c)


def hopf_pullback(B: GaugeConnection) -> GaugeConnection:
    form = pullback(B.form.with_chart(CHART_R4), hopf_chart(), CHART_R8)
    return GaugeConnection(form, f"pullback:{B.label}")


def hopf_pullback_form(F: Form) -> Form:
    return pullback(F.with_chart(CHART_R4), hopf_chart(), CHART_R8)


# ---------------------------------------------------------------------------
# Pointwise instanton checks


def _value_form(F: Form, point) -> Form:
    return F.at(point)


def g2_instanton_check(F: Form, spec, points: Sequence, check_id: str = "g2-instanton", anchor: str = "") -> CheckOutcome:
    """phi ⌞ F = 0 on tangent vectors at each point."""
    res = outcome(check_id, anchor, len(points))
    for pt in points:
        fr = tangent_frame(pt)
        rF = fr.restrict(F)
        val = contract(fr.restrict(spec.phi), rF, spec.metric_at(fr))
        if not val.is_zero():
            return res.fail({"point": fr.point, "phi_contract_F": str(val)})
    return res


def spin7_instanton_check(F: Form, points: Sequence, check_id: str = "spin7-instanton", anchor: str = "") -> CheckOutcome:
    """F + *(Psi0 ^ F) = 0 at each point of R^8."""
    res = outcome(check_id, anchor, len(points))
    for pt in points:
        p = _coords(pt)
        Fp = F.at(p)
        for a in range(4):
            ok, defect = structures.spin7_lie_check(component(Fp, a))
            if not ok:
                return res.fail({"point": p, "component": a, "defect": str(defect)})
    return res


def complex_frame(fr, J) -> list:
    """Pairs (E, J E) spanning the J-invariant part of the tangent space."""
    U = fr.vertical[0]
    basis: list = []
    for c in fr.basis[1:] + tuple(tuple(mpq(int(i == j)) for j in range(8)) for i in range(8)):
        new = gram_schmidt([fr.point, U] + basis, [c], 1)
        if new:
            E = new[0]
            basis += [E, tuple(linalg.matvec(J, E))]
        if len(basis) == 6:
            break
    return basis


def _eval2(F: Form, X, Y):
    return F.evaluate([X, Y])


def hym_check(F: Form, points: Sequence, check_id: str = "hym-pointwise", anchor: str = "") -> CheckOutcome:
    """On T_p S^7 ∩ I1(T_p S^7): (i) F(JX, JY) = F(X, Y); (ii) sum_a F(E_a, J E_a)/|E_a|^2 = 0."""
    J = hopf_structure(1)
    res = outcome(check_id, anchor, len(points))
    for pt in points:
        fr = tangent_frame(pt)
        p = fr.point
        Fp = F.at(p)
        basis = complex_frame(fr, J)
        for a in range(6):
            for b in range(a + 1, 6):
                X, Y = basis[a], basis[b]
                lhs = _eval2(Fp, linalg.matvec(J, X), linalg.matvec(J, Y))
                if lhs != _eval2(Fp, X, Y):
                    return res.fail({"condition": "(i)", "point": p, "pair": (a, b)})
        tr = ZERO_Q
        for a in range(0, 6, 2):
            E = basis[a]
            n2 = sum((c * c for c in E), mpq(0))
            tr = tr + _eval2(Fp, E, basis[a + 1]) * (1 / n2)
        if not (tr == 0):
            return res.fail({"condition": "(ii)", "point": p, "trace": str(tr)})
    return res


def bundle_class(kappa: int) -> int:
    """Homotopy class in Z/12 of the pullback to S^7 of an SU(2)-bundle with c2 = kappa."""
    if kappa < 0:
        raise ValueError("kappa must be non-negative")
    return (kappa * (kappa + 1) // 2) % 12


# ---------------------------------------------------------------------------
# Registry


def connection(label: str) -> GaugeConnection:
    """"B0", "Bsd", "A0", "A0:pullback", "A0:gauge-x", "A0:gauge-y", "pullback:B0", "pullback:Bsd"."""
    q = quat_data()
    table = {
        "B0": b0,
        "Bsd": b_sd,
        "A0": a0,
        "A0:pullback": a0_by_pullback,
        "A0:gauge-x": lambda: gauge_transform(a0(), q.y, "A0:gauge-x"),
        "A0:gauge-y": lambda: gauge_transform(a0(), q.x, "A0:gauge-y"),
        "pullback:B0": lambda: hopf_pullback(b0()),
        "pullback:Bsd": lambda: hopf_pullback(b_sd()),
    }
    if label not in table:
        raise KeyError(f"unknown connection {label!r}")
    return table[label]()


CONNECTIONS = ("B0", "Bsd", "A0", "A0:pullback", "A0:gauge-x", "A0:gauge-y", "pullback:B0", "pullback:Bsd")
