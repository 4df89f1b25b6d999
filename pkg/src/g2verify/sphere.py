"""Rational sphere points, tangent frames and exact pointwise sphere calculus.

Sphere-intrinsic operators are computed from ambient representatives.  For a
form a on R^8 the projected extension P(q)^* a, with
P(q) = Id - q q^T / |q|^2, is tangential everywhere, and on the unit sphere

    (nabla_X a)(Y, ...) = d/dX [P^* a](Y, ...)        (X, Y tangent)

plus the gauge term [A(X), a(Y, ...)] when a is Lie-algebra valued.  Second
derivatives differentiate the projected extension of nabla a the same way.
Derivatives are taken on exact Taylor jets at the point, so every output is
an exact rational.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from gmpy2 import mpq

from . import linalg
from .exactmath import Jet, RatFn, is_number, value_of
from .exterior import Form, contract, nonzero, pullback_linear, restrict
from .quaternion import Quat, complex_structure
from .report import CheckOutcome, outcome

ZERO = mpq(0)


class PointGenerationError(RuntimeError):
    """Rejection sampling ran out of retries."""


# ---------------------------------------------------------------------------
# Points


@dataclass(frozen=True)
class SpherePoint:
    coords: tuple
    provenance: tuple = ()

    @property
    def x(self):
        return self.coords[:4]

    @property
    def y(self):
        return self.coords[4:8]

    def __len__(self):
        return len(self.coords)


def inverse_stereographic(q: Sequence) -> tuple:
    """q in R^n -> (2q, |q|^2 - 1) / (|q|^2 + 1) on S^n."""
    q = [mpq(c) for c in q]
    n2 = sum((c * c for c in q), ZERO)
    s = n2 + 1
    return tuple([2 * c / s for c in q] + [(n2 - 1) / s])


def off_axes(p: SpherePoint) -> bool:
    """Both quaternion halves nonzero (avoids the gauge singularities of A0)."""
    return any(p.coords[:4]) and any(p.coords[4:8])


EXCLUSIONS: dict[str, Callable[[SpherePoint], bool]] = {"axes": off_axes}


def rat_sphere_points(
    n: int,
    count: int,
    seed: int,
    exclusions: Iterable[str | Callable] = (),
    retry_budget: int = 10_000,
    height: int = 6,
) -> list[SpherePoint]:
    """Deterministic exact points on S^n from seeded small rational preimages."""
    if count < 1:
        raise ValueError("count must be at least 1")
    preds = [EXCLUSIONS[e] if isinstance(e, str) else e for e in exclusions]
    rng = random.Random(seed)
    out, tries = [], 0
    while len(out) < count:
        tries += 1
        if tries > retry_budget:
            raise PointGenerationError(f"only {len(out)} of {count} points satisfied the exclusions")
        q = tuple(mpq(rng.randint(-height, height), rng.randint(1, height)) for _ in range(n))
        p = SpherePoint(inverse_stereographic(q), q)
        if all(f(p) for f in preds):
            out.append(p)
    return out


def s3_zero_points(count: int, seed: int) -> list[SpherePoint]:
    """Points (x, 0) of S^7 with x on the unit S^3 (the fiber over a pole)."""
    pts = rat_sphere_points(3, count, seed)
    return [SpherePoint(p.coords + (ZERO,) * 4, p.provenance) for p in pts]


def r8_points(count: int, seed: int, exclusions: Iterable[str] = ()) -> list[SpherePoint]:
    """Generic rational points of R^8 (not on the sphere)."""
    rng = random.Random(seed)
    preds = [EXCLUSIONS[e] for e in exclusions]
    out = []
    while len(out) < count:
        c = tuple(mpq(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(8))
        p = SpherePoint(c, ("R8",))
        if any(c) and all(f(p) for f in preds):
            out.append(p)
    return out


# ---------------------------------------------------------------------------
# Frames


def _dot(u, v):
    return sum((a * b for a, b in zip(u, v)), ZERO)


@lru_cache(maxsize=None)
def hopf_structure(i: int):
    """diag(I_i, I_i): right multiplication by e_i on both quaternion factors."""
    I = complex_structure(i)
    m = [[ZERO] * 8 for _ in range(8)]
    for a in range(4):
        for b in range(4):
            m[a][b] = I[a][b]
            m[a + 4][b + 4] = I[a][b]
    return tuple(tuple(r) for r in m)


@dataclass(frozen=True)
class TangentFrame:
    point: tuple
    projector: tuple
    vertical: tuple
    horizontal: tuple
    volume: mpq = field(compare=False)

    @property
    def basis(self) -> tuple:
        return self.vertical + self.horizontal

    @property
    def gram(self) -> tuple:
        b = self.basis
        return tuple(tuple(_dot(u, v) for v in b) for u in b)

    @property
    def vertical_projector(self):
        return _outer_sum(self.vertical, 8)

    @property
    def horizontal_projector(self):
        P, V = self.projector, self.vertical_projector
        return tuple(tuple(P[i][j] - V[i][j] for j in range(8)) for i in range(8))

    def restrict(self, form: Form) -> Form:
        """Values of an ambient form (evaluated at the point) on the tangent basis."""
        f = form.at(self.point) if _has_functions(form) else form
        return restrict(f, self.basis)


def _has_functions(form: Form) -> bool:
    for c in form.terms.values():
        if isinstance(c, Quat):
            return any(not is_number(s) for s in c.c)
        return not is_number(c)
    return False


def _outer_sum(vectors, n):
    m = [[ZERO] * n for _ in range(n)]
    for v in vectors:
        s = _dot(v, v)
        for i in range(n):
            if v[i]:
                for j in range(n):
                    m[i][j] += v[i] * v[j] / s
    return tuple(tuple(r) for r in m)


def projector_at(p: Sequence) -> tuple:
    n = len(p)
    s = _dot(p, p)
    return tuple(tuple(mpq(int(i == j)) - p[i] * p[j] / s for j in range(n)) for i in range(n))


def gram_schmidt(seed: Sequence, candidates: Iterable[Sequence], want: int) -> list:
    """Orthogonal (unnormalized) completion of ``seed`` by candidates."""
    basis = [tuple(v) for v in seed]
    out = []
    for c in candidates:
        v = list(c)
        for b in basis + out:
            s = _dot(v, b) / _dot(b, b)
            if s:
                v = [vi - s * bi for vi, bi in zip(v, b)]
        if any(v):
            out.append(tuple(v))
            if len(out) == want:
                break
    return out


@lru_cache(maxsize=4096)
def frame_at(coords: tuple) -> TangentFrame:
    n = len(coords)
    p = tuple(mpq(c) for c in coords)
    P = projector_at(p)
    unit = [tuple(mpq(int(i == j)) for j in range(n)) for i in range(n)]
    if n == 8:
        vertical = tuple(linalg.matvec(hopf_structure(i), p) for i in (1, 2, 3))
    else:
        vertical = ()
    horizontal = tuple(gram_schmidt((p,) + vertical, unit, n - 1 - len(vertical)))
    vol = linalg.det([list(p)] + [list(v) for v in vertical + horizontal])
    # det([p; basis]) is the round volume of the basis, up to the norm of p
    return TangentFrame(p, P, vertical, horizontal, vol)


def tangent_frame(point: SpherePoint | Sequence) -> TangentFrame:
    coords = point.coords if isinstance(point, SpherePoint) else tuple(point)
    return frame_at(tuple(mpq(c) for c in coords))


# ---------------------------------------------------------------------------
# Restricted identities


def _coords(point):
    return point.coords if isinstance(point, SpherePoint) else tuple(point)


def restrict_equals(a: Form, b: Form, points: Sequence, check_id: str = "restrict-equals", anchor: str = "") -> CheckOutcome:
    """Compare two ambient forms on tangent tuples at each point."""
    if a.k != b.k:
        raise ValueError("forms of different degree")
    res = outcome(check_id, anchor, len(points))
    diff = a - b
    for pt in points:
        fr = tangent_frame(pt)
        r = fr.restrict(diff)
        if not r.is_zero():
            idx, val = r.items()[0]
            return res.fail({"point": _coords(pt), "tangent_tuple": idx, "defect": val})
    return res


# ---------------------------------------------------------------------------
# Jets of fields


def coordinate_jets(p: Sequence, order: int) -> list:
    return [Jet.coordinate(i, p[i], order) for i in range(8)]


def projector_jets(p: Sequence, order: int):
    q = coordinate_jets(p, order)
    n2 = q[0] * q[0]
    for c in q[1:]:
        n2 = n2 + c * c
    inv = n2.reciprocal()
    return tuple(tuple((1 if i == j else 0) - q[i] * q[j] * inv for j in range(8)) for i in range(8))


def value_form(f: Form) -> Form:
    """Collapse jet coefficients to their values at the base point."""
    return f.map_coeffs(_value)


def _value(c):
    if isinstance(c, Quat):
        return c.map(value_of)
    return value_of(c)


def _commutator(a, b):
    return a * b - b * a


def gauge_term(A_m, form: Form) -> Form:
    """[A_m, form] coefficientwise."""
    if A_m is None:
        return form.map_coeffs(lambda c: c * 0)
    return form.map_coeffs(lambda c: _commutator(A_m, c))


def _A_component(A: Form | None, m: int):
    if A is None:
        return None
    c = A.terms.get(1 << m)
    return c


def derivative_jets(alpha: Form, P, A: Form | None = None) -> list[Form]:
    """D[m] = d/dq^m (P^* alpha) + [A_m, P^* alpha], one form per ambient direction."""
    at = pullback_linear(alpha, P) if alpha.k else alpha
    out = []
    for m in range(8):
        Dm = at.partial(m)
        Am = _A_component(A, m)
        if Am is not None:
            Dm = Dm + gauge_term(Am, at)
        out.append(Dm)
    return out


def codifferential_jets(alpha: Form, P, A: Form | None = None, trace=None) -> Form:
    """-sum_{m,k} trace_mk (nabla_m alpha)(e_k, ...) as a jet form."""
    trace = P if trace is None else trace
    D = derivative_jets(alpha, P, A)
    total = None
    for m in range(8):
        row = trace[m]
        if not any(_nz(c) for c in row):
            continue
        term = D[m].interior_first(row)
        total = term if total is None else total + term
    if total is None:
        return Form.zero(8, alpha.k - 1)
    return -total


def _nz(c):
    return nonzero(c) if not isinstance(c, Jet) else not c.is_zero()


def rough_laplacian_jets(alpha: Form, P, A: Form | None = None, trace=None) -> Form:
    """-tr(nabla^2 alpha), tracing the first two slots with ``trace`` (default P)."""
    trace = P if trace is None else trace
    D = derivative_jets(alpha, P, A)
    PD = [pullback_linear(Dm, P) if Dm.k else Dm for Dm in D]
    # T[k] is the projected extension of (nabla alpha)(e_k, ...)
    T = []
    for k in range(8):
        acc = None
        for a in range(8):
            w = P[k][a]
            if _nz(w) and not PD[a].is_zero():
                term = PD[a].lmul(w)
                acc = term if acc is None else acc + term
        T.append(acc if acc is not None else Form.zero(8, alpha.k))
    total = None
    for m in range(8):
        Am = _A_component(A, m)
        for k in range(8):
            w = trace[m][k]
            if not _nz(w):
                continue
            term = T[k].partial(m)
            if Am is not None:
                term = term + gauge_term(Am, T[k])
            term = term.lmul(w)
            total = term if total is None else total + term
    if total is None:
        return Form.zero(8, alpha.k)
    return -(pullback_linear(total, P) if alpha.k else total)


def _jets(form: Form, p, order: int) -> Form:
    return form.jet(p, order)


def _trace_matrix(frame: TangentFrame, part: str):
    if part == "full":
        return frame.projector
    if part == "vertical":
        return frame.vertical_projector
    if part == "horizontal":
        return frame.horizontal_projector
    raise ValueError(f"unknown trace part {part!r}")


def covariant_deriv(alpha: Form, X: Sequence, point, A: Form | None = None) -> Form:
    """(nabla_X alpha) at the point, as an ambient form with tangential slots."""
    p = tangent_frame(point).point
    P = projector_jets(p, 1)
    D = derivative_jets(_jets(alpha, p, 1), P, _jets(A, p, 1) if A is not None else None)
    acc = None
    for m in range(8):
        if X[m]:
            term = D[m].lmul(X[m])
            acc = term if acc is None else acc + term
    if acc is None:
        return Form.zero(8, alpha.k)
    out = value_form(acc)
    return pullback_linear(out, projector_at(p)) if out.k else out


def codifferential(alpha: Form, point, A: Form | None = None, part: str = "full") -> Form:
    fr = tangent_frame(point)
    p = fr.point
    P = projector_jets(p, 1)
    Aj = _jets(A, p, 1) if A is not None else None
    return value_form(codifferential_jets(_jets(alpha, p, 1), P, Aj, _trace_matrix(fr, part)))


def rough_laplacian(alpha: Form, point, A: Form | None = None, part: str = "full") -> Form:
    """Rough Laplacian at the point; ``part`` restricts the trace to vertical or horizontal directions."""
    fr = tangent_frame(point)
    p = fr.point
    P = projector_jets(p, 2)
    Aj = _jets(A, p, 2) if A is not None else None
    return value_form(rough_laplacian_jets(_jets(alpha, p, 2), P, Aj, _trace_matrix(fr, part)))


def zeta_covector(i: int, p: Sequence) -> tuple:
    """zeta_i at p as an ambient covector: zeta_i(v) = <I_i p, v>."""
    return linalg.matvec(hopf_structure(i), p)


def vertical_horizontal_split(a: Form, point) -> tuple[tuple, Form]:
    """Split a 1-form value at p as sum f_i zeta_i + b with b vanishing on U_i."""
    fr = tangent_frame(point)
    f = tuple(a.evaluate([U]) for U in fr.vertical)
    b = a
    for i, fi in enumerate(f, start=1):
        if _nz(fi):
            b = b - Form.one_form(zeta_covector(i, fr.point)).rmul(fi) if not isinstance(fi, Quat) else b - _quat_one_form(zeta_covector(i, fr.point), fi)
    return f, b


def _quat_one_form(cov, q: Quat) -> Form:
    return Form.one_form([q * c if c else q * 0 for c in cov])


def split_types(form_in_frame: Form, nvert: int = 3) -> dict:
    """Group components of a frame-restricted form by (vertical, horizontal) degree."""
    vmask = (1 << nvert) - 1
    parts: dict = {}
    for m, c in form_in_frame.terms.items():
        pv = (m & vmask).bit_count()
        key = (pv, form_in_frame.k - pv)
        parts.setdefault(key, {})[m] = c
    return {key: Form._raw(form_in_frame.n, form_in_frame.k, terms, form_in_frame.chart) for key, terms in parts.items()}


def type_part(form_in_frame: Form, pq: tuple, nvert: int = 3) -> Form:
    return split_types(form_in_frame, nvert).get(pq, Form.zero(form_in_frame.n, form_in_frame.k))


# ---------------------------------------------------------------------------
# Composite checks


def _frame_forms():
    from . import structures

    return structures.frame_set()


def d_split_check(alpha: Form, points: Sequence, check_id: str = "d-split-decomposition", anchor: str = "") -> CheckOutcome:
    """Five-block decomposition of d(alpha) for alpha = f_i zeta_i + b."""
    fs = _frame_forms()
    res = outcome(check_id, anchor, len(points))
    f = [_pair_with_vertical(alpha, i) for i in (1, 2, 3)]
    a = f[0] * fs.zeta[0] + f[1] * fs.zeta[1] + f[2] * fs.zeta[2]
    b = alpha - a
    da, db, dalpha = a.d(), b.d(), alpha.d()
    for pt in points:
        fr = tangent_frame(pt)
        p = fr.point
        R = fr.restrict
        rda, rdb, rdal = R(da), R(db), R(dalpha)
        # (1,1) part of da is d^h f_i ^ zeta_i; (0,2) part is 2 f_i omegabar_i
        dh_f_wedge = Form.zero(7, 2)
        two_f_wbar = Form.zero(7, 2)
        for i in range(3):
            dfi = R(Form.one_form([f[i].partial(j) for j in range(8)]))
            dhfi = type_part(dfi, (0, 1))
            dh_f_wedge = dh_f_wedge + dhfi.wedge(R(fs.zeta[i]))
            two_f_wbar = two_f_wbar + R(fs.omega_bar[i]).rmul(2 * f[i].eval(p))
        blocks = {
            "(1,1) of d a": type_part(rda, (1, 1)) - dh_f_wedge,
            "(0,2) of d a": type_part(rda, (0, 2)) - two_f_wbar,
            "(2,0) of d b": type_part(rdb, (2, 0)),
            "reassembly": rdal
            - type_part(rda, (2, 0))
            - dh_f_wedge
            - two_f_wbar
            - type_part(rdb, (1, 1))
            - type_part(rdb, (0, 2)),
        }
        for name, defect in blocks.items():
            if not defect.is_zero():
                return res.fail({"point": p, "block": name, "defect": str(defect)})
    return res


def _pair_with_vertical(alpha: Form, i: int) -> RatFn:
    """f_i(q) = alpha(q)(I_i q), which restricts to alpha(U_i) on the sphere."""
    from .exactmath import Poly

    Iq = linalg.matvec(hopf_structure(i), [RatFn(Poly.var(j)) for j in range(8)])
    return RatFn.coerce(alpha.evaluate([Iq]))


def vertical_laplacian_check(
    alpha: Form,
    points: Sequence,
    check_id: str = "vertical-laplacian",
    anchor: str = "",
    shift=4,
    pairing=2,
) -> CheckOutcome:
    """(nabla*nabla alpha)^v = nabla*nabla^v a + 4a + (nabla*nabla^h f_i + 2<d^h b, wbar_i>) zeta_i.

    ``shift`` and ``pairing`` are the constants 4 and 2, exposed for sensitivity tests.
    """
    fs = _frame_forms()
    res = outcome(check_id, anchor, len(points))
    f = [_pair_with_vertical(alpha, i) for i in (1, 2, 3)]
    a = f[0] * fs.zeta[0] + f[1] * fs.zeta[1] + f[2] * fs.zeta[2]
    b = alpha - a
    db = b.d()
    for pt in points:
        fr = tangent_frame(pt)
        p = fr.point
        lhs = rough_laplacian(alpha, pt)
        rhs = rough_laplacian(a, pt, part="vertical") + a.at(p).rmul(shift)
        rdb = fr.restrict(db)
        dhb = type_part(rdb, (0, 2))
        gram = linalg_metric(fr)
        for i in range(3):
            lap_h = rough_laplacian(Form.scalar(8, f[i]), pt, part="horizontal").terms.get(0, ZERO)
            inner = contract(dhb, fr.restrict(fs.omega_bar[i]), gram).terms.get(0, ZERO)
            rhs = rhs + Form.one_form(zeta_covector(i + 1, p)).rmul(lap_h + pairing * inner)
        diff = [(lhs - rhs).evaluate([U]) for U in fr.vertical]
        if any(diff):
            return res.fail({"point": p, "vertical_defect": diff})
    return res


def linalg_metric(fr: TangentFrame):
    from .exterior import MetricSpec

    return MetricSpec(fr.gram, "round")


def dbstar_check(
    b: Form,
    spec,
    points: Sequence,
    coefficient=None,
    check_id: str = "dbstar-identity",
    anchor: str = "",
) -> CheckOutcome:
    """d(b ⌟ phi) ⌟ phi = d*b - db ⌟ psi + c * (b ⌟ phi) at each point.

    ``coefficient`` defaults to ``DBSTAR_COEFFICIENT * tau0``; the ambient
    contractions are exact on the sphere because phi is tangential.
    """
    from .exterior import contract_first
    from .structures import DBSTAR_COEFFICIENT, psi_at

    if (spec.vertical_scale, spec.horizontal_scale) != (1, 1):
        raise ValueError("the sphere calculus uses the round metric; use a round structure")
    c = mpq(DBSTAR_COEFFICIENT) * spec.tau0 if coefficient is None else mpq(coefficient)
    res = outcome(check_id, anchor, len(points))
    phi = spec.phi
    bphi = contract_first(b, phi)
    dbphi, db = bphi.d(), b.d()
    for pt in points:
        fr = tangent_frame(pt)
        g = linalg_metric(fr)
        R = fr.restrict
        rphi = R(phi)
        lhs = contract_first(R(dbphi), rphi, g)
        rhs = R(codifferential(b, pt)) - contract_first(R(db), psi_at(spec, fr), g) + R(bphi).rmul(c)
        if not (lhs - rhs).is_zero():
            return res.fail({"point": fr.point, "defect": str(lhs - rhs)})
    return res
