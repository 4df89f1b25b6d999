#!/usr/bin/env python3
"""Solve for the coefficient c in L^2 alpha = c phi ⌞ D alpha + nabla*nabla alpha + 6 alpha - 2 [F ⌞ alpha].

Uses alpha = zeta_1 e_1 with the trivial connection, where every term is a
multiple of alpha, and then confirms the value on candidates with A0.
"""

from g2verify import deformation as D
from g2verify import instanton as I
from g2verify.exterior import Form
from g2verify.quaternion import Quat
from g2verify.sphere import rat_sphere_points
from g2verify.structures import frame_set

pt = rat_sphere_points(7, 1, 0, ["axes"])[0]
flat = Form.zero(8, 1)
z = frame_set().zeta[0].map_coeffs(lambda c: Quat.basis(1) * c)
t = D.weitzenbock_terms(z, pt, flat, None)


def ratio(a: Form, b: Form):
    m = next(iter(b.terms))
    q, r = a.terms[m], b.terms[m]
    return q.c[1] / r.c[1]


rest = t["rough"] + t["alpha"].rmul(D.RICCI_ROUND)
c = (ratio(t["lhs"], t["alpha"]) - ratio(rest, t["alpha"])) / ratio(t["phi_dalpha"], t["alpha"])
print(f"lhs = {ratio(t['lhs'], t['alpha'])} alpha, phi ⌞ d alpha = {ratio(t['phi_dalpha'], t['alpha'])} alpha")
print(f"solved coefficient c = {c}")
for cand in (D.candidate("15fam:6"), D.gauge_direction(Quat.basis(2))):
    r = D.weitzenbock_check(cand, [pt], coefficient=c)
    print(f"{cand.label:12s} with c = {c}: {r.status}")
