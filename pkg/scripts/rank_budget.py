#!/usr/bin/env python3
"""Evaluation-matrix rank of the 15-family and of the Lie(Sp(2)) candidates versus point count.

Each point contributes 7 x 3 rows, but the curvature of A0 restricted to one
point sees only part of the family, so the rank grows with the budget.
"""

from g2verify import deformation as D
from g2verify.sphere import rat_sphere_points

fam = [D.linear_deformation(M, label=n) for n, M in D.fifteen_basis()]
sp2 = [D.linear_deformation(M) for M in D.sp2_lie_basis()]
pts = rat_sphere_points(7, 10, 0, ["axes"])
print("points  15-family  Lie(Sp(2))")
for n in (1, 2, 3, 4, 6, 8, 10):
    print(f"{n:6d}  {D.independence_rank(fam, pts[:n]):9d}  {D.independence_rank(sp2, pts[:n]):10d}")
