#!/usr/bin/env python3
"""Compare each intermediate step of the A0 curvature computation with its displayed form."""

from g2verify import instanton as I

for name, (lhs, rhs) in I.curvature_intermediates().items():
    diff = lhs - rhs
    print(f"{'ok  ' if diff.is_zero() else 'FAIL'} {name}")
    if not diff.is_zero():
        print(f"     difference has {len(diff.terms)} nonzero components")
print("F_A0 equals the closed forms:", I.f_a0() == I.f_a0_formula() == I.f_a0_formula_square())
