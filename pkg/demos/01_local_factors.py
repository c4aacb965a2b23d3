"""
Local factors of the standard Artin L-function
==============================================

For a degree n field with Galois group S_n, the L-function of the standard
(n-1)-dimensional representation has an Euler factor at each unramified prime
that depends only on the cycle type of Frobenius.  Every such factor sits
between two explicit envelopes.
"""

from zetares import CycleType, a_rho, factor_bounds, l_rho_local_factor, orthogonality_check, partitions

# a_rho(C) is the number of fixed points minus one
for c in partitions(4):
    print(f"{str(c):12s} a_rho = {a_rho(c):+d}")

# class sizes weight the trace to zero
print("orthogonality sums:", {n: orthogonality_check(n) for n in (3, 4, 5)})

# at p = 7 the identity sits on the upper envelope and the 4-cycle on the lower one
p = 7
lo, hi = factor_bounds(p, 3)
print(f"\np = {p}: envelope [{float(lo):.6f}, {float(hi):.6f}]")
for c in partitions(4):
    v = l_rho_local_factor(c, p).value
    tag = "upper" if v == hi else "lower" if v == lo else ""
    print(f"  {str(c):12s} {float(v):.6f} {tag}")

# the values are exact rationals
print("\nidentity factor at 7 for S_3:", l_rho_local_factor(CycleType((1, 1, 1)), 7).value)
