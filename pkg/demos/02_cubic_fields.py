"""
Residues over an enumerated cubic family
========================================

Enumerate x^3 + ax + b by height, keep the fields that look like S_3, and
estimate L(1, rho) for each one by a truncated Euler product.
"""

import warnings

from zetares import IntPolynomial, enumerate_cubics, log_sum_L1, make_record, scan_residues, truncated_product_L1

warnings.simplefilter("ignore")

# the smallest cubic field, discriminant -23
K = make_record(IntPolynomial((-1, -1, 0, 1)))
for x in (1e2, 1e3, 1e4, 1e5):
    est = truncated_product_L1(K, x)
    print(f"x = {x:8.0f}  L(1) ~ {est.value:.6f}  (heuristic error {est.heuristic_error:.3f})")

# product and log-sum routes agree to rounding
a, b = truncated_product_L1(K, 1e4), log_sum_L1(K, 1e4)
print("product vs log-sum:", a.log_value - b.log_value)

# a whole family, at the default height for each discriminant
fam = [r for r in enumerate_cubics(12) if r.group_tag == "Sn-heuristic"]
rep = scan_residues(fam, "auto")
hi, lo = rep.rows[rep.max_row], rep.rows[rep.min_row]
print(f"\n{len(fam)} fields; envelope violations: {rep.envelope_violations}")
print(f"largest  {hi['estimate']:.4f} for {hi['poly']} (disc {hi['disc']})")
print(f"smallest {lo['estimate']:.4f} for {lo['poly']} (disc {lo['disc']})")
