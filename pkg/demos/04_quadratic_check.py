"""
Imaginary quadratic fields as a ground truth
============================================

For d = 1 the residue is known exactly from the class number, so the
truncated product can be scored against it.
"""

import statistics

from zetares import class_number_imaginary, compare_truncation
from zetares.quadratic import fundamental_discriminants

for D in (-3, -4, -23, -163):
    res = class_number_imaginary(D)
    print(f"D = {D:5d}  h = {res.h}  L(1, chi) = {res.exact_L1:.7f}")

errs = [compare_truncation(D, 1e5).relative_error for D in fundamental_discriminants(-2000)]
print(f"\n{len(errs)} discriminants down to -2000 at x = 1e5")
print(f"max relative error {max(errs):.4f}, median {statistics.median(errs):.5f}")
