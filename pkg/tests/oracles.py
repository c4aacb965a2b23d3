"""Independent reference computations for the test suite.

None of these import the package under test.  They are deliberately naive:
brute force, sympy, or mpmath at high precision.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import permutations

import mpmath
import numpy as np
import sympy


def segmented_prime_count(n: int, segment: int = 1 << 15) -> int:
    """pi(n) with a segmented sieve seeded by trial division."""
    root = math.isqrt(n)
    base = [p for p in range(2, root + 1) if all(p % q for q in range(2, math.isqrt(p) + 1))]
    count = 0
    for lo in range(2, n + 1, segment):
        hi = min(lo + segment, n + 1)
        mark = np.ones(hi - lo, dtype=bool)
        for p in base:
            start = max(p * p, (lo + p - 1) // p * p)
            mark[start - lo :: p] = False
        count += int(mark.sum())
    return count


def sympy_discriminant(coeffs_low: tuple[int, ...]) -> int:
    x = sympy.symbols("x")
    f = sum(c * x**i for i, c in enumerate(coeffs_low))
    return int(sympy.discriminant(f, x))


def sympy_factor_degrees(coeffs_low: tuple[int, ...], p: int) -> tuple[tuple[int, ...], bool]:
    """Degrees of the distinct irreducible factors mod p, and whether any repeats."""
    x = sympy.symbols("x")
    f = sympy.Poly(list(reversed(coeffs_low)), x, modulus=p)
    _, facs = f.factor_list()
    degs = tuple(sorted((g.degree() for g, _ in facs), reverse=True))
    return degs, any(m > 1 for _, m in facs)


def roots_mod_p(coeffs_low: tuple[int, ...], p: int) -> int:
    return sum(1 for t in range(p) if sum(c * pow(t, i, p) for i, c in enumerate(coeffs_low)) % p == 0)


def sympy_real_roots(coeffs_low: tuple[int, ...]) -> int:
    x = sympy.symbols("x")
    return len(sympy.real_roots(sum(c * x**i for i, c in enumerate(coeffs_low))))


def class_sizes_by_enumeration(n: int) -> dict[tuple[int, ...], int]:
    """Cycle type -> class size, by walking every permutation of n points."""
    sizes: dict[tuple[int, ...], int] = {}
    for perm in permutations(range(n)):
        seen, parts = set(), []
        for s in range(n):
            if s in seen:
                continue
            k, t = 0, s
            while t not in seen:
                seen.add(t)
                t = perm[t]
                k += 1
            parts.append(k)
        key = tuple(sorted(parts, reverse=True))
        sizes[key] = sizes.get(key, 0) + 1
    return sizes


def power_sum_euler_factor(parts: tuple[int, ...], p: int, kmax: int = 30, dps: int = 120) -> mpmath.mpf:
    """exp(sum_{k<=kmax} a(p^k)/(k p^k)) with a(p^k) from the roots of prod(1 - X^d_j)/(1 - X).

    The non-unit roots are the d_j-th roots of unity over all parts, minus one
    copy of 1; their k-th power sum is computed numerically from the roots.
    """
    with mpmath.workdps(dps):
        roots = []
        for d in parts:
            roots += [mpmath.exp(2j * mpmath.pi * t / d) for t in range(d)]
        roots.remove(min(roots, key=lambda z: abs(z - 1)))
        total = mpmath.mpf(0)
        for k in range(1, kmax + 1):
            ak = mpmath.re(mpmath.fsum(z**k for z in roots))
            total += ak / (k * mpmath.mpf(p) ** k)
        return +mpmath.exp(total)


def relative_gap(value: mpmath.mpf, exact: Fraction, dps: int = 120) -> mpmath.mpf:
    """|value / exact - 1| evaluated at high precision."""
    with mpmath.workdps(dps):
        return abs(value * exact.denominator / exact.numerator - 1)


def brute_class_number(D: int) -> int:
    """Reduced primitive forms of discriminant D < 0, looping over b first."""
    h = 0
    bound = math.isqrt(-D // 3) + 1
    for b in range(-bound, bound + 1):
        if (b * b - D) % 4:
            continue
        ac = (b * b - D) // 4
        for a in range(max(1, abs(b)), bound + 1):
            if ac % a:
                continue
            c = ac // a
            if c < a:
                break
            if (abs(b) == a or a == c) and b < 0:
                continue
            if math.gcd(math.gcd(a, b), c) == 1:
                h += 1
    return h


def mpmath_euler_gamma(dps: int = 40) -> mpmath.mpf:
    with mpmath.workdps(dps):
        return +mpmath.euler


def mpmath_zeta(n: int, dps: int = 40) -> mpmath.mpf:
    with mpmath.workdps(dps):
        return mpmath.zeta(n)


def exact_mertens(y: int) -> Fraction:
    out = Fraction(1)
    for p in sympy.primerange(2, y + 1):
        out *= Fraction(p, p - 1)
    return out
