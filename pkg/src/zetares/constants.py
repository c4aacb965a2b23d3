"""Euler's constant and small zeta values, computed rather than tabulated.

Both are evaluated by Euler-Maclaurin summation: zeta(n) for integer n >= 2 is
then an exact rational plus a remainder far below the working precision, and
gamma is H_N - log N with the same correction series.  The results are checked
once against 15-digit reference strings.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import mpmath

PRECISION_DIGITS = 30

# 15 significant digits, for the startup self-check only
_REFERENCE = {
    "gamma": "0.577215664901533",
    2: "1.64493406684823",
    3: "1.20205690315959",
    4: "1.08232323371114",
    5: "1.03692775514337",
    6: "1.01734306198445",
}


@functools.lru_cache(maxsize=None)
def bernoulli(k: int) -> Fraction:
    """Bernoulli number B_k with B_1 = -1/2."""
    b = [Fraction(1)]
    for m in range(1, k + 1):
        b.append(-sum(comb(m + 1, j) * b[j] for j in range(m)) / (m + 1))
    return b[k]


def _zeta_em(n: int, N: int = 40, terms: int = 12) -> Fraction:
    # sum_{k<N} k^-n + N^(1-n)/(n-1) + N^-n/2 + sum_j B_2j/(2j)! (n)_(2j-1) N^(-n-2j+1)
    s = sum(Fraction(1, k**n) for k in range(1, N))
    s += Fraction(1, (n - 1) * N ** (n - 1)) + Fraction(1, 2 * N**n)
    rising = Fraction(n)
    fact = 1
    for j in range(1, terms + 1):
        fact *= (2 * j - 1) * (2 * j)
        s += bernoulli(2 * j) / fact * rising / N ** (n + 2 * j - 1)
        rising *= (n + 2 * j - 1) * (n + 2 * j)
    return s


def _gamma_em(N: int = 60, terms: int = 12) -> mpmath.mpf:
    # H_N - log N - 1/(2N) + sum_j B_2j / (2j N^2j)
    with mpmath.workdps(PRECISION_DIGITS + 10):
        h = sum(Fraction(1, k) for k in range(1, N + 1))
        corr = -Fraction(1, 2 * N) + sum(bernoulli(2 * j) / (2 * j * N ** (2 * j)) for j in range(1, terms + 1))
        val = mpmath.mpf(h.numerator) / h.denominator - mpmath.log(N)
        val += mpmath.mpf(corr.numerator) / corr.denominator
    return val


@dataclass(frozen=True)
class Constants:
    euler_gamma: float
    zeta_values: dict[int, float] = field(default_factory=dict)
    precision: int = PRECISION_DIGITS
    # full-precision strings, for reporting
    euler_gamma_str: str = ""
    zeta_strs: dict[int, str] = field(default_factory=dict)


@functools.lru_cache(maxsize=1)
def constants() -> Constants:
    """Compute gamma and zeta(2..6) once and verify them against the references."""
    with mpmath.workdps(PRECISION_DIGITS):
        g = _gamma_em()
        zs = {}
        for n in range(2, 7):
            q = _zeta_em(n)
            zs[n] = mpmath.mpf(q.numerator) / q.denominator
        g_str = mpmath.nstr(g, PRECISION_DIGITS)
        z_strs = {n: mpmath.nstr(v, PRECISION_DIGITS) for n, v in zs.items()}
        checks = [("gamma", g)] + list(zs.items())
        for key, val in checks:
            ref = mpmath.mpf(_REFERENCE[key])
            if abs(val - ref) > mpmath.mpf("1e-14"):
                raise ArithmeticError(f"constant {key} = {val} disagrees with reference {ref}")
        return Constants(
            euler_gamma=float(g),
            zeta_values={n: float(v) for n, v in zs.items()},
            euler_gamma_str=g_str,
            zeta_strs=z_strs,
        )


def euler_gamma() -> float:
    return constants().euler_gamma


def zeta_value(n: int) -> float:
    if not 2 <= n <= 6:
        raise ValueError(f"zeta_value supports 2 <= n <= 6, got {n}")
    return constants().zeta_values[n]
