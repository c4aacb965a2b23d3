"""Compiled distinct-degree factorization for small-degree polynomials mod p.

Only squarefree inputs are handled here (callers route primes dividing the
discriminant to the exact Python path in `arith`).  Polynomials are int64
arrays of fixed width with an explicit degree; all products stay below 2^63
for p < 2^31.
"""

from __future__ import annotations

import numpy as np
from numba import njit

MAXDEG = 8
_W = 2 * MAXDEG + 1


@njit(cache=True)
def _inv(a, p):
    # a^(p-2) mod p
    r = 1
    b = a % p
    e = p - 2
    while e > 0:
        if e & 1:
            r = r * b % p
        b = b * b % p
        e >>= 1
    return r


@njit(cache=True)
def _deg(a):
    for i in range(a.shape[0] - 1, -1, -1):
        if a[i] != 0:
            return i
    return -1


@njit(cache=True)
def _rem_inplace(a, g, dg, p):
    # a <- a mod g (g monic of degree dg)
    for k in range(a.shape[0] - 1, dg - 1, -1):
        c = a[k] % p
        if c != 0:
            base = k - dg
            for j in range(dg):
                a[base + j] = (a[base + j] - c * g[j]) % p
        a[k] = 0


@njit(cache=True)
def _mulmod(a, b, g, dg, p):
    prod = np.zeros(_W, dtype=np.int64)
    for i in range(dg):
        ai = a[i]
        if ai != 0:
            for j in range(dg):
                prod[i + j] = (prod[i + j] + ai * b[j]) % p
    _rem_inplace(prod, g, dg, p)
    out = np.zeros(MAXDEG + 1, dtype=np.int64)
    for i in range(dg):
        out[i] = prod[i]
    return out


@njit(cache=True)
def _monic_gcd(a0, b0, p):
    a = a0.copy()
    b = b0.copy()
    db = _deg(b)
    while db >= 0:
        da = _deg(a)
        inv = _inv(b[db], p)
        for k in range(da, db - 1, -1):
            c = a[k] * inv % p
            if c != 0:
                base = k - db
                for j in range(db + 1):
                    a[base + j] = (a[base + j] - c * b[j]) % p
        a, b = b, a
        db = _deg(b)
    da = _deg(a)
    if da >= 0:
        inv = _inv(a[da], p)
        for i in range(da + 1):
            a[i] = a[i] * inv % p
    return a


@njit(cache=True)
def _exact_div(a0, b, p):
    # quotient of a by monic b
    a = a0.copy()
    q = np.zeros(MAXDEG + 1, dtype=np.int64)
    da = _deg(a)
    db = _deg(b)
    for k in range(da, db - 1, -1):
        c = a[k] % p
        q[k - db] = c
        if c != 0:
            base = k - db
            for j in range(db + 1):
                a[base + j] = (a[base + j] - c * b[j]) % p
    return q


@njit(cache=True)
def ddf_counts(coeffs, p, counts):
    """counts[i] <- number of degree-i irreducible factors of squarefree monic coeffs mod p."""
    n = coeffs.shape[0] - 1
    g = np.zeros(MAXDEG + 1, dtype=np.int64)
    for i in range(n + 1):
        g[i] = coeffs[i] % p
    for i in range(counts.shape[0]):
        counts[i] = 0
    dg = n
    if dg == 1:
        counts[1] = 1
        return
    # x^p mod g
    xp = np.zeros(MAXDEG + 1, dtype=np.int64)
    xp[0] = 1
    nbits = 0
    e = p
    while e > 0:
        nbits += 1
        e >>= 1
    for b in range(nbits - 1, -1, -1):
        xp = _mulmod(xp, xp, g, dg, p)
        if (p >> b) & 1:
            carry = xp[dg - 1]
            for j in range(dg - 1, 0, -1):
                xp[j] = xp[j - 1]
            xp[0] = 0
            if carry != 0:
                for j in range(dg):
                    xp[j] = (xp[j] - carry * g[j]) % p
    frob = np.zeros((MAXDEG, MAXDEG + 1), dtype=np.int64)
    frob[0, 0] = 1
    for j in range(1, dg):
        frob[j] = _mulmod(frob[j - 1], xp, g, dg, p)
    h = xp.copy()
    i = 1
    while 2 * i <= dg:
        if i > 1:
            acc = np.zeros(_W, dtype=np.int64)
            for j in range(dg + 1):
                c = h[j]
                if c != 0:
                    for k in range(n):
                        acc[k] = (acc[k] + c * frob[j, k]) % p
            _rem_inplace(acc, g, dg, p)
            for k in range(MAXDEG + 1):
                h[k] = acc[k]
        t = h.copy()
        t[1] = (t[1] - 1) % p
        d = _monic_gcd(g, t, p)
        dd = _deg(d)
        if dd > 0:
            counts[i] += dd // i
            g = _exact_div(g, d, p)
            dg = _deg(g)
            _rem_inplace(h, g, dg, p)
        i += 1
    if dg > 0:
        counts[dg] += 1


@njit(cache=True)
def ddf_counts_batch(coeffs, primes, skip, counts):
    """Batch over records x primes; entries with skip[r, k] set are left zero."""
    R = coeffs.shape[0]
    P = primes.shape[0]
    buf = np.zeros(counts.shape[2], dtype=np.int64)
    for r in range(R):
        for k in range(P):
            if skip[r, k]:
                continue
            ddf_counts(coeffs[r], primes[k], buf)
            for i in range(buf.shape[0]):
                counts[r, k, i] = buf[i]


def unramified_degrees(coeffs: np.ndarray, primes: np.ndarray, skip: np.ndarray) -> np.ndarray:
    """Factor-degree counts, shape (records, primes, deg + 1)."""
    coeffs = np.ascontiguousarray(coeffs, dtype=np.int64)
    n = coeffs.shape[1] - 1
    if n > MAXDEG:
        raise ValueError(f"degree {n} exceeds compiled limit {MAXDEG}")
    primes = np.ascontiguousarray(primes, dtype=np.int64)
    counts = np.zeros((coeffs.shape[0], primes.shape[0], n + 1), dtype=np.int64)
    ddf_counts_batch(coeffs, primes, np.ascontiguousarray(skip, dtype=np.bool_), counts)
    return counts
