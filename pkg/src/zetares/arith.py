"""Exact integer and mod-p polynomial arithmetic.

Polynomials are coefficient sequences, lowest degree first.  Over GF(p) the
zero polynomial is the empty list and every nonzero list has a nonzero last
entry.  Everything here is exact; nothing is rounded.
"""

from __future__ import annotations

import functools
import hashlib
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "IntPolynomial",
    "CycleType",
    "FactorizationModP",
    "primes_up_to",
    "prime_array",
    "poly_discriminant",
    "factor_degrees_mod_p",
    "factor_mod_p",
    "frobenius_batch",
    "primes_between",
    "real_root_count",
    "signature",
    "partitions",
]


# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class IntPolynomial:
    """Monic integer polynomial, coefficients lowest degree first."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coefficients)
        if len(coeffs) < 2:
            raise ValueError("polynomial must have degree >= 1")
        if coeffs[-1] != 1:
            raise ValueError(f"polynomial must be monic, got leading coefficient {coeffs[-1]}")
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def from_low(cls, low: Sequence[int]) -> "IntPolynomial":
        """Build from the non-leading coefficients c0..c_{n-1}; the leading 1 is implied."""
        return cls(tuple(low) + (1,))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def derivative(self) -> tuple[int, ...]:
        return tuple(i * c for i, c in enumerate(self.coefficients) if i)

    def mirror(self) -> "IntPolynomial":
        """(-1)^n f(-x): the polynomial of the negated root."""
        n = self.degree
        return IntPolynomial(tuple(c * (-1) ** (n - i) for i, c in enumerate(self.coefficients)))

    def __str__(self):
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coefficients[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and abs(c) == 1:
                coef = "-" if c < 0 else "+"
            else:
                coef = f"{c:+d}"
            terms.append(f"{coef}{mono}")
        s = "".join(terms)
        return s[1:] if s.startswith("+") else s


@dataclass(frozen=True, order=True)
class CycleType:
    """Partition of n, parts sorted descending."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(sorted((int(x) for x in self.parts), reverse=True))
        if not parts or parts[-1] < 1:
            raise ValueError(f"cycle type needs positive parts, got {self.parts!r}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> "CycleType":
        return cls(tuple(parts))

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def fixed_points(self) -> int:
        return self.parts.count(1)

    def class_size(self) -> int:
        """Size of the conjugacy class of S_n with this cycle type."""
        n = self.n
        denom = 1
        for k in set(self.parts):
            m = self.parts.count(k)
            denom *= k**m * math.factorial(m)
        return math.factorial(n) // denom

    def __str__(self):
        return "[" + ",".join(map(str, self.parts)) + "]"


@dataclass(frozen=True)
class FactorizationModP:
    """Factor degrees of f mod p.

    When `ramified` is set, `degrees` lists the irreducible factors of the
    squarefree part (multiplicities dropped), so they may sum to less than
    deg f.
    """

    p: int
    degrees: tuple[int, ...]
    ramified: bool

    @property
    def cycle_type(self) -> CycleType:
        return CycleType(self.degrees)


# ---------------------------------------------------------------------------
# primes


@functools.lru_cache(maxsize=8)
def _sieve(limit: int) -> np.ndarray:
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    out = np.flatnonzero(is_prime).astype(np.int64)
    out.setflags(write=False)
    return out


def prime_array(y: float) -> np.ndarray:
    """Primes <= y as a read-only int64 array."""
    if y < 2:
        return np.zeros(0, dtype=np.int64)
    limit = int(math.floor(y))
    # sieve at a rounded-up size so nearby limits share the cache
    size = max(1024, 1 << (limit - 1).bit_length())
    primes = _sieve(size)
    return primes[: np.searchsorted(primes, limit, side="right")]


def primes_up_to(y: float) -> list[int]:
    """Primes in [2, y], ascending."""
    return prime_array(y).tolist()


def primes_between(lo: float, hi: float) -> np.ndarray:
    """Primes p with lo < p < hi, as an int64 array."""
    ps = prime_array(hi)
    return ps[(ps > lo) & (ps < hi)]


# ---------------------------------------------------------------------------
# integer polynomial invariants


def _bareiss_det(rows: list[list[int]]) -> int:
    m = [list(r) for r in rows]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _resultant(f: Sequence[int], g: Sequence[int]) -> int:
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    fh, gh = list(reversed(f)), list(reversed(g))
    for i in range(n):
        rows.append([0] * i + fh + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gh + [0] * (size - n - 1 - i))
    return _bareiss_det(rows)


def poly_discriminant(f: IntPolynomial) -> int:
    """Discriminant of a monic integer polynomial via the Sylvester resultant."""
    n = f.degree
    if n < 2:
        raise ValueError("discriminant needs degree >= 2")
    res = _resultant(f.coefficients, f.derivative())
    return (-1) ** (n * (n - 1) // 2) * res


# ---------------------------------------------------------------------------
# rational polynomials and Sturm sequences


def _q_trim(a: list[Fraction]) -> list[Fraction]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _q_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        q = a[-1] / lb
        shift = len(a) - 1 - db
        for i, c in enumerate(b):
            a[shift + i] -= q * c
        _q_trim(a)
    return a


def _sturm_chain(f: IntPolynomial) -> list[list[Fraction]]:
    p0 = [Fraction(c) for c in f.coefficients]
    p1 = [Fraction(c) for c in f.derivative()]
    chain = [p0, p1]
    while len(chain[-1]) > 1:
        r = _q_rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return chain


def _variations(signs: Iterable[int]) -> int:
    s = [x for x in signs if x != 0]
    return sum(1 for a, b in zip(s, s[1:]) if a != b)


def real_root_count(f: IntPolynomial) -> int:
    """Number of real roots of a squarefree monic polynomial (Sturm)."""
    if f.degree >= 2 and poly_discriminant(f) == 0:
        raise ValueError(f"{f} is not squarefree")
    chain = _sturm_chain(f)

    def sgn(x):
        return (x > 0) - (x < 0)

    at_pos = [sgn(p[-1]) for p in chain]
    at_neg = [sgn(p[-1]) * (-1) ** (len(p) - 1) for p in chain]
    return _variations(at_neg) - _variations(at_pos)


def signature(f: IntPolynomial) -> tuple[int, int]:
    r1 = real_root_count(f)
    return r1, (f.degree - r1) // 2


# ---------------------------------------------------------------------------
# GF(p)[x]


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _reduce(coeffs: Sequence[int], p: int) -> list[int]:
    return _trim([c % p for c in coeffs])


def _monic(a: list[int], p: int) -> list[int]:
    if not a or a[-1] == 1:
        return a
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def _divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], r
    inv = pow(b[-1], -1, p)
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db] * inv % p
        q[k] = c
        if c:
            for j, bj in enumerate(b):
                r[k + j] = (r[k + j] - c * bj) % p
    return _trim(q), _trim(r[:db])


def _mod(a: list[int], b: list[int], p: int) -> list[int]:
    return _divmod(a, b, p)[1]


def _mulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    return _mod(_mul(a, b, p), m, p)


def _powmod(base: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _mod(base, m, p)
    while e:
        if e & 1:
            result = _mulmod(result, base, m, p)
        e >>= 1
        if e:
            base = _mulmod(base, base, m, p)
    return result


def _xpow_mod(e: int, g: list[int], p: int) -> list[int]:
    """x^e mod monic g over GF(p), left-to-right; multiplying by x is a shift."""
    n = len(g) - 1
    tail = g[:n]
    r = [1]
    for bit in bin(e)[2:]:
        if r != [1]:
            m = len(r)
            sq = [0] * (2 * m - 1)
            for i in range(m):
                ri = r[i]
                if ri:
                    for j in range(m):
                        sq[i + j] += ri * r[j]
            for k in range(len(sq) - 1, n - 1, -1):
                c = sq[k] % p
                if c:
                    base = k - n
                    for j in range(n):
                        sq[base + j] -= c * tail[j]
            r = _trim([c % p for c in sq[:n]])
        if bit == "1":
            r = [0] + r
            if len(r) > n:
                c = r.pop()
                r = _trim([(r[j] - c * tail[j]) % p for j in range(n)])
    return r


def _gcd(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        a, b = b, _mod(a, b, p)
    return _monic(a, p)


def _deriv(a: list[int], p: int) -> list[int]:
    return _trim([i * c % p for i, c in enumerate(a) if i])


def _pth_root(a: list[int], p: int) -> list[int]:
    # a(x) = b(x^p) over GF(p); coefficients are fixed by Frobenius
    return [a[i] for i in range(0, len(a), p)]


def _squarefree_decomposition(f: list[int], p: int) -> list[tuple[list[int], int]]:
    """Monic f over GF(p) as a list of (squarefree factor, multiplicity)."""
    out: list[tuple[list[int], int]] = []

    def rec(f: list[int], mult: int):
        i = 1
        df = _deriv(f, p)
        if not df:
            rec(_pth_root(f, p), mult * p)
            return
        c = _gcd(f, df, p)
        w = _divmod(f, c, p)[0]
        while len(w) > 1:
            y = _gcd(w, c, p)
            fac = _divmod(w, y, p)[0]
            if len(fac) > 1:
                out.append((_monic(fac, p), i * mult))
            i += 1
            w = y
            c = _divmod(c, y, p)[0]
        if len(c) > 1:
            rec(_pth_root(c, p), mult * p)

    rec(_monic(list(f), p), 1)
    return out


def _distinct_degree(g: list[int], p: int) -> list[tuple[list[int], int]]:
    """Distinct-degree factorization of a squarefree monic g."""
    out = []
    x = [0, 1]
    n = len(g) - 1
    if n < 2:
        return [(g, 1)] if n == 1 else []
    xp = _xpow_mod(p, g, p)
    frob = None
    h = x
    i = 0
    while 2 * (i + 1) <= len(g) - 1:
        i += 1
        if i == 1:
            h = xp
        else:
            if frob is None:
                # rows x^(jp) mod g; Frobenius acts linearly on residues
                frob = [[1]]
                for _ in range(1, n):
                    frob.append(_mulmod(frob[-1], xp, g, p))
            acc = [0] * n
            for j, c in enumerate(h):
                if c:
                    for k, v in enumerate(frob[j]):
                        acc[k] += c * v
            h = _mod(_trim([a % p for a in acc]), g, p)
        d = _gcd(g, _sub(h, x, p), p)
        if len(d) > 1:
            out.append((d, i))
            g = _divmod(g, d, p)[0]
            h = _mod(h, g, p)
    if len(g) > 1:
        out.append((g, len(g) - 1))
    return out


def _equal_degree(g: list[int], d: int, p: int, rng: random.Random) -> list[list[int]]:
    """Split a squarefree g whose irreducible factors all have degree d."""
    n = len(g) - 1
    if n == d:
        return [g]
    while True:
        a = _trim([rng.randrange(p) for _ in range(n)])
        if len(a) < 2:
            continue
        if p == 2:
            # trace map a + a^2 + ... + a^(2^(d-1))
            b = acc = a
            for _ in range(d - 1):
                acc = _mulmod(acc, acc, g, p)
                b = _sub(b, acc, p)
        else:
            b = _sub(_powmod(a, (p**d - 1) // 2, g, p), [1], p)
        h = _gcd(g, b, p)
        if 1 < len(h) < len(g):
            return _equal_degree(h, d, p, rng) + _equal_degree(_divmod(g, h, p)[0], d, p, rng)


def _seeded_rng(coeffs: Sequence[int], p: int) -> random.Random:
    key = ",".join(map(str, coeffs)) + f"|{p}"
    seed = int.from_bytes(hashlib.sha256(key.encode()).digest()[:8], "little")
    return random.Random(seed)


def factor_mod_p(f: IntPolynomial, p: int) -> list[tuple[tuple[int, ...], int]]:
    """Full factorization of f mod p as (monic irreducible factor, multiplicity).

    The equal-degree split is seeded by (f, p), so the output is deterministic.
    Factors are returned sorted by (degree, coefficients).
    """
    g = _reduce(f.coefficients, p)
    rng = _seeded_rng(f.coefficients, p)
    out = []
    for sq, mult in _squarefree_decomposition(g, p):
        for block, d in _distinct_degree(sq, p):
            for fac in _equal_degree(block, d, p, rng):
                out.append((tuple(fac), mult))
    out.sort(key=lambda t: (len(t[0]), t[0], t[1]))
    return out


def factor_degrees_mod_p(f: IntPolynomial, p: int, disc: int | None = None) -> FactorizationModP:
    """Irreducible-factor degrees of f mod p.

    `disc`, if given, is the polynomial discriminant of f and lets unramified
    primes skip the squarefree decomposition.
    """
    g = _reduce(f.coefficients, p)
    if disc is not None and disc % p:
        blocks = _distinct_degree(g, p)
        ramified = False
    else:
        parts = _squarefree_decomposition(g, p)
        ramified = len(parts) != 1 or parts[0][1] != 1
        radical = [1]
        for sq, _ in parts:
            radical = _mul(radical, sq, p)
        blocks = _distinct_degree(radical, p)
    degrees = []
    for block, d in blocks:
        degrees.extend([d] * ((len(block) - 1) // d))
    return FactorizationModP(p, tuple(sorted(degrees, reverse=True)), ramified)


def _counts_to_degrees(row) -> tuple[int, ...]:
    degs = []
    for d in range(len(row) - 1, 0, -1):
        degs.extend([d] * int(row[d]))
    return tuple(degs)


def frobenius_batch(f: IntPolynomial, primes: Sequence[int], disc: int | None = None) -> list[FactorizationModP]:
    """factor_degrees_mod_p over many primes; unramified primes use the compiled kernel."""
    from . import _fastfactor

    if disc is None:
        disc = poly_discriminant(f) if f.degree >= 2 else 1
    primes = [int(p) for p in primes]
    if f.degree > _fastfactor.MAXDEG or max(map(abs, f.coefficients)) >= 2**62:
        return [factor_degrees_mod_p(f, p, disc) for p in primes]
    skip = np.array([[disc % p == 0 for p in primes]], dtype=bool)
    counts = _fastfactor.unramified_degrees(np.array([f.coefficients], dtype=np.int64), np.array(primes, dtype=np.int64), skip)[0]
    out = []
    for k, p in enumerate(primes):
        if skip[0, k]:
            out.append(factor_degrees_mod_p(f, p, disc))
        else:
            out.append(FactorizationModP(p, _counts_to_degrees(counts[k]), False))
    return out


# ---------------------------------------------------------------------------
# partitions


def partitions(n: int) -> list[CycleType]:
    """All partitions of n, in reverse lexicographic order ([n] first)."""
    if not 1 <= n <= 12:
        raise ValueError(f"n must be in [1, 12], got {n}")
    out: list[CycleType] = []

    def gen(rest: int, cap: int, acc: list[int]):
        if rest == 0:
            out.append(CycleType(tuple(acc)))
            return
        for k in range(min(rest, cap), 0, -1):
            acc.append(k)
            gen(rest - k, k, acc)
            acc.pop()

    gen(n, n, [])
    return out
