"""Local Euler factors of the standard representation and truncated L(1) values.

For an S_n-field K with n = d + 1, the residue of zeta_K at s = 1 is L(1, rho)
for the d-dimensional standard representation rho.  If Frobenius at an
unramified p has cycle type (d_1, ..., d_k) then

    prod_i (1 - alpha_i / p)^-1 = (1 - 1/p) prod_j (1 - p^-d_j)^-1,

so every local factor is an exact rational determined by the factor degrees of
the defining polynomial mod p.  At ramified primes the same formula is applied
to the degrees of the squarefree part.
"""

from __future__ import annotations

import functools
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Sequence, Union

from .arith import CycleType, FactorizationModP, IntPolynomial, frobenius_batch, partitions, poly_discriminant, primes_up_to
from .constants import euler_gamma, zeta_value

if TYPE_CHECKING:
    from .catalog import NumberFieldRecord

__all__ = [
    "StandardRepGroup",
    "EulerFactorValue",
    "TruncatedEstimate",
    "IndexWarning",
    "a_rho",
    "a_rho_power",
    "orthogonality_check",
    "zeta_local_factor",
    "l_rho_local_factor",
    "factor_bounds",
    "frobenius_table",
    "truncated_product_L1",
    "log_sum_L1",
    "mertens_product",
    "grh_window",
    "predicted_target",
    "default_height",
]


class IndexWarning(UserWarning):
    """A prime used as ramified may only divide the polynomial index."""


@dataclass(frozen=True)
class StandardRepGroup:
    n: int
    classes: tuple[tuple[CycleType, int], ...]
    order: int

    @classmethod
    def of(cls, n: int) -> "StandardRepGroup":
        if n not in (2, 3, 4, 5):
            raise ValueError(f"symmetric group degree must be in 2..5, got {n}")
        classes = tuple((c, c.class_size()) for c in partitions(n))
        return cls(n, classes, math.factorial(n))


@dataclass(frozen=True)
class EulerFactorValue:
    value: Fraction
    p: int
    cycle_type: CycleType


@dataclass(frozen=True)
class TruncatedEstimate:
    value: float
    truncation_height: float
    heuristic_error: float
    ramified_primes_used: tuple[int, ...] = ()
    d: int = 0
    log_value: float = 0.0
    index_warnings: tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "log_value": self.log_value,
            "truncation_height": self.truncation_height,
            "heuristic_error": self.heuristic_error,
            "d": self.d,
            "ramified_primes_used": list(self.ramified_primes_used),
            "index_warnings": list(self.index_warnings),
        }


def _check_type(c: CycleType) -> int:
    n = c.n
    if n not in (2, 3, 4, 5):
        raise ValueError(f"cycle type {c} must partition n in 2..5")
    return n


def a_rho(c: CycleType) -> int:
    """Character of the standard representation: fixed points minus one."""
    _check_type(c)
    return c.fixed_points - 1


def a_rho_power(degrees: Sequence[int], k: int) -> int:
    """a_rho(p^k) = sum of alpha_i^k for the roots attached to these factor degrees.

    The alpha_i are the roots of prod_j (1 - X^d_j) / (1 - X), so the k-th power
    sum is the number of d_j-th roots of unity with d_j | k, minus one.
    """
    return sum(d for d in degrees if k % d == 0) - 1


def orthogonality_check(n: int) -> int:
    """sum_C |C| a_rho(C); zero for a nontrivial irreducible character."""
    g = StandardRepGroup.of(n)
    return sum(size * a_rho(c) for c, size in g.classes)


def zeta_local_factor(degrees: Sequence[int], p: int) -> Fraction:
    if not degrees:
        raise ValueError("degrees must be nonempty")
    out = Fraction(1)
    for d in degrees:
        q = p**d
        out *= Fraction(q, q - 1)
    return out


def l_rho_local_factor(c: CycleType, p: int) -> EulerFactorValue:
    _check_type(c)
    return EulerFactorValue(Fraction(p - 1, p) * zeta_local_factor(c.parts, p), p, c)


def factor_bounds(p: int, d: int) -> tuple[Fraction, Fraction]:
    """(lower, upper) envelope of every local factor for S_{d+1}."""
    if d < 1:
        raise ValueError("d must be >= 1")
    lower = Fraction(p - 1, p) * Fraction(p ** (d + 1), p ** (d + 1) - 1)
    upper = Fraction(p, p - 1) ** d
    return lower, upper


def _log_factor(p: int, degrees: Sequence[int]) -> float:
    return math.log1p(-1.0 / p) - sum(math.log1p(-(float(p) ** -d)) for d in degrees)


def log_envelopes(primes: Sequence[int], d: int) -> tuple[float, float]:
    """Logs of prod lower and prod upper over the given primes."""
    lo = math.fsum(math.log1p(-1.0 / p) - math.log1p(-(float(p) ** -(d + 1))) for p in primes)
    hi = math.fsum(-d * math.log1p(-1.0 / p) for p in primes)
    return lo, hi


# ---------------------------------------------------------------------------
# Frobenius data for a polynomial

FieldLike = Union["NumberFieldRecord", IntPolynomial]


def _unpack(field: FieldLike) -> tuple[IntPolynomial, int, tuple[int, ...]]:
    if isinstance(field, IntPolynomial):
        return field, poly_discriminant(field), ()
    return field.poly, field.poly_disc, tuple(field.index_warning_primes)


@functools.lru_cache(maxsize=512)
def _frobenius_cached(poly: IntPolynomial, disc: int, limit: int) -> tuple[FactorizationModP, ...]:
    return tuple(frobenius_batch(poly, primes_up_to(limit), disc))


def frobenius_table(field: FieldLike, x: float) -> tuple[FactorizationModP, ...]:
    """Factorization data for every prime p < x."""
    poly, disc, _ = _unpack(field)
    limit = math.ceil(x) - 1
    # cache on a rounded-up limit so repeated heights share work
    cap = max(64, 1 << max(limit, 1).bit_length())
    table = _frobenius_cached(poly, disc, cap)
    return tuple(t for t in table if t.p < x)


def default_height(abs_disc: int, eps: float = 0.5) -> float:
    """(log |D|)^(2 + eps), floored at 10."""
    return max(10.0, math.log(abs_disc) ** (2 + eps))


def _resolve_height(field: FieldLike, x: float | str | None) -> float:
    if x is None or x == "auto":
        disc = field.disc if not isinstance(field, IntPolynomial) else poly_discriminant(field)
        return default_height(abs(disc))
    x = float(x)
    if x < 10:
        raise ValueError(f"truncation height must be >= 10, got {x}")
    return x


def _index_hits(ramified: Sequence[int], warned: Sequence[int]) -> tuple[int, ...]:
    hits = tuple(p for p in ramified if p in set(warned))
    if hits:
        warnings.warn(f"ramified primes {hits} may divide the polynomial index", IndexWarning, stacklevel=3)
    return hits


def truncated_product_L1(field: FieldLike, x: float | str | None = None) -> TruncatedEstimate:
    """prod_{p < x} of the local factors at the Frobenius cycle types."""
    poly, _, warned = _unpack(field)
    x = _resolve_height(field, x)
    d = poly.degree - 1
    table = frobenius_table(field, x)
    logs = [_log_factor(t.p, t.degrees) for t in table]
    total = math.fsum(logs)
    ramified = tuple(t.p for t in table if t.ramified)
    return TruncatedEstimate(
        value=math.exp(total),
        truncation_height=x,
        heuristic_error=2 * d / math.log(x),
        ramified_primes_used=ramified,
        d=d,
        log_value=total,
        index_warnings=_index_hits(ramified, warned),
    )


def log_sum_L1(field: FieldLike, x: float | str | None = None) -> TruncatedEstimate:
    """exp of sum_{p^k < x} a_rho(p^k) / (k p^k)."""
    poly, _, warned = _unpack(field)
    x = _resolve_height(field, x)
    d = poly.degree - 1
    terms = []
    for t in frobenius_table(field, x):
        pk, k = t.p, 1
        while pk < x:
            a = a_rho_power(t.degrees, k)
            if a:
                terms.append(a / (k * pk))
            pk *= t.p
            k += 1
    total = math.fsum(terms)
    ramified = tuple(t.p for t in frobenius_table(field, x) if t.ramified)
    return TruncatedEstimate(
        value=math.exp(total),
        truncation_height=x,
        heuristic_error=2 * d / math.log(x),
        ramified_primes_used=ramified,
        d=d,
        log_value=total,
        index_warnings=_index_hits(ramified, warned),
    )


# ---------------------------------------------------------------------------
# Mertens products and extreme-value targets


def mertens_product(y: float, exact: bool = False) -> float | Fraction:
    """prod_{p <= y} (1 - 1/p)^-1.

    The float result is exp of an exactly rounded sum of logs (error well below
    2^-50 relative).  `exact=True` returns the rational product and is only
    sensible for small y.
    """
    ps = primes_up_to(y)
    if exact:
        out = Fraction(1)
        for p in ps:
            out *= Fraction(p, p - 1)
        return out
    return math.exp(-math.fsum(math.log1p(-1.0 / p) for p in ps))


def _loglog(abs_disc: float) -> float:
    if abs_disc <= math.e:
        raise ValueError(f"log log |D| undefined for |D| = {abs_disc}")
    return math.log(math.log(abs_disc))


def grh_window(d: int, abs_disc: float) -> tuple[float, float]:
    """Main terms of the conditional lower and upper bounds; o(1) terms dropped."""
    if abs_disc < 16:
        raise ValueError("grh_window needs |D| >= 16")
    t = math.exp(euler_gamma()) * _loglog(abs_disc)
    return zeta_value(d + 1) / (2 * t), 2**d * t**d


def predicted_target(d: int, kind: str, abs_disc: float | None = None) -> float:
    """Extreme/bounded residue targets, main term only."""
    if d not in (2, 3, 4):
        raise ValueError(f"d must be 2, 3 or 4, got {d}")
    if kind == "bounded":
        if d % 2 == 0:
            return zeta_value(2) ** (d // 2)
        return zeta_value(2) ** ((d - 3) // 2) * zeta_value(3)
    if abs_disc is None:
        raise ValueError(f"kind {kind!r} needs abs_disc")
    t = math.exp(euler_gamma()) * _loglog(abs_disc)
    if kind == "max":
        return t**d
    if kind == "min":
        return zeta_value(d + 1) / t
    raise ValueError(f"unknown target kind {kind!r}")


def bounded_class(d: int) -> CycleType:
    """The class whose Frobenius condition gives a bounded residue."""
    if d % 2 == 0:
        return CycleType((2,) * (d // 2) + (1,))
    return CycleType((2,) * ((d - 3) // 2) + (3, 1))
