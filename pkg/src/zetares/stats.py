"""Family-level statistics: residue scans, Chebotarev densities, moment bounds,
and the combinatorial inequalities behind the moment bound.
"""

from __future__ import annotations

import dataclasses
import functools
import itertools
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

import mpmath
import numpy as np

from .arith import CycleType, primes_between
from .artin import (
    a_rho_power,
    frobenius_table,
    log_envelopes,
    predicted_target,
    truncated_product_L1,
)
from .catalog import NumberFieldRecord, Ramified, frobenius_classes
from .model import ChebotarevDistribution, ModelSample, model_sums, moments_from_sums

log = logging.getLogger(__name__)

DENSITY_SIGMA = 4.0
HISTOGRAM_BINS = 64
LOW_POWER_SIZE = 30


@dataclass(frozen=True)
class CountingConstants:
    """Constants of the counting and zero-density inputs.

    They carry no computational content here; c1 (y = c1 log X) and c_prime
    (exceptional-set exponent) are the only ones any routine reads.
    """

    alpha: float = 0.75  # zero-free abscissa
    beta: float = 2.5  # height exponent, x = (log N)^beta
    B: float = 1.0
    delta: float = 0.5
    kappa: float = 1.0
    c_prime: float = 1.0
    c1: float = 1.0
    c2: float = 0.01


# ---------------------------------------------------------------------------
# residue scans


@dataclass
class ScanReport:
    rows: list[dict]
    d: int
    x: float | str
    max_row: int
    min_row: int
    histogram_edges: list[float]
    histogram_counts: list[int]
    index_warned: int
    envelope_violations: int

    def to_dict(self) -> dict:
        return asdict(self)


def _targets(d: int, abs_disc: int) -> tuple[float | None, float | None]:
    if abs_disc <= math.e or d not in (2, 3, 4):
        return None, None
    return predicted_target(d, "max", abs_disc), predicted_target(d, "min", abs_disc)


def _scan_one(args) -> dict:
    rec, x = args
    est = truncated_product_L1(rec, x)
    table = frobenius_table(rec, est.truncation_height)
    lo, hi = log_envelopes([t.p for t in table], est.d)
    mx, mn = _targets(est.d, abs(rec.disc))
    return {
        "poly": list(rec.poly.coefficients),
        "disc": rec.disc,
        "signature": list(rec.signature),
        "x": est.truncation_height,
        "estimate": est.value,
        "heuristic_error": est.heuristic_error,
        "ratio_to_max_target": est.value / mx if mx else None,
        "ratio_to_min_target": est.value / mn if mn else None,
        "log_lower_envelope": lo,
        "log_upper_envelope": hi,
        "in_envelope": lo - 1e-12 <= est.log_value <= hi + 1e-12,
        "index_warned": bool(est.index_warnings),
    }


def scan_residues(catalog: Sequence[NumberFieldRecord], x: float | str | None = "auto", workers: int = 1) -> ScanReport:
    """Truncated L(1, rho) for every record, with ratios to the extreme-value targets."""
    if not catalog:
        raise ValueError("empty family")
    degrees = {r.degree for r in catalog}
    if len(degrees) != 1:
        raise ValueError(f"mixed degrees in family: {sorted(degrees)}")
    jobs = [(r, x) for r in catalog]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            rows = list(ex.map(_scan_one, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        rows = [_scan_one(j) for j in jobs]
    est = np.array([r["estimate"] for r in rows])
    lo = min(r["log_lower_envelope"] for r in rows)
    hi = max(r["log_upper_envelope"] for r in rows)
    edges = np.exp(np.linspace(lo, hi, HISTOGRAM_BINS + 1)) if hi > lo else np.array([math.exp(lo), math.exp(hi)])
    counts, _ = np.histogram(np.clip(est, edges[0], edges[-1]), bins=edges)
    return ScanReport(
        rows=rows,
        d=next(iter(degrees)) - 1,
        x=x,
        max_row=int(np.argmax(est)),
        min_row=int(np.argmin(est)),
        histogram_edges=edges.tolist(),
        histogram_counts=counts.tolist(),
        index_warned=sum(r["index_warned"] for r in rows),
        envelope_violations=sum(not r["in_envelope"] for r in rows),
    )


# ---------------------------------------------------------------------------
# Chebotarev densities


@dataclass
class DensityReport:
    p: int
    n: int
    unramified: int
    ramified_excluded: int
    classes: list[dict]
    sigma_threshold: float
    passed: bool

    def to_dict(self) -> dict:
        return asdict(self)


def chebotarev_densities(
    catalog: Sequence[NumberFieldRecord], p: int, sigma: float = DENSITY_SIGMA, min_unramified: int = 30
) -> DensityReport:
    """Empirical Frobenius-class frequencies at p against |C| / n!."""
    degrees = {r.degree for r in catalog}
    if len(degrees) != 1:
        raise ValueError(f"need a single degree, got {sorted(degrees)}")
    n = degrees.pop()
    dist = ChebotarevDistribution(n)
    observed = [row[0] for row in frobenius_classes(catalog, [p])]
    unram = [c for c in observed if not isinstance(c, Ramified)]
    N = len(unram)
    if N < min_unramified:
        raise ValueError(f"only {N} records unramified at {p}; need {min_unramified}")
    rows = []
    ok = True
    for c, q in dist.exact_weights().items():
        k = sum(1 for u in unram if u == c)
        freq = k / N
        sd = math.sqrt(float(q) * (1 - float(q)) / N)
        z = (freq - float(q)) / sd if sd else 0.0
        within = abs(z) <= sigma
        ok &= within
        rows.append({"class": str(c), "count": k, "frequency": freq, "expected": float(q), "sigma": sd, "z": z, "within": within})
    return DensityReport(p, n, N, len(observed) - N, rows, sigma, ok)


# ---------------------------------------------------------------------------
# sums over y < p < x and their moments


def small_prime_sum(source: NumberFieldRecord | ModelSample, y: float, x: float) -> float:
    """sum_{y < p < x} a_rho(p) / p.

    Ramified primes of a field contribute the trace over the roots attached to
    the surviving squarefree-part degrees.  A model sample must cover every
    prime in the range.
    """
    if y >= x:
        return 0.0
    if isinstance(source, ModelSample):
        terms = []
        for p in primes_between(y, x).tolist():
            c = source.assignments[p]
            degs = c.degrees if isinstance(c, Ramified) else c.parts
            terms.append(a_rho_power(degs, 1) / p)
        return math.fsum(terms)
    table = frobenius_table(source, x)
    return math.fsum(a_rho_power(t.degrees, 1) / t.p for t in table if t.p > y)


def moment_bound_rhs(d: int, r: int, y: float) -> float:
    """2^(2r-1) d^(2r) (2r)!/r! 2^(2r) / (y log y)^r."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if y < 3:
        raise ValueError("y must be >= 3")
    const = Fraction(2 ** (2 * r - 1) * d ** (2 * r) * math.factorial(2 * r) * 2 ** (2 * r), math.factorial(r))
    return float(mpmath.mpf(const.numerator) / const.denominator / (mpmath.mpf(y) * mpmath.log(y)) ** r)


@dataclass
class MomentReport:
    source: str
    d: int
    y: float
    x: float
    r: int
    statistic: float
    bound: float | None
    passed: bool | None
    slack: float | None
    sample_count: int
    stderr: float | None = None
    diagonal: float | None = None
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


def empirical_moment(
    source: Sequence[NumberFieldRecord] | ChebotarevDistribution,
    y: float,
    x: float,
    r: int,
    sample_count: int = 1000,
    seed: int = 0,
) -> MomentReport:
    """Mean of (sum_{y<p<x} a_rho(p)/p)^(2r) over a family or model samples, against the bound."""
    if not 0 <= r <= 8:
        raise ValueError(f"r must be in [0, 8], got {r}")
    notes: list[str] = []
    if isinstance(source, ChebotarevDistribution):
        d = source.d
        sums = model_sums(source, y, x, sample_count, seed)
        label = f"model(n={source.n})"
    else:
        if not source:
            raise ValueError("empty family")
        d = source[0].d
        sums = np.array([small_prime_sum(rec, y, x) for rec in source])
        label = "catalog"
        if len(source) < LOW_POWER_SIZE:
            notes.append(f"low power: family of {len(source)} < {LOW_POWER_SIZE}")
    return moment_report(label, d, y, x, r, sums, notes)


def moment_report(label: str, d: int, y: float, x: float, r: int, sums: np.ndarray, notes: Sequence[str] = ()) -> MomentReport:
    """Moment statistic of precomputed small-prime sums against the bound.

    For r = 1 the diagonal prediction sum_{y<p<x} 1/p^2 is attached.
    """
    notes = list(notes)
    if r == 0:
        notes.append("r = 0: statistic is identically 1, bound not applicable")
        return MomentReport(label, d, y, x, 0, 1.0, None, None, None, len(sums), notes=notes)
    ms = moments_from_sums(sums, r)
    bound = moment_bound_rhs(d, r, y)
    diag = None
    if r == 1:
        ps = primes_between(y, x).astype(np.float64)
        diag = math.fsum((1.0 / ps**2).tolist())
    slack = bound / ms.mean if ms.mean > 0 else math.inf
    return MomentReport(label, d, y, x, r, ms.mean, bound, ms.mean <= bound, slack, ms.sample_count, ms.stderr, diag, notes)


# ---------------------------------------------------------------------------
# combinatorial inequalities


@dataclass
class InequalityReport:
    parts: tuple[int, ...]
    y: float
    r: int
    u: int
    m: int
    lhs: float
    rhs: float
    holds: bool | None
    applicable: bool
    reason: str = ""

    def _replace_parts(self, parts: tuple[int, ...]) -> "InequalityReport":
        return dataclasses.replace(self, parts=parts)


def compositions(total: int) -> Iterator[tuple[int, ...]]:
    """All ordered compositions of total into positive parts (2^(total-1) of them)."""
    for cuts in itertools.product((0, 1), repeat=total - 1):
        parts, run = [], 1
        for c in cuts:
            if c:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        yield tuple(parts)


def _inverse_factorials(parts: Sequence[int]) -> Fraction:
    out = Fraction(1)
    for k in parts:
        out /= math.factorial(k)
    return out


def _mp(q: Fraction) -> mpmath.mpf:
    return mpmath.mpf(q.numerator) / q.denominator


def _precheck(parts: Sequence[int], y: float) -> tuple[int, str]:
    total = sum(parts)
    if total % 2:
        return 0, f"parts sum to {total}, which is odd"
    r = total // 2
    if y < 3:
        return r, "y must be >= 3"
    if r > y / math.log(y):
        return r, f"r = {r} exceeds y / log y = {y / math.log(y):.3f}"
    return r, ""


def composition_inequality_check(parts: Sequence[int], y: float) -> InequalityReport:
    """r! / (u! prod r_i!) <= (y / log y)^(r - u) for compositions with every part >= 2."""
    return _composition_cached(tuple(sorted(parts)), float(y))._replace_parts(tuple(parts))


@functools.lru_cache(maxsize=4096)
def _composition_cached(parts: tuple[int, ...], y: float) -> "InequalityReport":
    # both sides depend only on the multiset of parts
    u = len(parts)
    r, reason = _precheck(parts, y)
    if not reason and min(parts) < 2:
        reason = "every part must be >= 2"
    if reason:
        return InequalityReport(parts, y, r, u, parts.count(1), math.nan, math.nan, None, False, reason)
    with mpmath.workdps(40):
        lhs = _mp(Fraction(math.factorial(r), math.factorial(u)) * _inverse_factorials(parts))
        rhs = (mpmath.mpf(y) / mpmath.log(y)) ** (r - u)
        holds = bool(lhs <= rhs)
    return InequalityReport(parts, y, r, u, 0, float(lhs), float(rhs), holds, True)


def lemma44_check(parts: Sequence[int], y: float) -> InequalityReport:
    """(1/u!) (1/prod r_i!) y^(u-m-r) (log y)^(r-u) <= 1/r!, with m the number of parts equal to 1."""
    return _lemma44_cached(tuple(sorted(parts)), float(y))._replace_parts(tuple(parts))


@functools.lru_cache(maxsize=4096)
def _lemma44_cached(parts: tuple[int, ...], y: float) -> "InequalityReport":
    u = len(parts)
    m = parts.count(1)
    r, reason = _precheck(parts, y)
    if reason:
        return InequalityReport(parts, y, r, u, m, math.nan, math.nan, None, False, reason)
    with mpmath.workdps(40):
        coef = _mp(Fraction(1, math.factorial(u)) * _inverse_factorials(parts))
        lhs = coef * mpmath.mpf(y) ** (u - m - r) * mpmath.log(y) ** (r - u)
        rhs = mpmath.mpf(1) / math.factorial(r)
        holds = bool(lhs <= rhs)
    return InequalityReport(parts, y, r, u, m, float(lhs), float(rhs), holds, True)


@dataclass
class SweepReport:
    max_2r: int
    ys: list[float]
    enumerated: int
    lemma_passed: int
    lemma_failed: list[tuple]
    composition_applicable: int
    composition_passed: int
    composition_failed: list[tuple]

    @property
    def passed(self) -> bool:
        return not self.lemma_failed and not self.composition_failed and self.lemma_passed == self.enumerated

    def to_dict(self) -> dict:
        out = asdict(self)
        out["passed"] = self.passed
        return out


def inequality_sweep(max_2r: int = 16, ys: Sequence[float] = (1e3, 1e4)) -> SweepReport:
    """Every composition of 2r <= max_2r, at every y, through both checks."""
    enumerated = lemma_ok = comp_app = comp_ok = 0
    lemma_bad: list[tuple] = []
    comp_bad: list[tuple] = []
    for y in ys:
        for two_r in range(2, max_2r + 1, 2):
            for parts in compositions(two_r):
                enumerated += 1
                rep = lemma44_check(parts, y)
                if rep.holds:
                    lemma_ok += 1
                else:
                    lemma_bad.append((y, parts, rep.reason))
                if min(parts) >= 2:
                    comp_app += 1
                    rep = composition_inequality_check(parts, y)
                    if rep.holds:
                        comp_ok += 1
                    else:
                        comp_bad.append((y, parts, rep.reason))
    return SweepReport(max_2r, list(ys), enumerated, lemma_ok, lemma_bad, comp_app, comp_ok, comp_bad)


# ---------------------------------------------------------------------------
# family-size budgets


def exceptional_budget(X: float, c_prime: float = 1.0, n: int = 3, A: float = 1.0, c1: float = 1.0) -> dict:
    """Exceptional-set budget X exp(-c' log X / loglog X * logloglog X) against
    the conditioned-family main terms A X / log y exp(-log(n!/|C|) log X / loglog X).
    """
    if X < 100:
        raise ValueError("X must be >= 100")
    if c_prime <= 0:
        raise ValueError("c_prime must be positive")
    lx = math.log(X)
    llx = math.log(lx)
    budget = X * math.exp(-c_prime * lx / llx * math.log(llx))
    y = c1 * lx
    order = math.factorial(n)
    main = {}
    for name, c in (("identity", CycleType((1,) * n)), ("n-cycle", CycleType((n,)))):
        main[name] = A * X / math.log(y) * math.exp(-math.log(order / c.class_size()) * lx / llx)
    return {
        "X": X,
        "c_prime": c_prime,
        "n": n,
        "A": A,
        "y": y,
        "budget": budget,
        "main_terms": main,
        "dominant": {k: ("main" if v > budget else "budget") for k, v in main.items()},
    }
