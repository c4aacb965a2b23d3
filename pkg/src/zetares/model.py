"""Chebotarev random model: independent Frobenius classes per prime.

A draw at prime p lands in class C with probability |C| / (n! (1 + f(p))) and is
ramified with probability f(p) / (1 + f(p)).  Draws come from a counter-based
hash of (seed, sample index, p), so any single assignment can be recomputed
without replaying the ones before it and results do not depend on how the work
is split up.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

import numpy as np
from numba import config as _numba_config
from numba import njit, prange

from .arith import CycleType, partitions, primes_between
from .artin import TruncatedEstimate, a_rho, _log_factor
from .catalog import Ramified

__all__ = [
    "ChebotarevDistribution",
    "ModelSample",
    "sample_frobenius_sequence",
    "model_L1",
    "model_moment",
    "MomentSample",
    "model_sums",
    "model_sums_many",
    "moments_from_sums",
    "inverse_p",
    "uniform01",
]

# the bundled TBB is too old for numba; the workqueue layer is always available
if _numba_config.THREADING_LAYER == "default":
    _numba_config.THREADING_LAYER = "workqueue"

# a ramified draw behaves like a totally ramified prime: local factor 1, a_rho = 0
MODEL_RAMIFIED = Ramified((1,))

def no_deformation(p: int) -> float:
    return 0.0


def inverse_p(p: int) -> float:
    """The f(p) = 1/p deformation."""
    return 1.0 / p


@dataclass(frozen=True)
class ChebotarevDistribution:
    n: int
    f_deform: Callable[[int], float] = no_deformation
    classes: tuple[CycleType, ...] = field(init=False)
    sizes: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        if self.n not in (2, 3, 4, 5):
            raise ValueError(f"n must be in 2..5, got {self.n}")
        cl = tuple(partitions(self.n))
        object.__setattr__(self, "classes", cl)
        object.__setattr__(self, "sizes", tuple(c.class_size() for c in cl))

    @property
    def d(self) -> int:
        return self.n - 1

    @property
    def order(self) -> int:
        return math.factorial(self.n)

    def weights(self, p: int) -> dict[CycleType, float]:
        f = self.f_deform(p)
        if f < 0:
            raise ValueError(f"f({p}) = {f} is negative")
        return {c: s / (self.order * (1 + f)) for c, s in zip(self.classes, self.sizes)}

    def exact_weights(self) -> dict[CycleType, Fraction]:
        """Undeformed weights |C| / n! as exact rationals."""
        return {c: Fraction(s, self.order) for c, s in zip(self.classes, self.sizes)}

    def ramified_weight(self, p: int) -> float:
        f = self.f_deform(p)
        return f / (1 + f)

    def thresholds(self, primes: Sequence[int]) -> np.ndarray:
        """Cumulative class probabilities per prime, shape (P, K); ramified past the last."""
        primes = np.asarray(primes, dtype=np.int64)
        base = np.cumsum(np.array(self.sizes, dtype=np.float64)) / self.order
        if self.f_deform is no_deformation:
            out = np.broadcast_to(base, (len(primes), len(base))).copy()
            out[:, -1] = 1.0
            return out
        scale = np.array([1.0 / (1.0 + self.f_deform(int(p))) for p in primes])
        return base[None, :] * scale[:, None]

    def a_values(self) -> np.ndarray:
        return np.array([a_rho(c) for c in self.classes], dtype=np.float64)


@dataclass(frozen=True)
class ModelSample:
    seed: int
    assignments: Mapping[int, CycleType | Ramified]
    sample_index: int = 0


# ---------------------------------------------------------------------------
# counter-based uniforms


@njit(cache=True, inline="always")
def _mix(z):
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


@njit(cache=True, inline="always")
def _bits53(key, sample, p):
    z = np.uint64(key) + np.uint64(p) * np.uint64(0x9E3779B97F4A7C15) + np.uint64(sample) * np.uint64(0xD1B54A32D192ED03)
    return np.int64(_mix(z) >> np.uint64(11))


@njit(cache=True, inline="always")
def _u01(key, sample, p):
    return np.float64(_bits53(key, sample, p)) * (1.0 / 9007199254740992.0)


@njit(cache=True)
def _u01_array(key, sample, primes):
    out = np.empty(primes.shape[0], dtype=np.float64)
    for k in range(primes.shape[0]):
        out[k] = _u01(key, sample, primes[k])
    return out


def _key(seed: int) -> np.uint64:
    # splitmix64 finalizer in plain integers
    z = seed & 0xFFFFFFFFFFFFFFFF
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return np.uint64(z ^ (z >> 31))


def uniform01(seed: int, sample: int, primes: Sequence[int]) -> np.ndarray:
    """The model's uniform draw for each prime; pure function of (seed, sample, p)."""
    return _u01_array(_key(seed), np.int64(sample), np.asarray(primes, dtype=np.int64))


@njit(cache=True)
def _bits_array(key, sample, primes):
    out = np.empty(primes.shape[0], dtype=np.int64)
    for k in range(primes.shape[0]):
        out[k] = _bits53(key, sample, primes[k])
    return out


def _int_thresholds(dist: "ChebotarevDistribution", primes: Sequence[int]) -> np.ndarray:
    if dist.f_deform is no_deformation:
        # exact ceil(q 2^53 / n!) so that u >= T  <=>  (u n!) >> 53 >= q
        cum = np.cumsum(dist.sizes).tolist()
        row = [-(-q * 2**53 // dist.order) for q in cum]
        return np.ascontiguousarray(np.broadcast_to(np.array(row, dtype=np.int64), (len(primes), len(row))))
    return np.ascontiguousarray(np.ceil(dist.thresholds(primes) * 2.0**53).astype(np.int64))


def _a_table(dist: "ChebotarevDistribution") -> np.ndarray:
    """a_rho of the class hit by every value of (u n!) >> 53, for undeformed draws."""
    cum = np.cumsum(dist.sizes)
    idx = np.searchsorted(cum, np.arange(dist.order), side="right")
    return dist.a_values()[idx]


def _classify(bits: np.ndarray, thresholds: np.ndarray) -> np.ndarray:
    # number of cut points at or below the draw; K means ramified
    return (bits[:, None] >= thresholds).sum(axis=1)


def sample_frobenius_sequence(
    dist: ChebotarevDistribution, primes: Sequence[int], seed: int, sample: int = 0
) -> ModelSample:
    primes = [int(p) for p in primes]
    bits = _bits_array(_key(seed), np.int64(sample), np.asarray(primes, dtype=np.int64))
    idx = _classify(bits, _int_thresholds(dist, primes))
    assign = {p: (dist.classes[i] if i < len(dist.classes) else MODEL_RAMIFIED) for p, i in zip(primes, idx.tolist())}
    return ModelSample(seed, assign, sample)


def model_L1(
    dist: ChebotarevDistribution,
    x: float,
    seed: int = 0,
    forced: CycleType | Mapping[int, CycleType | Ramified] | None = None,
    sample: int = 0,
) -> TruncatedEstimate:
    """Truncated Euler product over p < x at sampled (or forced) classes."""
    if x < 10:
        raise ValueError(f"truncation height must be >= 10, got {x}")
    primes = primes_between(1, x).tolist()
    if isinstance(forced, CycleType):
        assign = {p: forced for p in primes}
    else:
        assign = dict(sample_frobenius_sequence(dist, primes, seed, sample).assignments)
        if forced:
            assign.update(forced)
    logs = []
    ram = []
    for p in primes:
        c = assign[p]
        if isinstance(c, Ramified):
            ram.append(p)
            logs.append(_log_factor(p, c.degrees))
        else:
            logs.append(_log_factor(p, c.parts))
    total = math.fsum(logs)
    return TruncatedEstimate(
        value=math.exp(total),
        truncation_height=float(x),
        heuristic_error=2 * dist.d / math.log(x),
        ramified_primes_used=tuple(ram),
        d=dist.d,
        log_value=total,
    )


# ---------------------------------------------------------------------------
# moments of sum_{y < p < x} a_rho(p) / p


@njit(cache=True, parallel=True)
def _sums_kernel(key, primes, inv_p, thresholds, avals, start, count, out):
    # thresholds are integer cut points on 53-bit draws; the class index is
    # counted without branches because the comparisons are unpredictable
    P = primes.shape[0]
    K = thresholds.shape[1]
    for s in prange(count):
        sample = start + s
        acc = 0.0
        for k in range(P):
            u = _bits53(key, sample, primes[k])
            c = 0
            for j in range(K):
                c += u >= thresholds[k, j]
            acc += avals[c] * inv_p[k]
        out[s] = acc


@njit(cache=True, parallel=True)
def _sums_kernel_table(key, primes, inv_p, order, atab, start, count, out):
    # undeformed draws: the class is a table lookup on (u n!) >> 53
    P = primes.shape[0]
    o = np.uint64(order)
    for s in prange(count):
        sample = start + s
        acc = 0.0
        for k in range(P):
            u = np.uint64(_bits53(key, sample, primes[k]))
            acc += atab[(u * o) >> np.uint64(53)] * inv_p[k]
        out[s] = acc


def model_sums(
    dist: ChebotarevDistribution, y: float, x: float, sample_count: int, seed: int = 0, start: int = 0
) -> np.ndarray:
    """Sum_{y < p < x} a_rho(p)/p for samples start .. start + sample_count - 1."""
    primes = primes_between(y, x)
    out = np.zeros(sample_count, dtype=np.float64)
    if len(primes) == 0:
        return out
    avals = np.append(dist.a_values(), 0.0)  # trailing slot: ramified, a_rho = 0
    inv_p = 1.0 / primes.astype(np.float64)
    if dist.f_deform is no_deformation:
        _sums_kernel_table(_key(seed), primes, inv_p, dist.order, _a_table(dist), start, sample_count, out)
    else:
        thr = _int_thresholds(dist, primes)
        _sums_kernel(_key(seed), primes, inv_p, thr, avals, start, sample_count, out)
    return out


@njit(cache=True, parallel=True)
def _sums_kernel_many(key, primes, inv_p, orders, atabs, start, count, out):
    # several undeformed distributions on one stream of draws
    P = primes.shape[0]
    D = orders.shape[0]
    for s in prange(count):
        sample = start + s
        acc = np.zeros(D)
        for k in range(P):
            u = np.uint64(_bits53(key, sample, primes[k]))
            w = inv_p[k]
            for d in range(D):
                acc[d] += atabs[d, (u * np.uint64(orders[d])) >> np.uint64(53)] * w
        for d in range(D):
            out[d, s] = acc[d]


def model_sums_many(
    dists: Sequence[ChebotarevDistribution], y: float, x: float, sample_count: int, seed: int = 0, start: int = 0
) -> np.ndarray:
    """model_sums for several distributions at once, shape (len(dists), sample_count).

    Row i equals model_sums(dists[i], ...) exactly; the draws are shared, which
    the counter-based generator guarantees anyway.
    """
    if any(d.f_deform is not no_deformation for d in dists):
        return np.array([model_sums(d, y, x, sample_count, seed, start) for d in dists])
    primes = primes_between(y, x)
    out = np.zeros((len(dists), sample_count), dtype=np.float64)
    if len(primes) == 0 or not dists:
        return out
    width = max(d.order for d in dists)
    atabs = np.zeros((len(dists), width), dtype=np.float64)
    for i, d in enumerate(dists):
        atabs[i, : d.order] = _a_table(d)
    orders = np.array([d.order for d in dists], dtype=np.int64)
    _sums_kernel_many(_key(seed), primes, 1.0 / primes.astype(np.float64), orders, atabs, start, sample_count, out)
    return out


def _pairwise_mean(v: np.ndarray) -> float:
    # numpy's contiguous float64 sum is pairwise with a fixed blocking
    return float(np.sum(v) / len(v)) if len(v) else 0.0


@dataclass(frozen=True)
class MomentSample:
    mean: float
    stderr: float
    sample_count: int
    r: int


def moments_from_sums(sums: np.ndarray, r: int) -> MomentSample:
    v = np.ascontiguousarray(sums ** (2 * r))
    m = _pairwise_mean(v)
    sd = float(np.sqrt(_pairwise_mean(np.ascontiguousarray((v - m) ** 2)))) if len(v) > 1 else 0.0
    return MomentSample(m, sd / math.sqrt(max(len(v), 1)), len(v), r)


def model_moment(
    dist: ChebotarevDistribution, y: float, x: float, r: int, sample_count: int = 1000, seed: int = 0
) -> float:
    """Empirical mean of (sum_{y<p<x} a_rho(p)/p)^(2r) over model samples."""
    if not 0 <= r <= 8:
        raise ValueError(f"r must be in [0, 8], got {r}")
    if sample_count < 1000:
        raise ValueError("sample_count must be >= 1000")
    if y >= x:
        return 0.0 if r > 0 else 1.0
    return moments_from_sums(model_sums(dist, y, x, sample_count, seed), r).mean
