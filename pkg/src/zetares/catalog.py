"""Number-field catalogs: CSV ingestion, cubic enumeration, Frobenius classes, local-condition filters."""

from __future__ import annotations

import csv
import io
import logging
import math
from dataclasses import dataclass
from typing import IO, Iterable, Mapping, Sequence

import numpy as np

from . import _fastfactor
from .arith import (
    CycleType,
    IntPolynomial,
    factor_degrees_mod_p,
    prime_array,
    poly_discriminant,
    primes_up_to,
    real_root_count,
)

log = logging.getLogger(__name__)

__all__ = [
    "NumberFieldRecord",
    "Ramified",
    "LocalCondition",
    "GaloisEvidence",
    "load_catalog",
    "write_catalog",
    "make_record",
    "enumerate_cubics",
    "galois_heuristic_is_sn",
    "frobenius_class",
    "frobenius_classes",
    "filter_by_conditions",
]

GROUP_TAGS = ("Sn-verified-input", "Sn-heuristic", "unknown")


@dataclass(frozen=True)
class NumberFieldRecord:
    poly: IntPolynomial
    disc: int
    disc_is_field_disc: bool
    signature: tuple[int, int]
    group_tag: str = "unknown"
    index_warning_primes: tuple[int, ...] = ()
    poly_disc: int = 0
    group_label: str = ""
    galois_evidence: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        if self.disc == 0:
            raise ValueError("discriminant must be nonzero")
        r1, r2 = self.signature
        if r1 + 2 * r2 != self.poly.degree:
            raise ValueError(f"signature {self.signature} inconsistent with degree {self.poly.degree}")
        if self.group_tag not in GROUP_TAGS:
            raise ValueError(f"unknown group tag {self.group_tag!r}")
        if self.poly_disc == 0:
            object.__setattr__(self, "poly_disc", poly_discriminant(self.poly))

    @property
    def degree(self) -> int:
        return self.poly.degree

    @property
    def d(self) -> int:
        return self.poly.degree - 1

    def to_dict(self) -> dict:
        return {
            "poly": list(self.poly.coefficients),
            "disc": self.disc,
            "disc_is_field_disc": self.disc_is_field_disc,
            "signature": list(self.signature),
            "group_tag": self.group_tag,
            "index_warning_primes": list(self.index_warning_primes),
            "poly_disc": self.poly_disc,
            "group_label": self.group_label,
            "galois_evidence": dict(self.galois_evidence),
        }


def _index_candidates(poly_disc: int, disc: int | None = None) -> tuple[int, ...]:
    """Primes whose square divides poly_disc / disc (or poly_disc itself)."""
    m = abs(poly_disc) if disc is None else abs(poly_disc // disc)
    out = []
    for p in primes_up_to(math.isqrt(m)):
        if m % (p * p) == 0:
            out.append(p)
    return tuple(out)


def make_record(
    poly: IntPolynomial,
    disc: int | None = None,
    disc_is_field_disc: bool = False,
    group_label: str = "",
    group_tag: str | None = None,
) -> NumberFieldRecord:
    """Build a validated record; signature and polynomial discriminant are computed."""
    pd = poly_discriminant(poly)
    if pd == 0:
        raise ValueError(f"{poly} is not squarefree")
    if disc is None:
        disc, disc_is_field_disc = pd, False
    if group_tag is None:
        group_tag = "Sn-verified-input" if group_label.strip().upper() == f"S{poly.degree}" else "unknown"
    r1 = real_root_count(poly)
    return NumberFieldRecord(
        poly=poly,
        disc=disc,
        disc_is_field_disc=disc_is_field_disc,
        signature=(r1, (poly.degree - r1) // 2),
        group_tag=group_tag,
        index_warning_primes=_index_candidates(pd, disc if disc_is_field_disc else None),
        poly_disc=pd,
        group_label=group_label,
    )


# ---------------------------------------------------------------------------
# CSV


def _coef_columns(header: Sequence[str]) -> list[str]:
    cols = [h for h in header if h.startswith("c") and h[1:].isdigit()]
    return sorted(cols, key=lambda h: int(h[1:]))


def load_catalog(
    source: IO[str] | IO[bytes] | str,
    diagnostics: list[tuple[int, str]] | None = None,
) -> list[NumberFieldRecord]:
    """Parse catalog rows; bad rows are reported as (row number, message) and skipped.

    Coefficients are low-to-high.  The leading coefficient column may be
    present (it must then be 1) or omitted.
    """
    if diagnostics is None:
        diagnostics = []
    if isinstance(source, str):
        source = io.StringIO(source)
    text = source.read()
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    # comment lines (report headers) are skipped; row numbers still count them
    lines = ["" if ln.lstrip().startswith("#") else ln for ln in text.splitlines()]
    reader = csv.reader(lines)
    header = next((row for row in reader if row), None)
    if header is None:
        return []
    header = [h.strip() for h in header]
    for req in ("degree", "disc", "r1", "r2", "group"):
        if req not in header:
            raise ValueError(f"catalog header lacks column {req!r}")
    col = {h: i for i, h in enumerate(header)}
    coef_cols = _coef_columns(header)

    records: list[NumberFieldRecord] = []
    seen: set[tuple[int, ...]] = set()
    for rowno, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue

        def cell(name):
            i = col.get(name)
            return row[i].strip() if i is not None and i < len(row) else ""

        try:
            n = int(cell("degree"))
            if not 2 <= n <= 5:
                raise ValueError(f"degree {n} outside [2, 5]")
            coeffs = []
            for i in range(n):
                v = cell(f"c{i}")
                if v == "":
                    raise ValueError(f"missing coefficient c{i}")
                coeffs.append(int(v))
            lead = cell(f"c{n}")
            if lead not in ("", "1"):
                raise ValueError(f"polynomial not monic (c{n} = {lead})")
            extra = [c for c in coef_cols if int(c[1:]) > n and cell(c) not in ("", "0")]
            if extra:
                raise ValueError(f"nonzero coefficients beyond degree: {extra}")
            poly = IntPolynomial.from_low(coeffs)
            disc = int(cell("disc"))
            if disc == 0:
                raise ValueError("zero discriminant")
            kind = cell("disc_kind") or "poly"
            if kind not in ("poly", "field"):
                raise ValueError(f"bad disc_kind {kind!r}")
            r1, r2 = int(cell("r1")), int(cell("r2"))
            if r1 + 2 * r2 != n:
                raise ValueError(f"r1 + 2 r2 = {r1 + 2 * r2} != degree {n}")
            pd = poly_discriminant(poly)
            if pd == 0:
                raise ValueError("polynomial not squarefree")
            if kind == "poly" and disc != pd:
                raise ValueError(f"disc {disc} != polynomial discriminant {pd}")
            if kind == "field":
                q, rem = divmod(pd, disc)
                if rem or q <= 0 or math.isqrt(q) ** 2 != q:
                    raise ValueError(f"poly disc {pd} is not disc {disc} times a square")
            rec = make_record(poly, disc, kind == "field", group_label=cell("group"))
            if rec.signature != (r1, r2):
                raise ValueError(f"signature {(r1, r2)} != computed {rec.signature}")
        except ValueError as exc:
            diagnostics.append((rowno, str(exc)))
            log.warning("catalog row %d rejected: %s", rowno, exc)
            continue
        if poly.coefficients in seen:
            diagnostics.append((rowno, "duplicate polynomial, dropped"))
            continue
        seen.add(poly.coefficients)
        records.append(rec)
    return records


def write_catalog(records: Iterable[NumberFieldRecord], stream: IO[str]) -> None:
    records = list(records)
    top = max((r.degree for r in records), default=3)
    with_kind = any(r.disc_is_field_disc for r in records)
    header = ["degree"] + [f"c{i}" for i in range(top + 1)] + ["disc", "r1", "r2", "group"]
    if with_kind:
        header.append("disc_kind")
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(header)
    for r in records:
        coeffs = [str(c) for c in r.poly.coefficients] + [""] * (top - r.degree)
        row = [str(r.degree)] + coeffs + [str(r.disc), str(r.signature[0]), str(r.signature[1]), r.group_label]
        if with_kind:
            row.append("field" if r.disc_is_field_disc else "poly")
        w.writerow(row)


# ---------------------------------------------------------------------------
# Frobenius classes


@dataclass(frozen=True)
class Ramified:
    """p divides the polynomial discriminant; degrees of the squarefree part survive."""

    degrees: tuple[int, ...]
    index_warning: bool = False

    def __str__(self):
        return "R" + "[" + ",".join(map(str, self.degrees)) + "]"


def frobenius_class(rec: NumberFieldRecord | IntPolynomial, p: int) -> CycleType | Ramified:
    if isinstance(rec, IntPolynomial):
        rec = make_record(rec)
    fac = factor_degrees_mod_p(rec.poly, p, rec.poly_disc)
    if fac.ramified:
        return Ramified(fac.degrees, p in rec.index_warning_primes)
    return CycleType(fac.degrees)


def _degree_counts(records: Sequence[NumberFieldRecord], primes: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    coeffs = np.array([r.poly.coefficients for r in records], dtype=np.int64)
    ram = np.array([[r.poly_disc % int(p) == 0 for p in primes] for r in records], dtype=bool)
    counts = _fastfactor.unramified_degrees(coeffs, primes, ram)
    return counts, ram


def frobenius_classes(records: Sequence[NumberFieldRecord], primes: Sequence[int]) -> list[list[CycleType | Ramified]]:
    """Frobenius data for many records at many primes (compiled path for unramified p)."""
    primes_arr = np.asarray(list(primes), dtype=np.int64)
    out: list[list[CycleType | Ramified]] = [[] for _ in records]
    by_degree: dict[int, list[int]] = {}
    for i, r in enumerate(records):
        by_degree.setdefault(r.degree, []).append(i)
    for idx in by_degree.values():
        group = [records[i] for i in idx]
        counts, ram = _degree_counts(group, primes_arr)
        for gi, i in enumerate(idx):
            row = []
            for k, p in enumerate(primes_arr.tolist()):
                if ram[gi, k]:
                    row.append(frobenius_class(group[gi], p))
                else:
                    c = counts[gi, k]
                    row.append(CycleType(tuple(d for d in range(len(c) - 1, 0, -1) for _ in range(c[d]))))
            out[i] = row
    return out


# ---------------------------------------------------------------------------
# Galois heuristic


@dataclass(frozen=True)
class GaloisEvidence:
    is_sn: bool
    witnesses: tuple[tuple[str, int], ...]
    reason: str = ""


def _required_types(n: int) -> dict[str, CycleType]:
    return {
        "n-cycle": CycleType((n,)),
        "(n-1)-cycle": CycleType((n - 1, 1)),
        "transposition": CycleType((2,) + (1,) * (n - 2)),
    }


def galois_heuristic_is_sn(f: IntPolynomial | NumberFieldRecord, prime_budget: int = 100) -> GaloisEvidence:
    """Look for an n-cycle, an (n-1)-cycle and a transposition among Frobenius types.

    Together with irreducibility (implied by the n-cycle) these generate S_n.
    """
    rec = f if isinstance(f, NumberFieldRecord) else make_record(f)
    n = rec.degree
    if n < 3:
        raise ValueError("the S_n heuristic is undefined below degree 3")
    need = _required_types(n)
    found: dict[str, int] = {}
    for p, cls in zip(primes_up_to(prime_budget), frobenius_classes([rec], primes_up_to(prime_budget))[0]):
        if isinstance(cls, Ramified):
            continue
        for name, t in need.items():
            if name not in found and cls == t:
                found[name] = p
        if len(found) == len(need):
            break
    witnesses = tuple(sorted(found.items(), key=lambda kv: kv[1]))
    if len(found) == len(need):
        return GaloisEvidence(True, witnesses)
    missing = sorted(set(need) - set(found))
    return GaloisEvidence(False, witnesses, f"no {', '.join(missing)} among unramified p <= {prime_budget}")


# ---------------------------------------------------------------------------
# cubic enumeration


def _root_count_table(p: int) -> np.ndarray:
    """T[a, b] = #{x in GF(p): x^3 + a x + b = 0}."""
    x = np.arange(p, dtype=np.int64)
    x3 = x**3 % p
    a = np.arange(p, dtype=np.int64)[:, None, None]
    b = np.arange(p, dtype=np.int64)[None, :, None]
    return ((x3[None, None, :] + a * x[None, None, :] + b) % p == 0).sum(axis=2)


_CUBIC_CODES = {3: 0, 1: 1, 0: 2}  # root count -> [1,1,1], [2,1], [3]
_RAMIFIED_CODE = 3


def enumerate_cubics(H: int, stats_bound: int = 100, galois_budget: int = 100) -> list[NumberFieldRecord]:
    """Irreducible x^3 + a x + b with |a|, |b| <= H, deduplicated heuristically.

    Records are tagged Sn-heuristic when Frobenius types [3] and [2,1] both
    occur among unramified p <= galois_budget, else unknown.  Two polynomials
    are treated as the same field when their discriminants and Frobenius types
    at every p <= stats_bound coincide; the first in (a, b) order is kept.
    """
    if H > 200:
        raise ValueError("enumeration height is capped at 200")
    a, b = np.meshgrid(np.arange(-H, H + 1, dtype=np.int64), np.arange(-H, H + 1, dtype=np.int64), indexing="ij")
    a, b = a.ravel(), b.ravel()
    disc = -4 * a**3 - 27 * b**2
    keep = disc != 0
    # integer roots satisfy |r| <= 1 + max(|a|, |b|)
    for r in range(-(H + 1), H + 2):
        keep &= r**3 + a * r + b != 0
    a, b, disc = a[keep], b[keep], disc[keep]

    stat_primes = primes_up_to(max(stats_bound, galois_budget))
    codes = np.empty((len(a), len(stat_primes)), dtype=np.int8)
    for k, p in enumerate(stat_primes):
        roots = _root_count_table(p)[a % p, b % p]
        c = np.select([roots == 3, roots == 1], [0, 1], default=2).astype(np.int8)
        c[disc % p == 0] = _RAMIFIED_CODE
        codes[:, k] = c

    gal_cols = [k for k, p in enumerate(stat_primes) if p <= galois_budget]
    has3 = (codes[:, gal_cols] == 2).any(axis=1)
    has21 = (codes[:, gal_cols] == 1).any(axis=1)

    # index candidates: p^2 | disc
    absd = np.abs(disc)
    warn_primes = prime_array(math.isqrt(int(absd.max())) if len(absd) else 1)
    warn_mask = np.zeros((len(a), len(warn_primes)), dtype=bool)
    for k, p in enumerate(warn_primes.tolist()):
        warn_mask[:, k] = absd % (p * p) == 0

    stat_cols = [k for k, p in enumerate(stat_primes) if p <= stats_bound]
    seen: dict[tuple, int] = {}
    out: list[NumberFieldRecord] = []
    collisions = 0
    for i in range(len(a)):
        key = (int(disc[i]), codes[i, stat_cols].tobytes())
        if key in seen:
            collisions += 1
            continue
        seen[key] = i
        ai, bi, di = int(a[i]), int(b[i]), int(disc[i])
        is_sn = bool(has3[i] and has21[i])
        evidence = ()
        if is_sn:
            p3 = stat_primes[int(np.argmax(codes[i, gal_cols] == 2))]
            p21 = stat_primes[int(np.argmax(codes[i, gal_cols] == 1))]
            evidence = (("n-cycle", p3), ("(n-1)-cycle", p21), ("transposition", p21))
        out.append(
            NumberFieldRecord(
                poly=IntPolynomial((bi, ai, 0, 1)),
                disc=di,
                disc_is_field_disc=False,
                # a cubic with disc > 0 has three real roots, disc < 0 exactly one
                signature=(3, 0) if di > 0 else (1, 1),
                group_tag="Sn-heuristic" if is_sn else "unknown",
                index_warning_primes=tuple(warn_primes[warn_mask[i]].tolist()),
                poly_disc=di,
                group_label="S3" if is_sn else "",
                galois_evidence=evidence,
            )
        )
    log.info("enumerate_cubics(%d): %d records, %d merged as isomorphic", H, len(out), collisions)
    return out


# ---------------------------------------------------------------------------
# local conditions


@dataclass(frozen=True)
class LocalCondition:
    """Unramified with a given Frobenius class, or ramified.

    `cycle_type=None` asks for ramification.  `or_ramified=True` relaxes an
    unramified condition so ramified records also pass.
    """

    cycle_type: CycleType | None = None
    or_ramified: bool = False

    @classmethod
    def unramified(cls, c: CycleType | Sequence[int], or_ramified: bool = False) -> "LocalCondition":
        return cls(c if isinstance(c, CycleType) else CycleType(tuple(c)), or_ramified)

    @classmethod
    def ramified(cls) -> "LocalCondition":
        return cls(None)

    def accepts(self, cls: CycleType | Ramified) -> bool:
        if isinstance(cls, Ramified):
            return self.cycle_type is None or self.or_ramified
        return self.cycle_type is not None and cls == self.cycle_type


LocalConditionSet = Mapping[int, LocalCondition]


def filter_by_conditions(
    catalog: Sequence[NumberFieldRecord],
    conditions: LocalConditionSet,
    disc_window: float | None = None,
    c1: float = 1.0,
) -> list[NumberFieldRecord]:
    """Records with X/2 < |disc| <= X (if X is given) meeting every local condition.

    Conditions may only involve primes p <= c1 log X; with no window, X is the
    largest |disc| in the catalog.
    """
    if disc_window is not None:
        X = float(disc_window)
        pool = [r for r in catalog if X / 2 < abs(r.disc) <= X]
    else:
        pool = list(catalog)
        X = float(max((abs(r.disc) for r in catalog), default=3))
    if conditions:
        y = c1 * math.log(max(X, 3.0))
        bad = [p for p in conditions if p > y]
        if bad:
            raise ValueError(
                f"condition primes {bad} exceed c1 log X = {y:.3f}; counting with local conditions "
                "controls only primes up to a constant times log X"
            )
    if not conditions or not pool:
        return pool
    primes = sorted(conditions)
    classes = frobenius_classes(pool, primes)
    return [r for r, row in zip(pool, classes) if all(conditions[p].accepts(c) for p, c in zip(primes, row))]
