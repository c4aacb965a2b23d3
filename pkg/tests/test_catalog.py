import io
import math

import pytest

from zetares.arith import CycleType, IntPolynomial, factor_degrees_mod_p
from zetares.catalog import (
    LocalCondition,
    Ramified,
    enumerate_cubics,
    filter_by_conditions,
    frobenius_class,
    frobenius_classes,
    galois_heuristic_is_sn,
    load_catalog,
    make_record,
    write_catalog,
)

from oracles import roots_mod_p, sympy_discriminant

X3_X_1 = IntPolynomial((-1, -1, 0, 1))
HEADER = "degree,c0,c1,c2,c3,disc,r1,r2,group\n"


def test_load_spec_row():
    recs = load_catalog(HEADER + "3,-1,-1,0,1,-23,1,1,S3\n")
    assert len(recs) == 1
    r = recs[0]
    assert r.poly == X3_X_1 and r.disc == -23 and r.signature == (1, 1)
    assert r.group_tag == "Sn-verified-input"


def test_load_without_leading_column():
    recs = load_catalog("degree,c0,c1,c2,disc,r1,r2,group\n3,-1,-1,0,-23,1,1,S3\n")
    assert recs[0].poly == X3_X_1


def test_load_rejections_are_diagnosed():
    diags = []
    text = (
        HEADER
        + "3,-1,-1,0,1,-23,3,1,S3\n"  # r1 + 2 r2 != 3
        + "3,-1,-1,0,1,0,1,1,S3\n"  # zero disc
        + "7,0,0,0,1,-23,1,1,S3\n"  # degree out of range
        + "3,-1,-1,0,1,-23,1,1,S3\n"
        + "3,-1,-1,0,1,-23,1,1,S3\n"  # duplicate
        + "3,x,-1,0,1,-23,1,1,S3\n"  # malformed
    )
    recs = load_catalog(io.StringIO(text), diags)
    assert len(recs) == 1
    assert sorted(row for row, _ in diags) == [2, 3, 4, 6, 7]


def test_load_empty():
    assert load_catalog("") == []
    assert load_catalog(io.BytesIO(b"")) == []


def test_load_missing_column():
    with pytest.raises(ValueError):
        load_catalog("degree,c0,c1,c2,disc,r1,r2\n")


def test_round_trip_is_byte_stable():
    recs = enumerate_cubics(6)[:40]
    a = io.StringIO()
    write_catalog(recs, a)
    back = load_catalog(a.getvalue())
    b = io.StringIO()
    write_catalog(back, b)
    assert a.getvalue() == b.getvalue()
    assert [r.poly for r in back] == [r.poly for r in recs]


def test_enumerate_height_one():
    recs = enumerate_cubics(1)
    polys = {r.poly for r in recs}
    assert X3_X_1 in polys
    # x^3 + x + 1 and its mirror x^3 + x - 1 define the same field; one of them is kept
    x3x1 = IntPolynomial((1, 1, 0, 1))
    assert x3x1 in polys or x3x1.mirror() in polys
    assert sorted(r.disc for r in recs) == [-31, -23]
    assert IntPolynomial((0, -1, 0, 1)) not in polys


def test_enumerated_records_are_consistent():
    for r in enumerate_cubics(8):
        a, b = r.poly.coefficients[1], r.poly.coefficients[0]
        assert r.disc == -4 * a**3 - 27 * b**2 == sympy_discriminant(r.poly.coefficients)
        assert all((b + a * t + t**3) != 0 for t in range(-abs(b) - 1, abs(b) + 2))
        if r.group_tag == "Sn-heuristic":
            assert r.disc < 0 or math.isqrt(r.disc) ** 2 != r.disc
        assert r.signature == ((3, 0) if r.disc > 0 else (1, 1))


def test_galois_heuristic():
    ev = galois_heuristic_is_sn(X3_X_1, 100)
    assert ev.is_sn and {k for k, _ in ev.witnesses} == {"n-cycle", "(n-1)-cycle", "transposition"}
    assert frobenius_class(X3_X_1, dict(ev.witnesses)["n-cycle"]) == CycleType((3,))
    cyclic = IntPolynomial((-1, -3, 0, 1))
    assert sympy_discriminant(cyclic.coefficients) == 81
    ev = galois_heuristic_is_sn(cyclic, 1000)
    assert not ev.is_sn and ev.reason
    with pytest.raises(ValueError):
        galois_heuristic_is_sn(IntPolynomial((1, 0, 1)))


def test_frobenius_class_examples():
    assert frobenius_class(X3_X_1, 2) == CycleType((3,))
    ram = frobenius_class(X3_X_1, 23)
    assert isinstance(ram, Ramified) and ram.degrees == (1, 1)
    assert frobenius_class(IntPolynomial((1, 0, 1)), 5) == CycleType((1, 1))


def test_frobenius_classes_batch_matches_single():
    recs = enumerate_cubics(5)
    ps = [2, 3, 5, 7, 11, 13, 97]
    table = frobenius_classes(recs, ps)
    for r, row in zip(recs, table):
        assert row == [frobenius_class(r, p) for p in ps]
        for p, c in zip(ps, row):
            if isinstance(c, CycleType):
                assert sum(c.parts) == 3
                assert c.parts.count(1) == roots_mod_p(r.poly.coefficients, p)


def test_filter_single_condition():
    cat = enumerate_cubics(50)
    out = filter_by_conditions(cat, {2: LocalCondition.unramified((1, 1, 1))})
    for r in out:
        fac = factor_degrees_mod_p(r.poly, 2)
        assert fac.degrees == (1, 1, 1) and not fac.ramified


def test_filter_identity_and_intersection():
    cat = enumerate_cubics(20)
    assert filter_by_conditions(cat, {}) == cat
    A = {3: LocalCondition.unramified((2, 1))}
    B = {5: LocalCondition.unramified((3,))}
    both = filter_by_conditions(cat, {**A, **B})
    assert set(both) == set(filter_by_conditions(cat, A)) & set(filter_by_conditions(cat, B))


def test_filter_vacuous_and_bounds():
    # x^3 + 2a x + 2b is x^3 mod 2, so every member is ramified at 2
    fam = [make_record(IntPolynomial((2 * b, 2 * a, 0, 1))) for a in (1, 2) for b in (1, 3)]
    assert filter_by_conditions(fam, {2: LocalCondition.unramified((3,))}) == []
    assert len(filter_by_conditions(fam, {2: LocalCondition.ramified()})) == 4
    with pytest.raises(ValueError):
        filter_by_conditions(enumerate_cubics(3), {97: LocalCondition.unramified((3,))})


def test_disc_window():
    cat = enumerate_cubics(20)
    out = filter_by_conditions(cat, {}, disc_window=5000)
    assert out and all(2500 < abs(r.disc) <= 5000 for r in out)


def test_local_condition_accepts():
    c = LocalCondition.unramified((1, 1, 1), or_ramified=True)
    assert c.accepts(CycleType((1, 1, 1))) and c.accepts(Ramified((1,)))
    assert not LocalCondition.unramified((3,)).accepts(Ramified((1,)))
    assert LocalCondition.ramified().accepts(Ramified((1, 1)))
