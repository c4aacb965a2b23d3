import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetares.arith import (
    CycleType,
    IntPolynomial,
    factor_degrees_mod_p,
    factor_mod_p,
    frobenius_batch,
    partitions,
    poly_discriminant,
    prime_array,
    primes_between,
    primes_up_to,
    real_root_count,
    signature,
)

from oracles import (
    roots_mod_p,
    segmented_prime_count,
    sympy_discriminant,
    sympy_factor_degrees,
    sympy_real_roots,
)

X3_X_1 = IntPolynomial((-1, -1, 0, 1))
X3_4X_1 = IntPolynomial((-1, -4, 0, 1))
X2_1 = IntPolynomial((1, 0, 1))

monic = st.integers(2, 5).flatmap(
    lambda n: st.lists(st.integers(-20, 20), min_size=n, max_size=n).map(lambda c: IntPolynomial(tuple(c) + (1,)))
)
small_primes = st.sampled_from(primes_up_to(200))


def test_primes_small():
    assert primes_up_to(10) == [2, 3, 5, 7]
    assert primes_up_to(2) == [2]
    assert primes_up_to(1.5) == []


def test_prime_count_against_segmented_sieve():
    assert len(primes_up_to(10**6)) == 78498 == segmented_prime_count(10**6)


def test_primes_between_is_open():
    assert primes_between(7, 13).tolist() == [11]
    assert primes_between(10, 10).tolist() == []
    assert not prime_array(100).flags.writeable


@pytest.mark.parametrize(
    "poly, disc", [(X3_X_1, -23), (X3_4X_1, 229), (X2_1, -4)]
)
def test_discriminant_examples(poly, disc):
    assert poly_discriminant(poly) == disc


@settings(max_examples=60, deadline=None)
@given(monic)
def test_discriminant_matches_sympy(f):
    assert poly_discriminant(f) == sympy_discriminant(f.coefficients)


def test_factor_degree_examples():
    fac = factor_degrees_mod_p(X3_X_1, 2)
    assert fac.degrees == (3,) and not fac.ramified
    fac = factor_degrees_mod_p(X3_X_1, 23)
    assert fac.degrees == (1, 1) and fac.ramified
    fac = factor_degrees_mod_p(X2_1, 5)
    assert fac.degrees == (1, 1) and not fac.ramified


def test_ramified_at_23_factors_as_expected():
    # (x - 3)(x - 10)^2 mod 23
    assert sorted(factor_mod_p(X3_X_1, 23)) == sorted([((-3 % 23, 1), 1), ((-10 % 23, 1), 2)])


@settings(max_examples=150, deadline=None)
@given(monic, small_primes)
def test_factor_degrees_match_sympy(f, p):
    degs, repeated = sympy_factor_degrees(f.coefficients, p)
    fac = factor_degrees_mod_p(f, p)
    assert fac.degrees == degs
    assert fac.ramified == (repeated or poly_discriminant(f) % p == 0)


@settings(max_examples=100, deadline=None)
@given(monic, small_primes)
def test_factors_multiply_back(f, p):
    prod = [1]
    for fac, mult in factor_mod_p(f, p):
        for _ in range(mult):
            out = [0] * (len(prod) + len(fac) - 1)
            for i, a in enumerate(prod):
                for j, b in enumerate(fac):
                    out[i + j] = (out[i + j] + a * b) % p
            prod = out
    assert prod == [c % p for c in f.coefficients]


@settings(max_examples=100, deadline=None)
@given(monic, small_primes)
def test_linear_factor_count_is_root_count(f, p):
    fac = factor_degrees_mod_p(f, p)
    if not fac.ramified:
        assert fac.degrees.count(1) == roots_mod_p(f.coefficients, p)
        assert sum(fac.degrees) == f.degree


def test_compiled_batch_matches_reference():
    rng = random.Random(7)
    ps = primes_up_to(400)
    for _ in range(40):
        n = rng.randint(2, 5)
        f = IntPolynomial(tuple(rng.randint(-30, 30) for _ in range(n)) + (1,))
        disc = poly_discriminant(f)
        if disc == 0:
            continue
        assert frobenius_batch(f, ps, disc) == [factor_degrees_mod_p(f, p) for p in ps]


def test_large_prime_factorization():
    p = 1_000_003
    assert factor_degrees_mod_p(X3_X_1, p).degrees == sympy_factor_degrees(X3_X_1.coefficients, p)[0]


@pytest.mark.parametrize("poly, r1", [(X3_X_1, 1), (X3_4X_1, 3), (X2_1, 0)])
def test_real_roots_examples(poly, r1):
    assert real_root_count(poly) == r1


def test_signature():
    assert signature(X3_X_1) == (1, 1)
    assert signature(X3_4X_1) == (3, 0)


@settings(max_examples=60, deadline=None)
@given(monic)
def test_real_roots_match_sympy_and_parity(f):
    if poly_discriminant(f) == 0:
        with pytest.raises(ValueError):
            real_root_count(f)
        return
    r1 = real_root_count(f)
    assert r1 == sympy_real_roots(f.coefficients)
    assert r1 % 2 == f.degree % 2


def test_partitions():
    assert partitions(3) == [CycleType((3,)), CycleType((2, 1)), CycleType((1, 1, 1))]
    assert [len(partitions(n)) for n in range(1, 13)] == [1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]
    with pytest.raises(ValueError):
        partitions(13)
    with pytest.raises(ValueError):
        partitions(0)


def test_class_sizes_sum_to_group_order():
    for n in range(1, 8):
        assert sum(c.class_size() for c in partitions(n)) == math.factorial(n)


def test_polynomial_validation():
    with pytest.raises(ValueError):
        IntPolynomial((1, 2))
    with pytest.raises(ValueError):
        IntPolynomial((1,))
    assert IntPolynomial.from_low((-1, -1, 0)) == X3_X_1
    assert X3_X_1(2) == 5
    assert X3_X_1.mirror() == IntPolynomial((1, -1, 0, 1))
