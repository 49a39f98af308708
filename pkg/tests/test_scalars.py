from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from hallcluster.scalars import FREE, RingMismatch, Scalar, make_ring, prime_power, qbinom
from oracles import U, gaussian_binomial_poly, sympy_equal, to_sympy

coeffs = st.dictionaries(st.integers(-4, 4), st.fractions(min_value=-20, max_value=20, max_denominator=5), max_size=4)
RINGS = [make_ring("related", 2, 5), make_ring("related", 4, 4), make_ring("related", 4, 9), make_ring("related", 2, 3)]


def free(d):
    return FREE.laurent(d)


def test_make_ring_minimal_polynomials():
    assert make_ring("related", 2, 5).minpoly == (-5, 0, 1)
    r = make_ring("related", 4, 4)
    assert r.minpoly == (-2, 0, 1) and r.degree == 2
    assert make_ring("related", 2, 4).minpoly == (-2, 1)
    assert make_ring("related", 4, 9).minpoly == (-3, 0, 1)
    assert make_ring("related", 2, 8).minpoly == (-8, 0, 1)


def test_make_ring_rejects_bad_input():
    with pytest.raises(ValueError):
        make_ring("related", 3, 4)
    with pytest.raises(ValueError):
        make_ring("related", 2, 6)
    with pytest.raises(ValueError):
        make_ring("bogus")


def test_prime_power():
    assert prime_power(9) == (3, 2)
    assert prime_power(12) is None
    assert prime_power(2) == (2, 1)


def test_free_difference_of_squares():
    a = free({1: 1, -1: 1})
    b = free({1: 1, -1: -1})
    assert a * b == free({2: 1, -2: -1})


def test_related_relations():
    r5 = make_ring("related", 2, 5)
    assert r5.u_power(1) * r5.u_power(1) == r5.scalar(5)
    r4 = make_ring("related", 4, 4)
    assert r4.u_power(3) * r4.u_power(1) == r4.scalar(4)
    assert r4.u_power(2) == r4.scalar(2)
    assert r4.u_power(-2) == r4.scalar(Fraction(1, 2))


def test_qbinom_examples():
    assert qbinom(1, 1, 1) == FREE.one()
    assert qbinom(2, 1, 2) == free({2: 1, -2: 1})
    assert qbinom(4, 2, 2) == free({8: 1, 4: 1, 0: 2, -4: 1, -8: 1})
    with pytest.raises(ValueError):
        qbinom(3, 5, 1)


@pytest.mark.parametrize("n", range(0, 7))
@pytest.mark.parametrize("d", [1, 2])
def test_qbinom_matches_product_formula(n, d):
    for k in range(n + 1):
        expected = gaussian_binomial_poly(n, k, U**d)
        assert sympy_equal(to_sympy(qbinom(n, k, d)), expected)


def test_qbinom_related_is_reduction():
    r = make_ring("related", 4, 9)
    for n in range(5):
        for k in range(n + 1):
            assert qbinom(n, k, 2, r) == qbinom(n, k, 2).reduce(r)


@given(coeffs, coeffs, coeffs)
def test_free_ring_laws(a, b, c):
    x, y, z = free(a), free(b), free(c)
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x - x == FREE.zero()


@given(coeffs, coeffs)
def test_free_arithmetic_matches_sympy(a, b):
    x, y = free(a), free(b)
    assert sympy_equal(to_sympy(x * y), to_sympy(x) * to_sympy(y))
    assert sympy_equal(to_sympy(x + y), to_sympy(x) + to_sympy(y))


@given(coeffs, coeffs, st.sampled_from(RINGS))
def test_reduction_is_a_ring_homomorphism(a, b, ring):
    x, y = free(a), free(b)
    assert (x * y).reduce(ring) == x.reduce(ring) * y.reduce(ring)
    assert (x + y).reduce(ring) == x.reduce(ring) + y.reduce(ring)


@given(coeffs, st.sampled_from(RINGS))
def test_reduction_evaluates_at_the_real_root(a, ring):
    x = free(a)
    r = sympy.root(sympy.Integer(ring.Q0), ring.N)
    assert sympy_equal(to_sympy(x.reduce(ring)), to_sympy(x).subs(U, r))


@given(coeffs, st.sampled_from(RINGS))
def test_related_inverse(a, ring):
    x = free(a).reduce(ring)
    if x.is_zero():
        return
    assert x * x.inverse() == ring.one()


@given(coeffs, coeffs)
def test_free_exact_division(a, b):
    x, y = free(a), free(b)
    if y.is_zero():
        return
    assert (x * y) / y == x


def test_free_division_by_non_divisor_raises():
    with pytest.raises(ArithmeticError):
        free({0: 1}) / free({0: 1, 1: 1})


def test_mixed_rings_refuse_to_combine():
    with pytest.raises(RingMismatch):
        make_ring("related", 2, 5).one() + make_ring("related", 2, 3).one()


@given(coeffs, st.sampled_from(RINGS + [FREE]))
def test_json_round_trip(a, ring):
    x = free(a).reduce(ring) if ring != FREE else free(a)
    assert Scalar.from_json(x.to_json(), ring) == x


def test_bar_and_specialization():
    x = free({2: 3, -1: Fraction(1, 2)})
    assert x.bar() == free({-2: 3, 1: Fraction(1, 2)})
    assert x.at_one() == Fraction(7, 2)
