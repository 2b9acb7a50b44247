from __future__ import annotations

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from ggcode.errors import DomainError, UsageError
from ggcode.field import (
    GF,
    FieldElement,
    coeffs_to_poly,
    default_poly_gf2,
    is_irreducible_gf2,
    parse_field_spec,
    poly_to_coeffs,
)

FIELDS = [2, 3, 4, 5, 7, 8, 16, 31, 256, 257, 1024]


def clmul_mod(a: int, b: int, poly: int) -> int:
    """Schoolbook polynomial product over GF(2), reduced mod ``poly``."""
    deg = poly.bit_length() - 1
    prod = 0
    for i in range(b.bit_length()):
        if b >> i & 1:
            prod ^= a << i
    for i in range(prod.bit_length() - 1, deg - 1, -1):
        if prod >> i & 1:
            prod ^= poly << (i - deg)
    return prod


def test_gf4_tables_match_polynomial_arithmetic():
    F = GF(4)
    assert F.poly == (1, 1, 1)
    for a in range(4):
        for b in range(4):
            assert F.mul(a, b) == clmul_mod(a, b, 0b111)
            assert F.add(a, b) == a ^ b
    assert F.mul(2, 2) == 3  # x * x = x + 1
    assert F.add(2, 3) == 1


@pytest.mark.parametrize("e", range(2, 11))
def test_extension_multiplication_oracle(e):
    F = GF(1 << e)
    poly = coeffs_to_poly(F.poly)
    for a in range(0, F.q, max(1, F.q // 37)):
        for b in range(0, F.q, max(1, F.q // 41)):
            assert F.mul(a, b) == clmul_mod(a, b, poly)


@pytest.mark.parametrize("e", range(1, 17))
def test_default_polynomial_is_smallest_irreducible(e):
    poly = default_poly_gf2(e)
    x = sympy.Symbol("x")
    coeffs = poly_to_coeffs(poly)
    assert sympy.Poly(list(coeffs), x, modulus=2).is_irreducible
    for smaller in range(1 << e, poly):
        assert not is_irreducible_gf2(smaller)


def test_coefficient_order_is_highest_degree_first():
    assert poly_to_coeffs(0b1011) == (1, 0, 1, 1)
    assert coeffs_to_poly((1, 0, 1, 1)) == 0b1011


@pytest.mark.parametrize("q", FIELDS)
def test_inverse_and_fermat(q):
    F = GF(q)
    for a in range(1, q, max(1, q // 50)):
        assert F.mul(a, F.inv(a)) == 1
        assert F.pow(a, q - 1) == 1


def test_gf7_inverse_of_three():
    assert GF(7).inv(3) == 5


@given(st.sampled_from(FIELDS), st.data())
@settings(max_examples=200, deadline=None)
def test_field_axioms(q, data):
    F = GF(q)
    a, b, c = (data.draw(st.integers(0, q - 1)) for _ in range(3))
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.sub(F.add(a, b), b) == a


@given(st.sampled_from(FIELDS), st.data())
@settings(max_examples=50, deadline=None)
def test_array_ops_match_scalar_ops(q, data):
    import numpy as np

    F = GF(q)
    xs = np.array(data.draw(st.lists(st.integers(0, q - 1), min_size=1, max_size=20)))
    ys = np.array(data.draw(st.lists(st.integers(0, q - 1), min_size=len(xs), max_size=len(xs))))
    assert F.add_arr(xs, ys).tolist() == [F.add(int(a), int(b)) for a, b in zip(xs, ys)]
    assert F.mul_arr(xs, ys).tolist() == [F.mul(int(a), int(b)) for a, b in zip(xs, ys)]
    assert F.sub_arr(xs, ys).tolist() == [F.sub(int(a), int(b)) for a, b in zip(xs, ys)]
    nz = xs[xs != 0]
    if nz.size:
        assert F.inv_arr(nz).tolist() == [F.inv(int(a)) for a in nz]


def test_largest_fields_build():
    for q in (65521, 1 << 16):
        F = GF(q)
        assert F.mul(F.inv(12345), 12345) == 1


@pytest.mark.parametrize("q", [0, 1, 6, 12, 65537 * 2, 1 << 17])
def test_bad_orders_rejected(q):
    with pytest.raises(UsageError):
        GF(q)


def test_reducible_polynomial_rejected():
    with pytest.raises(UsageError):
        GF(4, (1, 0, 1))  # x^2 + 1 = (x + 1)^2
    with pytest.raises(UsageError):
        GF(7, (1, 1))


def test_inverse_of_zero_is_domain_error():
    with pytest.raises(DomainError):
        GF(5).inv(0)
    with pytest.raises(DomainError):
        GF(8).inv(0)


def test_non_canonical_element_rejected():
    with pytest.raises(UsageError):
        GF(5).check(5)


def test_elements_and_operators():
    F = GF(4)
    x = F(2)
    assert isinstance(x, FieldElement)
    assert x * x == 3
    assert x + F(3) == 1
    assert (x / x) == 1
    assert x ** 3 == 1
    assert -x == x
    assert hash(F(1)) == hash(F(1))


def test_parse_field_spec():
    F = parse_field_spec("q=4 poly=1,1,1")
    assert F == GF(4)
    assert F.spec_string() == "q=4 poly=1,1,1"
    assert parse_field_spec("q=7") is GF(7)
    with pytest.raises(UsageError):
        parse_field_spec("poly=1,1")
