import itertools

import pytest
from hypothesis import given, settings, strategies as st

from cyclequiv.errors import DegreeMismatch, NotPrime, ReducibleModulus, ZeroInverse
from cyclequiv.gf import (FieldElement, field_arith, field_from_json, field_from_order, field_inv, field_new,
                          field_pow, is_irreducible, smallest_irreducible)

FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (5, 2)]


def brute_irreducible(coeffs, p):
    """No monic factor of degree <= deg/2, by trial multiplication."""
    d = len(coeffs) - 1

    def mul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
        return out

    for da in range(1, d // 2 + 1):
        for low_a in itertools.product(range(p), repeat=da):
            a = list(low_a) + [1]
            for low_b in itertools.product(range(p), repeat=d - da):
                if mul(a, list(low_b) + [1]) == list(coeffs):
                    return False
    return True


def test_prime_field():
    f = field_new(2)
    assert f.q == 2 and list(f.elements()) == [0, 1]


def test_f4_modulus_forced():
    assert field_new(2, 2).modulus == (1, 1, 1)


def test_f9_custom_modulus_irreducible():
    assert brute_irreducible([2, 1, 1], 3)
    f = field_new(3, 2, [2, 1, 1])
    assert f.modulus == (2, 1, 1)


def test_reducible_modulus_rejected():
    with pytest.raises(ReducibleModulus):
        field_new(2, 2, [1, 0, 1])  # (x+1)^2


def test_bad_arguments():
    with pytest.raises(NotPrime):
        field_new(4)
    with pytest.raises(DegreeMismatch):
        field_new(2, 3, [1, 1, 1])


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2)])
def test_smallest_irreducible_matches_brute_force(p, k):
    got = smallest_irreducible(p, k)
    # c0-first lexicographic order: product over (c0, c1, ...) with c0 most significant
    first = next(low + (1,) for low in itertools.product(range(p), repeat=k)
                 if brute_irreducible(low + (1,), p))
    assert got == first


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (3, 2)])
def test_rabin_agrees_with_trial_division(p, k):
    for low in itertools.product(range(p), repeat=k):
        c = low + (1,)
        assert is_irreducible(c, p) == brute_irreducible(c, p)


def test_f4_product():
    f = field_new(2, 2)
    t = FieldElement(f, 2)
    assert (t * (t + FieldElement(f, 1))).value == 1


def test_f5_inverse():
    f = field_new(5)
    assert field_inv(FieldElement(f, 2)).value == 3


def test_f9_fermat():
    f = field_new(3, 2)
    for a in range(1, 9):
        assert field_pow(FieldElement(f, a), 8).value == 1


def test_zero_inverse():
    with pytest.raises(ZeroInverse):
        field_inv(FieldElement(field_new(7), 0))


def test_field_arith_ops():
    f = field_new(7)
    a, b = FieldElement(f, 3), FieldElement(f, 5)
    assert field_arith(a, b, "add").value == 1
    assert field_arith(a, b, "sub").value == 5
    assert field_arith(a, b, "mul").value == 1


def test_field_json_roundtrip():
    f = field_new(3, 2)
    assert field_from_json(f.to_json()) == f
    assert field_from_json(9) == f
    assert field_from_order(4) == field_new(2, 2)


@pytest.mark.parametrize("p,k", FIELDS)
def test_multiplicative_group_cyclic_order(p, k):
    f = field_new(p, k)
    orders = [f.order(a) for a in range(1, f.q)]
    assert max(orders) == f.q - 1
    assert all((f.q - 1) % o == 0 for o in orders)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_field_axioms(pk, data):
    f = field_new(*pk)
    a, b, c = (data.draw(st.integers(0, f.q - 1)) for _ in range(3))
    assert f.add(a, b) == f.add(b, a)
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
    assert f.sub(f.add(a, b), b) == a
    if a:
        assert f.mul(a, f.inv(a)) == 1
