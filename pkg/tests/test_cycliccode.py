import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cyclequiv.cycliccode import (berlekamp, code_from_cosets, code_from_generator, code_from_idempotent,
                                  cyclic_code_from_json, cyclotomic_cosets, cyclotomic_structure,
                                  enumerate_cyclic_codes, factor_xn_minus_1, generator_to_idempotent,
                                  splitting_field)
from cyclequiv.errors import NotACoset, NotADivisor, NotCoprime, TooManyCodes
from cyclequiv.gf import field_new, is_irreducible
from cyclequiv.linearcode import code_from_ring_element, rref_canonical
from cyclequiv.polyring import Poly, RingElement, xn_minus_1

import sweep

F2, F3, F4, F5, F7 = field_new(2), field_new(3), field_new(2, 2), field_new(5), field_new(7)


def P(f, *c):
    return Poly(f, tuple(c))


def brute_idempotents(n, field):
    """All e in F_q^n with e*e = e, by exhaustive scan."""
    ar = sweep.Arith(field)
    vecs = np.array(list(itertools.product(range(field.q), repeat=n)), dtype=np.int64)
    circ = sweep.circulant_array(vecs, n)
    sq = ar.matmul(circ, vecs[:, :, None])[:, :, 0]
    return {tuple(v) for v in vecs[(sq == vecs).all(axis=1)].tolist()}


def test_cosets_7_2():
    assert cyclotomic_cosets(7, 2) == [(0,), (1, 2, 4), (3, 5, 6)]


def test_cosets_6_5():
    assert cyclotomic_cosets(6, 5) == [(0,), (1, 5), (2, 4), (3,)]


def test_cosets_trivial_when_q_is_1_mod_n():
    assert cyclotomic_cosets(6, 7) == [(i,) for i in range(6)]


def test_cosets_not_coprime():
    with pytest.raises(NotCoprime):
        cyclotomic_cosets(4, 2)


@pytest.mark.parametrize("n,q", [(15, 2), (21, 4), (26, 3), (9, 7), (1, 5)])
def test_cosets_partition(n, q):
    cs = cyclotomic_cosets(n, q)
    assert sorted(j for c in cs for j in c) == list(range(n))
    for c in cs:
        assert {j * q % n for j in c} == set(c)


def test_factor_examples():
    assert factor_xn_minus_1(3, F2) == [P(F2, 1, 1), P(F2, 1, 1, 1)]
    assert set(factor_xn_minus_1(7, F2)) == {P(F2, 1, 1), P(F2, 1, 1, 0, 1), P(F2, 1, 0, 1, 1)}
    assert factor_xn_minus_1(2, F3) == [P(F3, 1, 1), P(F3, 2, 1)]


@pytest.mark.parametrize("n,field", [(15, F2), (21, F2), (13, F3), (8, F5), (15, F4), (5, F4)])
def test_factors_irreducible_and_complete(n, field):
    fs = factor_xn_minus_1(n, field)
    prod = P(field, 1)
    for f in fs:
        prod = prod * f
        assert f.lead == 1
        if field.k == 1:
            assert is_irreducible(f.coeffs, field.p)
        else:
            assert berlekamp(f) == [f]
    assert prod == xn_minus_1(n, field)
    assert sorted(f.degree for f in fs) == sorted(len(c) for c in cyclotomic_cosets(n, field.q))


@pytest.mark.parametrize("n,field", [(7, F2), (15, F4), (6, F5), (13, F3)])
def test_pairing_roots(n, field):
    """Each factor vanishes exactly at alpha^j for j in its coset."""
    st_ = cyclotomic_structure(n, field)
    sf = splitting_field(n, field)
    assert sf.big.order(sf.alpha) == n
    for c, f in zip(st_.cosets, st_.factors):
        assert [j for j in range(n) if sf.evaluate(f, j) == 0] == list(c)
        assert sf.minimal_polynomial(c) == f


def test_hamming_code():
    h = code_from_cosets(7, F2, [[1, 2, 4]])
    assert h.generator.degree == 3 and h.dim == 4
    assert rref_canonical([h.generator.coeffs + (0,) * 3], F2).dim == 1
    assert code_from_ring_element(RingElement.from_poly(h.generator, 7)).dim == 4


def test_full_and_zero_codes():
    full = code_from_cosets(5, F3, [])
    assert full.generator == P(F3, 1) and full.idempotent == RingElement.one(F3, 5)
    zero = code_from_cosets(5, F3, cyclotomic_cosets(5, 3))
    assert zero.generator == xn_minus_1(5, F3) and zero.idempotent.is_zero() and zero.dim == 0


def test_not_a_coset():
    with pytest.raises(NotACoset):
        code_from_cosets(7, F2, [[1, 2]])


def test_generator_to_idempotent_examples():
    assert generator_to_idempotent(P(F2, 1, 1), 3, F2) == RingElement(F2, 3, (0, 1, 1))
    assert generator_to_idempotent(P(F3, 1), 4, F3) == RingElement.one(F3, 4)
    assert generator_to_idempotent(xn_minus_1(4, F3), 4, F3).is_zero()
    e = generator_to_idempotent(P(F2, 1, 1, 0, 1), 7, F2)
    assert e == RingElement(F2, 7, (0, 1, 1, 0, 1, 0, 0))
    assert e * e == e
    g_span = code_from_ring_element(RingElement.from_poly(P(F2, 1, 1, 0, 1), 7))
    assert code_from_ring_element(e) == g_span and g_span.dim == 4


def test_generator_must_divide():
    with pytest.raises(NotADivisor):
        generator_to_idempotent(P(F2, 1, 0, 1), 7, F2)


def test_enumeration_counts():
    dims = sorted((c.dim for c in enumerate_cyclic_codes(7, F2)), reverse=True)
    assert dims == [7, 6, 4, 4, 3, 3, 1, 0]
    assert len(enumerate_cyclic_codes(6, F5)) == 16
    assert len(enumerate_cyclic_codes(3, F2)) == 4


def test_enumeration_cap():
    with pytest.raises(TooManyCodes):
        enumerate_cyclic_codes(24, F7)


@pytest.mark.parametrize("n,field", [(7, F2), (6, F5), (5, F4), (8, F3), (4, F7), (9, F2)])
def test_idempotents_match_brute_force(n, field):
    """The enumerated idempotents are exactly the idempotents of R_n."""
    got = {c.idempotent.coeffs for c in enumerate_cyclic_codes(n, field)}
    assert got == brute_idempotents(n, field)


@pytest.mark.parametrize("n,field", [(7, F2), (15, F4), (6, F5), (10, F3)])
def test_enumeration_agrees_with_code_from_cosets(n, field):
    for c in enumerate_cyclic_codes(n, field):
        assert c == code_from_cosets(n, field, c.zero_cosets)


def test_roundtrips():
    for c in enumerate_cyclic_codes(6, F5):
        assert code_from_generator(c.generator, 6) == c
        assert code_from_idempotent(c.idempotent) == c
        assert cyclic_code_from_json(c.to_json()) == c
        assert cyclic_code_from_json({"n": 6, "field": 5, "idempotent": c.idempotent.to_json()}) == c


def test_json_cross_check():
    h = code_from_cosets(7, F2, [[1, 2, 4]])
    spec = h.to_json()
    spec["cosets"] = [[3, 5, 6]]
    with pytest.raises(ValueError):
        cyclic_code_from_json(spec)
    with pytest.raises(ValueError):
        code_from_idempotent(RingElement.x_power(F2, 7, 1))


def test_sweep_oracle_catches_corruption():
    """The sweep oracle flags an idempotent that is off by one coefficient."""
    c = code_from_cosets(7, F2, [[1, 2, 4]])
    coeffs = list(c.idempotent.coeffs)
    coeffs[0] ^= 1
    bad = type(c)(c.n, c.field, c.zero_cosets, c.generator, RingElement(F2, 7, tuple(coeffs)))
    assert sweep.check_codes([bad], sweep.Arith(F2), False)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(15, F2), (21, F2), (13, F3), (8, F5), (15, F4), (12, F7)]), st.data())
def test_random_code_invariants(case, data):
    n, field = case
    cosets = cyclotomic_cosets(n, field.q)
    chosen = data.draw(st.lists(st.sampled_from(cosets), unique=True))
    c = code_from_cosets(n, field, chosen)
    e = c.idempotent
    assert e * e == e
    assert c.dim == n - sum(len(z) for z in chosen)
    assert code_from_ring_element(e) == code_from_ring_element(RingElement.from_poly(c.generator, n))
    assert (e * RingElement.from_poly(c.generator, n)) == RingElement.from_poly(c.generator, n)
