import itertools

import pytest
from hypothesis import given, settings, strategies as st

from cyclequiv.cycliccode import code_from_cosets, enumerate_cyclic_codes
from cyclequiv.gf import field_new
from cyclequiv.linalg import nullspace, rank, rref, solve
from cyclequiv.linearcode import (LinearCode, Permutation, centralizer_check, circulant, code_equal,
                                  code_from_ring_element, is_invariant, linear_code_from_json, permute_code,
                                  projector_verify, rref_canonical)
from cyclequiv.polyring import RingElement
from cyclequiv.solving import multiplier_perm

F2, F3, F4, F5 = field_new(2), field_new(3), field_new(2, 2), field_new(5)


def span(rows, field, n):
    """Every F_q-combination of rows, as a set."""
    out = set()
    for coefs in itertools.product(range(field.q), repeat=len(rows)):
        v = [0] * n
        for c, r in zip(coefs, rows):
            v = [field.add(x, field.mul(c, y)) for x, y in zip(v, r)]
        out.add(tuple(v))
    return out


def test_rref_by_hand():
    c = rref_canonical([(1, 1, 0), (0, 1, 1), (1, 0, 1)], F2)
    assert c.basis == ((1, 0, 1), (0, 1, 1))


def test_rref_zero_and_identity():
    assert rref_canonical([(0, 0, 0)], F3).dim == 0
    ident = [tuple(int(i == j) for j in range(4)) for i in range(4)]
    assert rref_canonical(ident, F5).basis == tuple(ident)


def test_permutation_convention():
    g = Permutation((1, 2, 0))
    h = Permutation((0, 2, 1))
    assert (g * h)(0) == h(g(0))
    assert g.apply((7, 8, 9)) == (9, 7, 8)  # v[i] lands at g(i)
    assert (g * g.inverse()).is_identity()
    assert Permutation.from_cycles(4, (0, 1), (2, 3)).cycle_type() == [2, 2]
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))


def test_permutation_matrix_acts_like_apply():
    g = Permutation((2, 0, 3, 1))
    v = (1, 2, 3, 4)
    pv = tuple(sum(m * x for m, x in zip(row, v)) for row in g.matrix())
    assert pv == g.apply(v)


def test_permute_identity_and_symmetric_code():
    even = rref_canonical([(1, 1, 0), (0, 1, 1)], F2)
    assert permute_code(even, Permutation.identity(3)) == even
    for imgs in itertools.permutations(range(3)):
        assert permute_code(even, Permutation(imgs)) == even


def test_hamming_multiplier_image():
    a = code_from_cosets(7, F2, [[1, 2, 4]])
    b = code_from_cosets(7, F2, [[3, 5, 6]])
    assert permute_code(a.linear, multiplier_perm(3, 7)) == b.linear


def test_code_equal_cases():
    c = rref_canonical([(1, 2, 0)], F3)
    assert code_equal(c, c)
    zero = rref_canonical([], F3, 3)
    full = rref_canonical([(1, 0, 0), (0, 1, 0), (0, 0, 1)], F3)
    assert not code_equal(zero, full)
    g_span = code_from_ring_element(RingElement(F2, 3, (1, 1, 0)))
    e_span = code_from_ring_element(RingElement(F2, 3, (0, 1, 1)))
    assert code_equal(g_span, e_span)


def test_contains_and_check_matrix():
    c = rref_canonical([(1, 1, 0, 0), (0, 0, 1, 1)], F3)
    assert c.contains((2, 2, 1, 1)) and not c.contains((1, 0, 0, 0))
    assert len(c.check_matrix) == 2
    assert set(c.codewords()) == span(c.basis, F3, 4)
    assert linear_code_from_json(c.to_json()) == c


def test_circulant_examples():
    assert circulant(RingElement.one(F2, 3)).rows == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    x = circulant(RingElement.x_power(F2, 3, 1)).rows
    assert x == [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
    assert circulant(RingElement(F2, 3, (0, 1, 1))).rows == [[0, 1, 1], [1, 0, 1], [1, 1, 0]]


def test_projector_verify_cases():
    for c in enumerate_cyclic_codes(7, F2):
        assert projector_verify(c.idempotent, c.linear)
    x = RingElement.x_power(F3, 4, 1)
    assert not projector_verify(x, code_from_ring_element(x))
    zero = RingElement.zero(F2, 5)
    assert projector_verify(zero, rref_canonical([], F2, 5))


def test_centralizer_cases():
    e = RingElement(F5, 6, (1, 4, 0, 2, 3, 3))
    assert centralizer_check(e, Permutation.shift(6))
    swap = Permutation.from_cycles(4, (0, 1))
    for s in (RingElement.one(F3, 4), RingElement.zero(F3, 4)):
        assert centralizer_check(s, swap)
    assert not centralizer_check(RingElement.x_power(F2, 4, 1), swap)


def test_centralizer_matches_matrix_commutation():
    """P_g A == A P_g by direct matrix products."""
    e = RingElement(F3, 4, (0, 1, 0, 2))
    a = circulant(e).rows
    for imgs in itertools.permutations(range(4)):
        g = Permutation(imgs)
        p = g.matrix()
        pa = [[sum(p[i][k] * a[k][j] for k in range(4)) % 3 for j in range(4)] for i in range(4)]
        ap = [[sum(a[i][k] * p[k][j] for k in range(4)) % 3 for j in range(4)] for i in range(4)]
        assert centralizer_check(e, g) == (pa == ap)


def test_is_invariant():
    ham = code_from_cosets(7, F2, [[1, 2, 4]]).linear
    assert is_invariant(ham, Permutation.shift(7))
    assert not is_invariant(ham, Permutation.from_cycles(7, (0, 1)))


vec = st.lists(st.integers(0, 3), min_size=5, max_size=5)


@settings(max_examples=60, deadline=None)
@given(st.lists(vec, min_size=1, max_size=4))
def test_rref_preserves_span_f4(rows):
    c = rref_canonical(rows, F4)
    assert span(c.basis, F4, 5) == span(rows, F4, 5)
    red, piv = rref(rows, F4, 5)
    assert len(piv) == rank(rows, F4, 5) == c.dim


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(0, 4), min_size=6, max_size=6), min_size=1, max_size=5))
def test_nullspace_and_solve_f5(rows):
    for v in nullspace(rows, F5, 6):
        assert all(sum(a * b for a, b in zip(r, v)) % 5 == 0 for r in rows)
    assert len(nullspace(rows, F5, 6)) == 6 - rank(rows, F5, 6)
    b = [sum(r) % 5 for r in rows]
    x = solve(rows, b, F5)
    assert x is not None and [sum(a * y for a, y in zip(r, x)) % 5 for r in rows] == b


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(0, 1), min_size=40, max_size=40), min_size=1, max_size=12))
def test_gf2_bitset_path_matches_generic(rows):
    red, piv = rref(rows, F2, 40)
    # same elimination through the F_4 path, restricted to 0/1 entries
    red4, piv4 = rref(rows, F4, 40)
    assert piv == piv4 and red == red4


def test_permute_code_length_check():
    with pytest.raises(ValueError):
        permute_code(rref_canonical([(1, 0)], F2), Permutation.identity(3))


def test_linear_code_is_canonical():
    a = rref_canonical([(1, 1, 0), (0, 1, 1)], F2)
    b = rref_canonical([(1, 0, 1), (1, 1, 0), (0, 1, 1)], F2)
    assert a == b and isinstance(a, LinearCode)
