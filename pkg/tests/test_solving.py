import random

import pytest

from cyclequiv.cycliccode import code_from_cosets, enumerate_cyclic_codes
from cyclequiv.errors import FieldMismatch, LengthMismatch, NotAUnit
from cyclequiv.gf import field_new
from cyclequiv.linearcode import Permutation, permute_code
from cyclequiv.oracle import equivalence_bruteforce
from cyclequiv.polyring import RingElement
from cyclequiv.solving import (Method, Status, cayley_multiplier_match, coefficient_partition, is_ci_certified,
                               multiplier_perm, multiplier_solving_set, test_equivalence as decide,
                               transport_idempotent, units, witness_holds)

F2, F3, F5 = field_new(2), field_new(3), field_new(5)


def test_partition_examples():
    e = RingElement(F2, 7, (0, 1, 1, 0, 1, 0, 0))
    assert coefficient_partition(e).classes == {0: (0, 3, 5, 6), 1: (1, 2, 4)}
    assert coefficient_partition(RingElement.zero(F5, 4)).classes == {0: (0, 1, 2, 3)}
    distinct = coefficient_partition(RingElement(F5, 4, (0, 1, 2, 3)))
    assert distinct.class_sizes() == [1, 1, 1, 1]


def test_multiplier_perms():
    assert multiplier_perm(1, 9).is_identity()
    assert multiplier_perm(3, 7).images == (0, 3, 6, 2, 5, 1, 4)
    assert multiplier_perm(5, 6) == Permutation.from_cycles(6, (1, 5), (2, 4))
    with pytest.raises(NotAUnit):
        multiplier_perm(2, 6)


def test_solving_sets():
    s7 = multiplier_solving_set(7)
    assert len(s7) == 6 and s7.certified
    s6 = multiplier_solving_set(6)
    assert s6.multipliers == (1, 5) and s6.certified
    s12 = multiplier_solving_set(12)
    assert len(s12) == 4 and not s12.certified


@pytest.mark.parametrize("n,want", [(105, True), (18, False), (10, True), (12, False), (1, True),
                                    (2, True), (9, False), (30, True), (50, False), (4, False)])
def test_ci_certification(n, want):
    assert is_ci_certified(n) is want


def test_cayley_match_examples():
    e = RingElement(F2, 7, (0, 1, 1, 0, 1, 0, 0))
    f = RingElement(F2, 7, (0, 0, 0, 1, 0, 1, 1))
    assert cayley_multiplier_match(e, e, 1)
    assert cayley_multiplier_match(e, f, 3)
    x = RingElement.x_power(F2, 4, 1)
    assert not cayley_multiplier_match(x, x, 3)
    with pytest.raises(LengthMismatch):
        cayley_multiplier_match(e, x, 1)


def test_transport_idempotent_is_the_image_idempotent():
    for c in enumerate_cyclic_codes(15, F2):
        for m in units(15):
            img = code_from_cosets(15, F2, [sorted(pow(m, -1, 15) * j % 15 for j in z) for z in c.zero_cosets])
            assert transport_idempotent(c.idempotent, m) == img.idempotent


def test_hamming_pair():
    a = code_from_cosets(7, F2, [[1, 2, 4]])
    b = code_from_cosets(7, F2, [[3, 5, 6]])
    v = decide(a, b)
    assert v.status is Status.EQUIVALENT and v.multiplier == 3
    assert v.witness == multiplier_perm(3, 7)
    assert v.candidates_checked <= 6
    assert permute_code(a.linear, v.witness) == b.linear


def test_identity_pair():
    a = code_from_cosets(6, F5, [[1, 5]])
    v = decide(a, a)
    assert v.status is Status.EQUIVALENT and v.witness.is_identity() and v.candidates_checked == 1


def test_dimension_screen():
    a = code_from_cosets(7, F2, [[1, 2, 4]])
    b = code_from_cosets(7, F2, [[0], [1, 2, 4]])
    v = decide(a, b)
    assert v.status is Status.NOT_EQUIVALENT and v.method is Method.INVARIANT


def test_certified_exhaustion():
    """Zeros {0} and {3} at n = 6: no multiplier moves 0 to 3, and Sym(6) agrees."""
    a = code_from_cosets(6, F5, [[0]])
    b = code_from_cosets(6, F5, [[3]])
    v = decide(a, b)
    assert v.status is Status.NOT_EQUIVALENT and v.method is Method.MULTIPLIER
    assert v.ci_certified and v.candidates_checked == 2
    assert equivalence_bruteforce(a.linear, b.linear) is None


def test_uncertified_inconclusive():
    codes = enumerate_cyclic_codes(12, F5)
    i, j = next((i, j) for i in codes for j in codes
                if i.dim == j.dim and decide(i, j).status is Status.INCONCLUSIVE)
    v = decide(i, j)
    assert not v.ci_certified and v.candidates_checked == 4 and v.witness is None


def test_oracle_escalation_small():
    """n = 4 over F_3 is not certified; the oracle settles the undecided pairs."""
    codes = enumerate_cyclic_codes(4, F3)
    for i in codes:
        for j in codes:
            v = decide(i, j, oracle=True)
            truth = equivalence_bruteforce(i.linear, j.linear)
            assert v.status is not Status.INCONCLUSIVE
            assert (v.status is Status.EQUIVALENT) == (truth is not None)
            if v.witness is not None:
                assert witness_holds(i, j, v.witness)


def test_threads_same_verdict():
    codes = enumerate_cyclic_codes(15, F2)
    rng = random.Random(5)
    for _ in range(20):
        i, j = rng.choice(codes), rng.choice(codes)
        a, b = decide(i, j), decide(i, j, threads=4)
        assert (a.status, a.multiplier, a.candidates_checked) == (b.status, b.multiplier, b.candidates_checked)


def test_mismatched_inputs():
    with pytest.raises(LengthMismatch):
        decide(code_from_cosets(7, F2, []), code_from_cosets(5, F2, []))
    with pytest.raises(FieldMismatch):
        decide(code_from_cosets(4, F3, []), code_from_cosets(4, F5, []))


def test_verdict_json_shape():
    a = code_from_cosets(7, F2, [[1, 2, 4]])
    j = decide(a, a).to_json(timings=False)
    assert j == {"status": "EquivalentVia", "witness": list(range(7)), "method": "multiplier",
                 "candidates_checked": 1, "ci_certified": True, "elapsed_ms": 0.0}
