"""Permutation equivalence of semisimple cyclic codes via multiplier solving sets."""

__version__ = "0.1.0"

from .cycliccode import (CyclicCode, code_from_cosets, code_from_generator, code_from_idempotent,
                         cyclotomic_cosets, enumerate_cyclic_codes, factor_xn_minus_1,
                         generator_to_idempotent)
from .gf import FieldElement, FieldSpec, field_from_order, field_new
from .linearcode import LinearCode, Permutation, permute_code, rref_canonical
from .polyring import Poly, RingElement
from .solving import (EquivalenceVerdict, Method, Status, coefficient_partition, is_ci_certified,
                      multiplier_solving_set, test_equivalence)

__all__ = [
    "CyclicCode", "EquivalenceVerdict", "FieldElement", "FieldSpec", "LinearCode", "Method",
    "Permutation", "Poly", "RingElement", "Status", "code_from_cosets", "code_from_generator",
    "code_from_idempotent", "coefficient_partition", "cyclotomic_cosets", "enumerate_cyclic_codes",
    "factor_xn_minus_1", "field_from_order", "field_new", "generator_to_idempotent",
    "is_ci_certified", "multiplier_solving_set", "permute_code", "rref_canonical", "test_equivalence",
]
