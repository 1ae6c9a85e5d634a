"""Zero-sum sequence machinery over rank-2 cyclic groups.

Subpackage map:

- groups: element arithmetic, bases, automorphisms of (Z/nZ)^2
- sequences: multiset sequences and their JSON text format
- subsums: length-restricted subsequence-sum DP
- enumeration: orderly search up to symmetry, Davenport-style constants, cache
- properties: coset-support witnesses and the two closed sequence shapes
- classification: long zero-sum classification and the exceptional family
- perturbation: two-term exchange lemmas
- decomposition: block decompositions and swaps
- lifting: multiplication-by-m homomorphisms and lifted verification
- cli: the ``zs`` command line front end
"""

from __future__ import annotations

__version__ = "0.1.0"

from .classification import classify_long_zero_sum, construct_exceptional, verify_casen
from .decomposition import (
    BlockDecomposition,
    SwapContext,
    apply_swap,
    associated_sequence,
    block_decompositions,
    named_swap,
)
from .enumeration import (
    EnumSpec,
    davenport,
    enumerate_sequences,
    max_length_with,
    resolve_cache,
    s_leq,
)
from .groups import Automorphism, Elem, Group, group
from .lifting import (
    Homomorphism,
    mul_hom,
    psi_split,
    verify_propbfix_item1,
    verify_propbfix_item2,
)
from .perturbation import perturb, upsilon_class, verify_perturbation
from .properties import (
    has_property_a,
    matches_eq1,
    matches_eq2,
    property_a_witnesses,
    verify_property_b,
    verify_property_c,
)
from .report import Report
from .sequences import Sequence, canonicalize
from .subsums import (
    SumTable,
    find_zero_sum_subsequence,
    is_minimal_zero_sum,
    is_zero_sum_free,
    restricted_sums,
    subsequence_sums,
)

__all__ = [
    "__version__",
    "Automorphism",
    "Elem",
    "Group",
    "group",
    "Sequence",
    "canonicalize",
    "SumTable",
    "restricted_sums",
    "subsequence_sums",
    "is_zero_sum_free",
    "is_minimal_zero_sum",
    "find_zero_sum_subsequence",
    "EnumSpec",
    "enumerate_sequences",
    "max_length_with",
    "davenport",
    "s_leq",
    "resolve_cache",
    "Report",
    "property_a_witnesses",
    "has_property_a",
    "matches_eq1",
    "matches_eq2",
    "verify_property_b",
    "verify_property_c",
    "classify_long_zero_sum",
    "construct_exceptional",
    "verify_casen",
    "upsilon_class",
    "perturb",
    "verify_perturbation",
    "Homomorphism",
    "mul_hom",
    "psi_split",
    "verify_propbfix_item1",
    "verify_propbfix_item2",
    "BlockDecomposition",
    "SwapContext",
    "block_decompositions",
    "apply_swap",
    "named_swap",
    "associated_sequence",
]
