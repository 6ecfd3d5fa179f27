"""
Noncongruence
=============

Finite index subgroups of the modular group PSL2(Z).

Subgroups up to conjugacy are enumerated as pairs of permutations
(sigma_S, sigma_R) with sigma_S^2 = sigma_R^3 = 1 acting transitively on the
cosets. The package computes their invariants, decides whether they are
congruence subgroups, groups them into passports, stores them in a labelled
JSON database and evaluates period lattices of weight two cusp forms.
"""

__version__ = "0.1"

from .errors import (InvariantViolation, LabelError, LatticeError,
                     PermutationError, PrecisionError, RecordSchemaError)
from .perm import Permutation, compose, conjugate, parse_cycles, format_cycles
from .canonical import CanonicalPairKey, CanonicalShape, canonical_pair
from .pairs import PermutationPair, enumerate_classes, multiplicity_audit
from .matrix import MatrixPSL2, coset_representatives, matrix_generators
from .congruence import gamma0_pair, gamma1_pair, gamma_pair, is_congruence, level
from .analysis import (Signature, SubgroupRecord, analyze_pair,
                       group_into_passports, groups_conjugate_in_Smu)
from .database import (assign_labels, export_records, import_records,
                       normalize_sigma_T, parse_label, render_label)
from .periods import (FourierExpansion, j_invariant, lattice_from_periods,
                      period_of, periods_of)
from .lattice import recognize_algebraic

__all__ = [
    'InvariantViolation', 'LabelError', 'LatticeError', 'PermutationError',
    'PrecisionError', 'RecordSchemaError',
    'Permutation', 'compose', 'conjugate', 'parse_cycles', 'format_cycles',
    'CanonicalPairKey', 'CanonicalShape', 'canonical_pair',
    'PermutationPair', 'enumerate_classes', 'multiplicity_audit',
    'MatrixPSL2', 'coset_representatives', 'matrix_generators',
    'gamma0_pair', 'gamma1_pair', 'gamma_pair', 'is_congruence', 'level',
    'Signature', 'SubgroupRecord', 'analyze_pair', 'group_into_passports',
    'groups_conjugate_in_Smu',
    'assign_labels', 'export_records', 'import_records', 'normalize_sigma_T',
    'parse_label', 'render_label',
    'FourierExpansion', 'j_invariant', 'lattice_from_periods', 'period_of',
    'periods_of', 'recognize_algebraic',
]
