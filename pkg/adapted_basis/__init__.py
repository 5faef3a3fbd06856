"""
Adapted homology bases of prime order automorphisms of compact Riemann
surfaces: the one-relator presentation of the surface group, the action of
the automorphism on homology, the intersection form, and a symplectic
change of basis.
"""

from adapted_basis.basis import (
    BasisElement,
    BasisKind,
    ResidueContext,
    action_matrix,
    bracket_residue,
    canonical_intersection,
    enumerate_basis,
    enumerate_basis_t0,
    exceptional_block,
    homology_action_full,
    input_fixed_point,
    intersection_matrix,
    intersection_number,
    tilde_order,
)
from adapted_basis.errors import AdaptedBasisError, InvariantViolation
from adapted_basis.invariants import (
    PrimeOrderData,
    normalize_conjugacy,
    power_class,
    validate,
    validate_fixed_point_free,
)
from adapted_basis.matrices import IntMatrix
from adapted_basis.rewriter import (
    base_presentation,
    check_evenly_worded,
    check_fully_linked,
    coset_of,
    induced_action_on_generators,
    rewrite_tau,
    simplify_to_single_relator,
    single_relator_presentation,
    subgroup_presentation,
    t0_presentation,
)
from adapted_basis.symplectic import (
    SymplecticChange,
    is_symplectic,
    preserves_form,
    symplectic_basis,
    transform_action,
)
from adapted_basis.verification import CheckResult, sweep, verify
from adapted_basis.words import FreeWord, GeneratorSymbol, Presentation

__version__ = '1.0.0'
