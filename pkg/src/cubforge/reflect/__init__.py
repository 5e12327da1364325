"""Finite reflection groups, invariant harmonics and Euclidean design criteria."""
from .groups import (
    CornerOrbit,
    OrbitCapExceeded,
    ReflectionGroupData,
    UnsupportedGroup,
    corner_orbit,
    group_data,
    orbit,
    orbit_sizes,
)
from .basis import invariant_basis, printed_certificate, printed_u
from .invariants import (
    InvariantSpec,
    SymCombination,
    ZonalGroupSum,
    ZonalPolynomial,
    check_harmonic,
    eval_at_corner,
    eval_invariant,
    molien_dims,
)
from .sobolev import (
    BasisUnavailable,
    NotFound,
    PositivityCertificate,
    ReferenceComparison,
    WeightFamily,
    certify_nonexistence,
    classify_weights,
    compare_reference_families,
    compare_with_printed,
    euclidean_design_check,
    reference_families,
    sphere_design_from_orbit,
    u_vectors,
    validate_certificate,
)
