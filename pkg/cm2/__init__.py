# cm2/__init__.py
"""
Explicit model of the two-particle space: coordinates, canonical forms,
the Z2 x Z2 identifications, ring generators and the compatible-pair
certificate.
"""

from .coords import (
    CM2Coords,
    CM2Generators,
    EXACT,
    FLOAT,
    gaussian,
    exact_value,
    float_value,
    to_exact,
    to_float,
)
from .model import (
    PHI,
    PSI,
    cm2_constraint,
    on_variety,
    cm2_to_pair,
    z2_action_1,
    z2_action_2,
    cm2_orbit,
    same_orbit,
    cm2_generators,
    generators_from_pair,
    orbit_generator_spread,
    cm2_flows,
    cm2_transpose_swap,
)
from .canonical import pair_to_cm2, h_roots, triangularize_y, eliminate_x12
from .certificate import (
    ClauseResult,
    CompatibilityCertificate,
    compatibility_grid,
    float_grid,
    verify_compatible_pair,
)

__all__ = [
    'CM2Coords',
    'CM2Generators',
    'EXACT',
    'FLOAT',
    'gaussian',
    'exact_value',
    'float_value',
    'to_exact',
    'to_float',
    'PHI',
    'PSI',
    'cm2_constraint',
    'on_variety',
    'cm2_to_pair',
    'z2_action_1',
    'z2_action_2',
    'cm2_orbit',
    'same_orbit',
    'cm2_generators',
    'generators_from_pair',
    'orbit_generator_spread',
    'cm2_flows',
    'cm2_transpose_swap',
    'pair_to_cm2',
    'h_roots',
    'triangularize_y',
    'eliminate_x12',
    'ClauseResult',
    'CompatibilityCertificate',
    'compatibility_grid',
    'float_grid',
    'verify_compatible_pair',
]
