# flexibility/__init__.py
"""
Numeric certificates for the tangent-span (flexibility) and the
one-vector generating (tangential semi-homogeneity) properties.
"""

from .rank import RankDecision, numeric_rank
from .tangents import (
    SpanReport,
    FlexibilitySummary,
    flow_tangents,
    orbit_tangents,
    defect_drift,
    span_report,
    flexibility_check,
    summary_frame,
)
from .semihomogeneity import (
    TangentialMaps,
    SemiHomogeneityReport,
    fk_gk_maps,
    holomorphic_derivative,
    chart_jacobian,
    generator_block,
    semi_homogeneity_check,
)

__all__ = [
    'RankDecision',
    'numeric_rank',
    'SpanReport',
    'FlexibilitySummary',
    'flow_tangents',
    'orbit_tangents',
    'defect_drift',
    'span_report',
    'flexibility_check',
    'summary_frame',
    'TangentialMaps',
    'SemiHomogeneityReport',
    'fk_gk_maps',
    'holomorphic_derivative',
    'chart_jacobian',
    'generator_block',
    'semi_homogeneity_check',
]
