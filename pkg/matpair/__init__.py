# matpair/__init__.py
"""
Matrix pairs, the rank-one membership test, the conjugation action and
the Wilson chart.
"""

from .errors import (
    CMSpaceError,
    NotAMemberError,
    SingularConjugatorError,
    EigenvalueCollisionError,
    SamplingExhaustedError,
    ChartError,
    SchemaError,
)
from .models import MatrixPair, WilsonChartPoint, Tolerances, MembershipReport
from .membership import (
    commutator,
    commutator_defect,
    defect_ratio,
    is_member,
    require_member,
    conjugate,
    from_wilson_chart,
    chart_coordinates,
    order_eigenvalues,
)
from .sampling import sample, sample_chart_points, random_conjugator, complex_gaussian, COVERAGE_NOTE

__all__ = [
    'CMSpaceError',
    'NotAMemberError',
    'SingularConjugatorError',
    'EigenvalueCollisionError',
    'SamplingExhaustedError',
    'ChartError',
    'SchemaError',
    'MatrixPair',
    'WilsonChartPoint',
    'Tolerances',
    'MembershipReport',
    'commutator',
    'commutator_defect',
    'defect_ratio',
    'is_member',
    'require_member',
    'conjugate',
    'from_wilson_chart',
    'chart_coordinates',
    'order_eigenvalues',
    'sample',
    'sample_chart_points',
    'random_conjugator',
    'complex_gaussian',
    'COVERAGE_NOTE',
]
