"""
Wave Packet SDK Models

Data models for multi-indices, width parameters, sparse polynomials and their
tables, Gaussian states, quadrature rules and check reports.
"""

from .multi_index import (
    MultiIndex,
    enumerate_upto,
    enumeration_size,
    order_and_factorial,
    add_unit
)

from .params_model import (
    PacketParams,
    PolarForm,
    AdmissibilityReport
)

from .polynomial_model import (
    Frame,
    ConstructionMethod,
    SparsePoly,
    PolyTable
)

from .state_model import GaussianState, QuadratureRule

from .report_model import (
    CheckStatus,
    PairDiscrepancy,
    CrosscheckReport,
    GramReport
)

__all__ = [
    # Indices
    'MultiIndex',
    'enumerate_upto',
    'enumeration_size',
    'order_and_factorial',
    'add_unit',

    # Parameters
    'PacketParams',
    'PolarForm',
    'AdmissibilityReport',

    # Polynomials
    'Frame',
    'ConstructionMethod',
    'SparsePoly',
    'PolyTable',

    # States
    'GaussianState',
    'QuadratureRule',

    # Reports
    'CheckStatus',
    'PairDiscrepancy',
    'CrosscheckReport',
    'GramReport'
]
