"""
Semiclassical Wave Packet SDK

Multivariate polynomial prefactors of semiclassical wave packets, built four
independent ways and checked against each other.

Given an admissible width pair (A, B) with A^*B + B^*A = 2I and
A^tB - B^tA = 0, the SDK provides:

- Polar decomposition A = |A| U and the y-frame y = |A|^{-1} x / sqrt(hbar)
- Polynomial tables P_k for |k| <= K by three-term recurrence, generating
  function expansion, Rodrigues-type differentiation and raising operators
- Closed forms of the generating function and its derivatives
- Raising and lowering operators acting on Gaussian-times-polynomial states
- Evaluation of phi_0 and phi_k at points and on grids
- Gram matrices on tensor Gauss-Hermite grids
- A command-line interface (``wavepacket``) writing JSON and CSV

USAGE:
    from wavepacket_sdk import WavePacketEngine

    with WavePacketEngine({'order_cap': 8}) as engine:
        params = engine.generate(seed=7, d=2)
        report = engine.crosscheck(params, K=4)
        print(report.passed)

All services accept a WavePacketConfig (or a dict of overrides) and an
optional logger; errors derive from WavePacketError and carry context and
suggestions.
"""

import logging
import sys
from logging.handlers import RotatingFileHandler
from typing import Optional

# Version information
__version__ = "1.0.0"
__license__ = "MIT"

# Core exports
from .core.engine import WavePacketEngine
from .core.config import WavePacketConfig, load_config_from_file, merge_configs
from .core.exceptions import (
    WavePacketError,
    ValidationError,
    AdmissibilityError,
    SingularityError,
    CapacityError,
    UnsupportedInputError,
    GenerationError,
    TableIntegrityError,
    FileOperationError,
    ConfigurationError,
    aggregate_exceptions,
    handle_exception
)
from .core.linalg import (
    check_admissible,
    polar_decompose,
    principal_axes,
    inv_sqrt_det,
    generate_params
)

# Model exports
from .models.multi_index import MultiIndex, enumerate_upto, order_and_factorial, add_unit
from .models.params_model import PacketParams, PolarForm, AdmissibilityReport
from .models.polynomial_model import SparsePoly, PolyTable, Frame, ConstructionMethod
from .models.state_model import GaussianState, QuadratureRule
from .models.report_model import CheckStatus, CrosscheckReport, GramReport, PairDiscrepancy

# Service exports
from .services.construction_service import (
    ConstructionService,
    build_recurrence,
    build_generating,
    build_rodrigues,
    eval_generating
)
from .services.ladder_service import LadderService, raise_lemma, raise_definition, lower, build_ladder
from .services.wavepacket_service import WavePacketService, eval_phi0, eval_phik, phi0_density
from .services.quadrature_service import QuadratureService, gauss_hermite, gram_matrix
from .services.verification_service import VerificationService
from .services.file_service import FileService

__all__ = [
    '__version__',
    '__license__',

    # Core components
    'WavePacketEngine',
    'WavePacketConfig',
    'load_config_from_file',
    'merge_configs',

    # Exceptions
    'WavePacketError',
    'ValidationError',
    'AdmissibilityError',
    'SingularityError',
    'CapacityError',
    'UnsupportedInputError',
    'GenerationError',
    'TableIntegrityError',
    'FileOperationError',
    'ConfigurationError',
    'aggregate_exceptions',
    'handle_exception',

    # Linear algebra
    'check_admissible',
    'polar_decompose',
    'principal_axes',
    'inv_sqrt_det',
    'generate_params',

    # Models
    'MultiIndex',
    'enumerate_upto',
    'order_and_factorial',
    'add_unit',
    'PacketParams',
    'PolarForm',
    'AdmissibilityReport',
    'SparsePoly',
    'PolyTable',
    'Frame',
    'ConstructionMethod',
    'GaussianState',
    'QuadratureRule',
    'CheckStatus',
    'CrosscheckReport',
    'GramReport',
    'PairDiscrepancy',

    # Services
    'ConstructionService',
    'LadderService',
    'WavePacketService',
    'QuadratureService',
    'VerificationService',
    'FileService',
    'build_recurrence',
    'build_generating',
    'build_rodrigues',
    'build_ladder',
    'eval_generating',
    'raise_lemma',
    'raise_definition',
    'lower',
    'eval_phi0',
    'eval_phik',
    'phi0_density',
    'gauss_hermite',
    'gram_matrix',

    'configure_logging',
]


def configure_logging(level: str = 'INFO', format_type: str = 'structured',
                      file_path: Optional[str] = None, max_size: int = 10 * 1024 * 1024,
                      backup_count: int = 5) -> logging.Logger:
    """
    Configure the ``wavepacket_sdk`` logger.

    Console output goes to stderr; stdout is reserved for data.

    Args:
        level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        format_type: Format type ('simple', 'structured', 'json')
        file_path: Optional file path for rotating log output
        max_size: Rotation size in bytes for the log file
        backup_count: Number of rotated log files to keep

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger('wavepacket_sdk')
    logger.setLevel(getattr(logging, level.upper()))
    logger.handlers.clear()
    logger.propagate = False

    if format_type == 'json':
        formatter = logging.Formatter(
            '{"timestamp": "%(asctime)s", "level": "%(levelname)s", '
            '"module": "%(name)s", "message": "%(message)s"}'
        )
    elif format_type == 'structured':
        formatter = logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')
    else:
        formatter = logging.Formatter('%(levelname)s - %(message)s')

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    if file_path:
        try:
            file_handler = RotatingFileHandler(file_path, maxBytes=max_size, backupCount=backup_count)
            file_handler.setFormatter(formatter)
            logger.addHandler(file_handler)
        except OSError as e:
            logger.warning(f"Failed to setup file logging: {e}")

    return logger


# Library default: silent unless the application configures logging.
logging.getLogger('wavepacket_sdk').addHandler(logging.NullHandler())
