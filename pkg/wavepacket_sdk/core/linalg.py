"""
Complex matrix utilities

Admissibility checks for (A, B), the polar decomposition A = |A| U,
principal-branch determinant powers and the seeded generator of admissible
parameter sets. Every function is pure and takes tolerances as arguments;
defaults match WavePacketConfig.
"""

import logging
from typing import Tuple

import numpy as np
import scipy.linalg

from .exceptions import AdmissibilityError, GenerationError, SingularityError, ValidationError
from ..models.params_model import AdmissibilityReport, PacketParams, PolarForm

logger = logging.getLogger(__name__)

DEFAULT_ADMISSIBILITY_TOL = 1e-10
DEFAULT_SINGULAR_REL = 1e-12
DEFAULT_CONDITION_CAP = 1e4
DEFAULT_MAX_RETRIES = 100


def as_square_matrix(matrix, name: str = 'matrix') -> np.ndarray:
    """
    Coerce to a finite complex square array.

    Raises:
        ValidationError: On wrong shape or non-finite entries
    """
    array = np.asarray(matrix, dtype=complex)
    if array.ndim == 0:
        array = array.reshape(1, 1)
    if array.ndim != 2 or array.shape[0] != array.shape[1] or array.shape[0] == 0:
        raise ValidationError(
            f"{name} must be a nonempty square matrix, got shape {array.shape}",
            field_name=name,
            expected_type='d x d complex matrix',
            actual_value=array.shape
        )
    if not np.all(np.isfinite(array)):
        raise ValidationError(f"{name} has non-finite entries", field_name=name)
    return array


def max_entry(matrix) -> float:
    return float(np.max(np.abs(matrix))) if np.size(matrix) else 0.0


def _require_invertible(s: np.ndarray, scale: float, singular_rel: float, name: str):
    threshold = singular_rel * scale
    smallest = float(s.min())
    if not smallest > threshold:
        raise SingularityError(
            f"{name} is singular or too ill-conditioned: smallest singular value "
            f"{smallest:.3e} <= {threshold:.3e}",
            smallest_singular_value=smallest,
            threshold=threshold
        )


def check_admissible(A, B, tol: float = DEFAULT_ADMISSIBILITY_TOL) -> AdmissibilityReport:
    """
    Measure the two admissibility identities A*B + B*A = 2I and A^tB - B^tA = 0.

    Residuals are max-entry absolute errors.
    """
    A = as_square_matrix(A, 'A')
    B = as_square_matrix(B, 'B')
    if A.shape != B.shape:
        raise ValidationError(
            f"A and B dimensions differ: {A.shape} vs {B.shape}",
            field_name='B',
            expected_type=str(A.shape),
            actual_value=B.shape
        )

    identity = np.eye(A.shape[0])
    residual1 = max_entry(A.conj().T @ B + B.conj().T @ A - 2 * identity)
    residual2 = max_entry(A.T @ B - B.T @ A)
    return AdmissibilityReport(
        ok=residual1 <= tol and residual2 <= tol,
        residual1=residual1,
        residual2=residual2,
        tolerance=tol
    )


def require_admissible(params: PacketParams, tol: float = DEFAULT_ADMISSIBILITY_TOL) -> AdmissibilityReport:
    """Return the report for an admissible pair, raise AdmissibilityError otherwise."""
    report = check_admissible(params.A, params.B, tol)
    if not report.ok:
        raise AdmissibilityError(
            f"Parameters are not admissible at tolerance {tol:g} "
            f"(residual1={report.residual1:.3e}, residual2={report.residual2:.3e})",
            residual1=report.residual1,
            residual2=report.residual2,
            tolerance=tol
        )
    return report


def polar_decompose(A, singular_rel: float = DEFAULT_SINGULAR_REL) -> PolarForm:
    """
    Polar form A = |A| U with |A| = sqrt(A A*).

    From the SVD A = W S V*: |A| = W S W* and U = W V*.
    """
    A = as_square_matrix(A, 'A')
    W, s, Vh = scipy.linalg.svd(A)
    _require_invertible(s, max_entry(A), singular_rel, 'A')

    absA = (W * s) @ W.conj().T
    absA = (absA + absA.conj().T) / 2
    U = W @ Vh

    for array in (absA, U, s):
        array.setflags(write=False)
    return PolarForm(absA=absA, U=U, singular_values=s)


def principal_axes(polar: PolarForm) -> Tuple[np.ndarray, np.ndarray]:
    """
    Real principal axes of a real symmetric |A|: |A| = W diag(sigma) W^t.

    Only meaningful under admissibility, where |A| is real; the imaginary
    part is discarded.

    Returns:
        (W, sigma) with W real orthogonal and sigma ascending and positive
    """
    real_part = polar.absA.real
    sigma, W = scipy.linalg.eigh((real_part + real_part.T) / 2)
    if not np.all(sigma > 0):
        raise SingularityError(
            "|A| has a non-positive eigenvalue",
            smallest_singular_value=float(sigma.min())
        )
    return W, sigma


def realness_defect(polar: PolarForm) -> float:
    """Max of |Im |A|| and |Re |A| - Re |A|^t|, relative to max|A|."""
    absA = polar.absA
    scale = max_entry(polar.reconstruct()) or 1.0
    return max(max_entry(absA.imag), max_entry(absA.real - absA.real.T)) / scale


def width_decomposition(params: PacketParams) -> Tuple[np.ndarray, np.ndarray]:
    """
    Split C = B A^{-1} into real symmetric P and S with C = P + iS.

    C is symmetrized first; under admissibility it is already complex
    symmetric and P equals |A|^{-2}.
    """
    C = params.B @ scipy.linalg.inv(params.A)
    C = (C + C.T) / 2
    return C.real.copy(), C.imag.copy()


def inv_sqrt_det(A, singular_rel: float = DEFAULT_SINGULAR_REL) -> complex:
    """
    (det A)^{-1/2} on the principal branch, arg(det A) taken in (-pi, pi].
    """
    A = as_square_matrix(A, 'A')
    s = scipy.linalg.svdvals(A)
    _require_invertible(s, max_entry(A), singular_rel, 'A')

    det = complex(scipy.linalg.det(A))
    angle = float(np.angle(det))
    if angle == -np.pi:
        angle = np.pi
    return 1.0 / (np.sqrt(abs(det)) * np.exp(0.5j * angle))


def _haar_unitary(rng: np.random.Generator, d: int) -> np.ndarray:
    Z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    Q, R = scipy.linalg.qr(Z)
    phases = np.diag(R) / np.abs(np.diag(R))
    return Q * phases


def _symmetric(rng: np.random.Generator, d: int) -> np.ndarray:
    G = rng.standard_normal((d, d))
    return (G + G.T) / 2


def _forced_symmetric(S, d: int) -> np.ndarray:
    S = np.broadcast_to(np.asarray(S, dtype=float), (d, d))
    if not np.array_equal(S, S.T):
        raise ValidationError("Forced S must be real symmetric", field_name='S')
    return np.array(S)


def _pair_from(A: np.ndarray, S: np.ndarray) -> np.ndarray:
    # (|A|^-2 + iS) A with |A|^-2 A = (A A*)^-1 A = A^{-*}
    return scipy.linalg.inv(A).conj().T + 1j * S @ A


def generate_params(
    seed: int,
    d: int,
    spread: float = 1.0,
    hbar: float = 1.0,
    condition_cap: float = DEFAULT_CONDITION_CAP,
    max_retries: int = DEFAULT_MAX_RETRIES,
    tol: float = DEFAULT_ADMISSIBILITY_TOL,
    forced_A=None,
    forced_S=None,
    a=None,
    eta=None,
) -> PacketParams:
    """
    Deterministic admissible parameters from a seed.

    A = R Q with R a real Gaussian matrix scaled by ``spread`` (resampled
    while cond(R) > condition_cap) and Q a Haar unitary, so |A| = sqrt(R R^t)
    is real. S is a random real symmetric matrix and B = (|A|^{-2} + iS) A.

    ``forced_A`` and ``forced_S`` replace the random draws. A forced A whose
    |A| is not real cannot be completed to an admissible pair.

    Raises:
        GenerationError: If no admissible draw is found within ``max_retries``
        AdmissibilityError: If a forced A has non-real |A|
    """
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise ValidationError(f"Dimension must be a positive integer, got {d!r}", field_name='d')
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)) or seed < 0:
        raise ValidationError(f"Seed must be a non-negative integer, got {seed!r}", field_name='seed')
    if not spread > 0:
        raise ValidationError(f"spread must be positive, got {spread!r}", field_name='spread')

    rng = np.random.default_rng(seed)

    if forced_A is not None:
        A = as_square_matrix(forced_A, 'A')
        if A.shape[0] != d:
            raise ValidationError(
                f"Forced A has dimension {A.shape[0]}, expected {d}",
                field_name='A',
                actual_value=A.shape
            )
        defect = realness_defect(polar_decompose(A))
        if defect > tol:
            raise AdmissibilityError(
                f"|A| of the forced matrix is not real symmetric (defect {defect:.3e})",
                tolerance=tol,
                context={'realness_defect': defect}
            )
        S = _symmetric(rng, d) if forced_S is None else _forced_symmetric(forced_S, d)
        params = PacketParams(d, hbar, A, _pair_from(A, S), a, eta)
        require_admissible(params, tol)
        return params

    for attempt in range(1, max_retries + 1):
        R = rng.standard_normal((d, d)) * spread
        condition = float(np.linalg.cond(R))
        if not condition <= condition_cap:
            logger.debug(f"Attempt {attempt}: cond(R)={condition:.3e} above cap {condition_cap:.3e}")
            continue

        A = R @ _haar_unitary(rng, d)
        S = _symmetric(rng, d) if forced_S is None else _forced_symmetric(forced_S, d)
        B = _pair_from(A, S)

        report = check_admissible(A, B, tol)
        if report.ok:
            logger.debug(f"Generated admissible pair for seed={seed}, d={d} after {attempt} attempt(s)")
            return PacketParams(d, hbar, A, B, a, eta)

        logger.debug(
            f"Attempt {attempt}: residuals {report.residual1:.3e}, {report.residual2:.3e} above {tol:g}"
        )

    raise GenerationError(
        f"No admissible pair found for seed={seed}, d={d} within {max_retries} attempts",
        attempts=max_retries,
        condition_cap=condition_cap
    )
