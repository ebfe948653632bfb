"""
Wave Packet Engine

Orchestration layer used by the command-line interface and by library users
who want one object that owns configuration, logging and all services. The
engine resolves parameters (from a file or a seed), builds polynomial tables
concurrently, runs the cross-construction and orthonormality checks, and
prepares CSV output.
"""

import logging
import uuid
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, Iterable, Optional, Sequence, Tuple, Union

import pandas as pd

from .config import WavePacketConfig
from .exceptions import TableIntegrityError, ValidationError, aggregate_exceptions
from .linalg import check_admissible, generate_params
from ..models.multi_index import MultiIndex
from ..models.params_model import AdmissibilityReport, PacketParams
from ..models.polynomial_model import ConstructionMethod, PolyTable
from ..models.report_model import CrosscheckReport, GramReport
from ..services.construction_service import ConstructionService
from ..services.file_service import FileService
from ..services.ladder_service import LadderService
from ..services.quadrature_service import QuadratureService
from ..services.verification_service import VerificationService
from ..services.wavepacket_service import WavePacketService

CROSSCHECK_METHODS = (
    ConstructionMethod.RECURRENCE,
    ConstructionMethod.GENERATING,
    ConstructionMethod.RODRIGUES,
    ConstructionMethod.LADDER,
)


class WavePacketEngine:
    """
    Facade over the SDK services with a shared configuration, logger and
    thread pool.
    """

    def __init__(
        self,
        config: Union[WavePacketConfig, Dict[str, Any], None] = None,
        logger: Optional[logging.Logger] = None
    ):
        """
        Initialize the engine and its services.

        Args:
            config: WavePacketConfig or a dictionary of overrides
            logger: Parent logger; defaults to the package logger
        """
        self.config = config if isinstance(config, WavePacketConfig) else WavePacketConfig(config or {})
        self.session_id = str(uuid.uuid4())
        self.logger = logger or logging.getLogger('wavepacket_sdk')

        self.thread_pool = ThreadPoolExecutor(
            max_workers=self.config.max_workers,
            thread_name_prefix="WavePacket"
        )

        self._initialize_services()
        self.logger.debug(f"Engine initialized (session {self.session_id})")

    def _initialize_services(self):
        self.construction_service = ConstructionService(self.config, self.logger.getChild('construction'))
        self.ladder_service = LadderService(self.config, self.logger.getChild('ladder'))
        self.wavepacket_service = WavePacketService(self.config, self.logger.getChild('wavepacket'))
        self.quadrature_service = QuadratureService(self.config, self.logger.getChild('quadrature'))
        self.verification_service = VerificationService(self.config, self.logger.getChild('verification'))
        self.file_service = FileService(self.config, self.logger.getChild('files'))

    def __enter__(self) -> 'WavePacketEngine':
        return self

    def __exit__(self, exc_type, exc, tb):
        self.shutdown()

    def shutdown(self):
        self.thread_pool.shutdown(wait=True)

    # Parameters

    def generate(self, seed: int, d: int, spread: float = 1.0, hbar: float = 1.0) -> PacketParams:
        return generate_params(
            seed,
            d,
            spread=spread,
            hbar=hbar,
            condition_cap=self.config.condition_cap,
            max_retries=self.config.max_generation_retries,
            tol=self.config.admissibility_tol
        )

    def resolve_params(
        self,
        params_path: Optional[str] = None,
        seed: Optional[int] = None,
        d: Optional[int] = None,
        spread: float = 1.0,
        hbar: float = 1.0
    ) -> PacketParams:
        """
        Parameters from ``params_path`` or, when absent, generated from
        ``seed`` and ``d``. Exactly one source must be given.
        """
        if params_path is not None:
            if seed is not None or d is not None:
                raise ValidationError(
                    "Give either a params file or --seed/--d, not both",
                    field_name='params'
                )
            return self.file_service.load_params(params_path)
        if seed is None or d is None:
            raise ValidationError(
                "Parameters need a params file or both --seed and --d",
                field_name='params'
            )
        return self.generate(seed, d, spread, hbar)

    def validate(self, params: PacketParams) -> AdmissibilityReport:
        report = check_admissible(params.A, params.B, self.config.admissibility_tol)
        log = self.logger.info if report.ok else self.logger.warning
        log(f"Admissibility residuals {report.residual1:.3e}, {report.residual2:.3e} (tol {report.tolerance:g})")
        return report

    # Tables

    def build_table(self, params: PacketParams, K: int,
                    method: Union[ConstructionMethod, str] = ConstructionMethod.RECURRENCE,
                    operator: str = 'lemma') -> PolyTable:
        method = ConstructionMethod(method)
        if method == ConstructionMethod.RECURRENCE:
            return self.construction_service.build_recurrence(params, K)
        if method == ConstructionMethod.GENERATING:
            return self.construction_service.build_generating(params, K)
        if method == ConstructionMethod.RODRIGUES:
            return self.construction_service.build_rodrigues(params, K)
        return self.ladder_service.build_ladder(params, K, operator)

    def build_tables(self, params: PacketParams, K: int,
                     methods: Iterable[ConstructionMethod] = CROSSCHECK_METHODS) -> Dict[str, PolyTable]:
        """
        Build several tables concurrently. Results keep the order of
        ``methods``; failures are aggregated into one error.
        """
        methods = list(methods)
        futures = [
            (method, self.thread_pool.submit(self.build_table, params, K, method))
            for method in methods
        ]
        tables, errors = {}, []
        for method, future in futures:
            try:
                tables[method.value] = future.result()
            except Exception as e:
                errors.append(e)
        if errors:
            raise aggregate_exceptions(errors)
        return tables

    def crosscheck(self, params: PacketParams, K: int, verify_path: Optional[str] = None) -> CrosscheckReport:
        """
        Build all constructions and compare them pairwise. With
        ``verify_path``, also compare the stored table against each of them;
        a stored table that violates table invariants fails the check.
        """
        reference, load_error = None, None
        if verify_path is not None:
            try:
                reference = self.file_service.load_table(verify_path, params)
            except (TableIntegrityError, ValidationError) as e:
                load_error = e

        tables = self.build_tables(params, K)
        report = self.verification_service.crosscheck(tables, reference)
        if load_error is not None:
            report.errors.append(f"Stored table {verify_path} is invalid: {load_error.message}")
            self.logger.warning(report.errors[-1])
        return report

    # Evaluation

    def evaluate(self, params: PacketParams, k: Sequence[int],
                 axes: Sequence[Tuple[float, float, int]]) -> pd.DataFrame:
        """phi_k on a grid as a DataFrame with columns x1..xd, re, im."""
        k = MultiIndex(k)
        if len(k) != params.d:
            raise ValidationError(
                f"Multi-index {tuple(k)} does not have dimension {params.d}",
                field_name='k',
                actual_value=tuple(k)
            )
        table = self.construction_service.build_recurrence(params, k.order)
        points, values = self.wavepacket_service.evaluate_grid(params, k, table, axes)
        return self.file_service.eval_frame(points, values)

    def gram(self, params: PacketParams, K: int, n: Optional[int] = None,
             method: Union[ConstructionMethod, str] = ConstructionMethod.RECURRENCE) -> GramReport:
        """Orthonormality report; the node count is validated before any table is built."""
        n = K + self.config.quadrature_margin if n is None else n
        if n < K + 1:
            raise ValidationError(
                f"{n} nodes per dimension under-resolve K={K}; need at least {K + 1}",
                field_name='nodes',
                expected_type=f'int >= {K + 1}',
                actual_value=n
            )
        table = self.build_table(params, K, method)
        return self.quadrature_service.gram_report(params, K, table, n)

    def gram_frame(self, report: GramReport) -> pd.DataFrame:
        return self.file_service.gram_frame(report.indices, report.matrix)
