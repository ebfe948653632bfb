"""
Verification Service

Coefficient-wise comparison of polynomial tables built by different
constructions, aggregated into a CrosscheckReport.
"""

import itertools
import logging
import threading
from typing import Dict, Optional

from ..core.config import WavePacketConfig
from ..core.exceptions import TableIntegrityError
from ..models.polynomial_model import Frame, PolyTable, poly_discrepancy
from ..models.report_model import CheckStatus, CrosscheckReport, PairDiscrepancy


class VerificationService:
    """
    Service comparing polynomial tables and summarizing the results.
    """

    def __init__(self, config: Optional[WavePacketConfig] = None, logger: Optional[logging.Logger] = None):
        """
        Initialize verification service.

        Args:
            config: SDK configuration object
            logger: Logger instance for service operations
        """
        self.config = config or WavePacketConfig()
        self.logger = logger or logging.getLogger(__name__)

        self._metrics_lock = threading.Lock()
        self.performance_metrics = {
            'comparisons': 0,
            'failed_comparisons': 0,
        }

    def compare_tables(self, first: PolyTable, second: PolyTable,
                       first_name: Optional[str] = None, second_name: Optional[str] = None) -> PairDiscrepancy:
        """
        Largest coefficient discrepancy over the common multi-indices, using
        max|c1 - c2| / (1 + max|c|) per polynomial.

        Raises:
            TableIntegrityError: If the tables differ in dimension or frame
        """
        if first.d != second.d or first.frame != second.frame:
            raise TableIntegrityError(
                f"Cannot compare tables with (d, frame) = ({first.d}, {first.frame.value}) "
                f"and ({second.d}, {second.frame.value})"
            )
        worst_value, worst_index = 0.0, None
        for k in first.indices():
            if k not in second:
                continue
            value = poly_discrepancy(first[k], second[k])
            if worst_index is None or value > worst_value:
                worst_value, worst_index = value, k

        pair = PairDiscrepancy(
            first=first_name or first.method.value,
            second=second_name or second.method.value,
            max_discrepancy=worst_value,
            worst_index=worst_index,
            tolerance=self.config.crosscheck_tol
        )
        with self._metrics_lock:
            self.performance_metrics['comparisons'] += 1
            if pair.status == CheckStatus.FAILED:
                self.performance_metrics['failed_comparisons'] += 1
        return pair

    def crosscheck(self, tables: Dict[str, PolyTable], reference: Optional[PolyTable] = None,
                   reference_name: str = 'file') -> CrosscheckReport:
        """
        Compare every pair of ``tables`` and, when given, ``reference``
        against each of them.
        """
        first_table = next(iter(tables.values()))
        report = CrosscheckReport(d=first_table.d, K=first_table.K, tolerance=self.config.crosscheck_tol)

        for (name1, table1), (name2, table2) in itertools.combinations(tables.items(), 2):
            report.discrepancies.append(self.compare_tables(table1, table2, name1, name2))

        if reference is not None:
            if reference.d != report.d or reference.K != report.K or reference.frame != Frame.Y_FRAME:
                report.errors.append(
                    f"Reference table has (d, K, frame) = ({reference.d}, {reference.K}, "
                    f"{reference.frame.value}), expected ({report.d}, {report.K}, y)"
                )
            else:
                for name, table in tables.items():
                    report.discrepancies.append(self.compare_tables(reference, table, reference_name, name))

        worst = report.worst()
        if report.passed:
            self.logger.info(
                f"Crosscheck d={report.d} K={report.K} passed; worst discrepancy "
                f"{worst.max_discrepancy if worst else 0.0:.3e}"
            )
        else:
            self.logger.warning(f"Crosscheck d={report.d} K={report.K} failed")
            for line in report.get_summary():
                self.logger.warning(line)
        return report
