"""
Verification Report Models

Structured results of the cross-construction check and the orthonormality
check. Reports carry the numbers behind a pass/fail verdict and serialize to
JSON for the command-line front end.
"""

from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple
import json

import numpy as np

from .multi_index import MultiIndex


class CheckStatus(Enum):
    """Outcome of a numerical check"""
    PASSED = "passed"
    FAILED = "failed"


@dataclass
class PairDiscrepancy:
    """
    Largest coefficient discrepancy between two tables, with the multi-index
    where it occurs.
    """
    first: str
    second: str
    max_discrepancy: float
    worst_index: Optional[MultiIndex]
    tolerance: float

    @property
    def status(self) -> CheckStatus:
        return CheckStatus.PASSED if self.max_discrepancy <= self.tolerance else CheckStatus.FAILED

    def to_dict(self) -> Dict[str, Any]:
        return {
            'pair': f"{self.first}-{self.second}",
            'max_discrepancy': self.max_discrepancy,
            'worst_index': list(self.worst_index) if self.worst_index is not None else None,
            'tolerance': self.tolerance,
            'status': self.status.value,
        }


@dataclass
class CrosscheckReport:
    """
    Pairwise comparison of the recurrence, generating-function, Rodrigues and
    ladder tables, optionally against a table read from disk.
    """
    d: int
    K: int
    tolerance: float
    discrepancies: List[PairDiscrepancy] = field(default_factory=list)
    errors: List[str] = field(default_factory=list)
    created_at: datetime = field(default_factory=datetime.now)

    @property
    def status(self) -> CheckStatus:
        if self.errors or any(p.status == CheckStatus.FAILED for p in self.discrepancies):
            return CheckStatus.FAILED
        return CheckStatus.PASSED

    @property
    def passed(self) -> bool:
        return self.status == CheckStatus.PASSED

    def worst(self) -> Optional[PairDiscrepancy]:
        if not self.discrepancies:
            return None
        return max(self.discrepancies, key=lambda p: p.max_discrepancy)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'd': self.d,
            'K': self.K,
            'tolerance': self.tolerance,
            'status': self.status.value,
            'discrepancies': [p.to_dict() for p in self.discrepancies],
            'errors': self.errors,
            'created_at': self.created_at.isoformat(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def get_summary(self) -> List[str]:
        """One line per compared pair, suitable for printing."""
        lines = [
            f"{p.first:>10} vs {p.second:<10} max discrepancy {p.max_discrepancy:.3e}"
            + (f" at k={tuple(p.worst_index)}" if p.worst_index is not None else "")
            + f" [{p.status.value}]"
            for p in self.discrepancies
        ]
        lines.extend(f"error: {message}" for message in self.errors)
        return lines


@dataclass
class GramReport:
    """Gram matrix of the basis functions with |k| <= K and its distance to I."""
    d: int
    K: int
    nodes_per_dim: int
    indices: List[MultiIndex]
    matrix: np.ndarray
    tolerance: float

    @property
    def deviation(self) -> float:
        """max |G - I| over all entries."""
        return float(np.max(np.abs(self.matrix - np.eye(len(self.indices)))))

    @property
    def worst_entry(self) -> Tuple[MultiIndex, MultiIndex]:
        i, j = np.unravel_index(np.argmax(np.abs(self.matrix - np.eye(len(self.indices)))), self.matrix.shape)
        return self.indices[i], self.indices[j]

    @property
    def status(self) -> CheckStatus:
        return CheckStatus.PASSED if self.deviation <= self.tolerance else CheckStatus.FAILED

    @property
    def passed(self) -> bool:
        return self.status == CheckStatus.PASSED

    def to_dict(self) -> Dict[str, Any]:
        return {
            'd': self.d,
            'K': self.K,
            'nodes_per_dim': self.nodes_per_dim,
            'size': len(self.indices),
            'deviation': self.deviation,
            'tolerance': self.tolerance,
            'status': self.status.value,
        }

    def get_summary(self) -> str:
        first, second = self.worst_entry
        return (
            f"Gram matrix {len(self.indices)}x{len(self.indices)} (d={self.d}, K={self.K}, "
            f"n={self.nodes_per_dim}): max |G - I| = {self.deviation:.3e} at "
            f"({tuple(first)}, {tuple(second)}) [{self.status.value}]"
        )
