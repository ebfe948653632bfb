"""
File Service for the Wave Packet SDK

Reads and writes the three external formats: params JSON, polynomial table
JSON and CSV (grid evaluations and Gram matrices). The path ``-`` (or no
path) means stdin for reads and stdout for writes.
"""

import json
import sys
from pathlib import Path
from typing import Any, Optional, Sequence
import logging

import numpy as np
import pandas as pd

from ..core.config import WavePacketConfig
from ..core.exceptions import FileOperationError
from ..core.utils import FLOAT_FORMAT
from ..models.multi_index import MultiIndex
from ..models.params_model import PacketParams
from ..models.polynomial_model import PolyTable

STDIO = '-'


class FileService:
    """
    Service for handling file operations throughout the SDK.
    """

    def __init__(self, config: Optional[WavePacketConfig] = None, logger: Optional[logging.Logger] = None):
        """
        Initialize the file service.

        Args:
            config: SDK configuration
            logger: Logger instance
        """
        self.config = config or WavePacketConfig()
        self.logger = logger or logging.getLogger(__name__)

    def read_text(self, file_path: str, encoding: str = 'utf-8') -> str:
        """
        Read a text file, or stdin for ``-``.

        Raises:
            FileOperationError: If the file cannot be read
        """
        if file_path == STDIO:
            return sys.stdin.read()

        path = Path(file_path)
        try:
            if not path.exists():
                raise FileOperationError(f"File not found: {file_path}", file_path=file_path, operation='read')
            if not path.is_file():
                raise FileOperationError(f"Path is not a file: {file_path}", file_path=file_path, operation='read')
            content = path.read_text(encoding=encoding)
        except UnicodeDecodeError as e:
            raise FileOperationError(f"File encoding error: {e}", file_path=file_path, operation='read', inner_exception=e)
        except PermissionError as e:
            raise FileOperationError(f"Permission denied: {e}", file_path=file_path, operation='read', inner_exception=e)
        except OSError as e:
            raise FileOperationError(f"Failed to read file: {e}", file_path=file_path, operation='read', inner_exception=e)

        self.logger.debug(f"Read {len(content)} characters from {file_path}")
        return content

    def write_text(self, content: str, file_path: Optional[str] = None, encoding: str = 'utf-8'):
        """Write text to a file, or stdout when no path (or ``-``) is given."""
        if file_path in (None, STDIO):
            sys.stdout.write(content)
            sys.stdout.flush()
            return

        path = Path(file_path)
        try:
            if path.parent and not path.parent.exists():
                path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, 'w', encoding=encoding, newline='') as f:
                f.write(content)
        except PermissionError as e:
            raise FileOperationError(f"Permission denied: {e}", file_path=file_path, operation='write', inner_exception=e)
        except OSError as e:
            raise FileOperationError(f"Failed to write file: {e}", file_path=file_path, operation='write', inner_exception=e)

        self.logger.debug(f"Wrote {len(content)} characters to {file_path}")

    def read_json(self, file_path: str) -> Any:
        content = self.read_text(file_path)
        try:
            return json.loads(content)
        except json.JSONDecodeError as e:
            raise FileOperationError(
                f"Malformed JSON in {file_path}: {e.msg} (line {e.lineno}, column {e.colno})",
                file_path=file_path,
                operation='parse',
                inner_exception=e
            )

    def load_params(self, file_path: str) -> PacketParams:
        """Parse a params JSON document; schema violations raise ValidationError."""
        params = PacketParams.from_dict(self.read_json(file_path))
        self.logger.debug(f"Loaded params d={params.d} hbar={params.hbar} from {file_path}")
        return params

    def save_params(self, params: PacketParams, file_path: Optional[str] = None):
        self.write_text(params.to_json() + '\n', file_path)

    def load_table(self, file_path: str, params: Optional[PacketParams] = None) -> PolyTable:
        """
        Parse a table JSON dump.

        Raises:
            ValidationError: On schema violations
            TableIntegrityError: When entries violate table invariants
        """
        table = PolyTable.from_dict(self.read_json(file_path), params)
        self.logger.debug(f"Loaded {table.method.value} table d={table.d} K={table.K} from {file_path}")
        return table

    def save_table(self, table: PolyTable, file_path: Optional[str] = None):
        self.write_text(table.to_json() + '\n', file_path)

    def eval_frame(self, points: np.ndarray, values: np.ndarray) -> pd.DataFrame:
        """Grid evaluation as columns x1..xd, re, im in row-major grid order."""
        points = np.asarray(points, dtype=float)
        frame = pd.DataFrame(points, columns=[f"x{j + 1}" for j in range(points.shape[1])])
        frame['re'] = np.real(values)
        frame['im'] = np.imag(values)
        return frame

    def gram_frame(self, indices: Sequence[MultiIndex], matrix: np.ndarray) -> pd.DataFrame:
        """Gram matrix with one row per multi-index and re/im column pairs."""
        columns = {'index': [k.label for k in indices]}
        for j, k in enumerate(indices):
            columns[f"{k.label}_re"] = np.real(matrix[:, j])
            columns[f"{k.label}_im"] = np.imag(matrix[:, j])
        return pd.DataFrame(columns)

    def write_csv(self, frame: pd.DataFrame, file_path: Optional[str] = None):
        """CSV with 17 significant digits and '\\n' line endings."""
        content = frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator='\n')
        self.write_text(content, file_path)
        self.logger.info(f"Wrote CSV with {len(frame)} rows to {file_path or 'stdout'}")
