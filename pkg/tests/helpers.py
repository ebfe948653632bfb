"""
Parameter builders shared by the test modules.
"""

import sys
from pathlib import Path

import numpy as np

# Add the package root to Python path
sys.path.insert(0, str(Path(__file__).parent.parent))

from wavepacket_sdk.core.linalg import generate_params
from wavepacket_sdk.models.params_model import PacketParams

# Small condition caps keep tight coefficient tolerances meaningful.
TEST_CONDITION_CAP = 10.0


def hermite_params(hbar: float = 1.0) -> PacketParams:
    """d=1, A=B=1: the polynomials reduce to physicists' Hermite polynomials."""
    return PacketParams(1, hbar, [[1.0]], [[1.0]])


def identity_params(d: int) -> PacketParams:
    return PacketParams(d, 1.0, np.eye(d), np.eye(d))


def random_params(seed: int, d: int, **kwargs) -> PacketParams:
    kwargs.setdefault('condition_cap', TEST_CONDITION_CAP)
    return generate_params(seed, d, **kwargs)


def default_cap_params(seed: int, d: int, **kwargs) -> PacketParams:
    """Generated parameters under the configured condition cap (1e4)."""
    return generate_params(seed, d, **kwargs)
