"""
Shared fixtures for the Wave Packet SDK tests.
"""

import pytest

from .helpers import hermite_params
from wavepacket_sdk.core.config import WavePacketConfig
from wavepacket_sdk.models.params_model import PacketParams


@pytest.fixture
def config():
    return WavePacketConfig(environment='testing')


@pytest.fixture
def hermite():
    return hermite_params()


@pytest.fixture
def params_file(tmp_path):
    """Write a PacketParams document and return its path."""
    def write(params: PacketParams, name: str = 'params.json') -> str:
        path = tmp_path / name
        path.write_text(params.to_json())
        return str(path)
    return write
