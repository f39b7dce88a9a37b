"""
Pytest configuration and shared fixtures for qcarleson tests.
"""

import os
import tempfile
import shutil
from pathlib import Path
from typing import Generator

import numpy as np
import pytest
import yaml

from qcarleson.core.measures import Atomic, RadialDensity, SliceLebesgue
from qcarleson.core.quaternion import I_AXIS


@pytest.fixture
def temp_dir() -> Generator[Path, None, None]:
    """Create a temporary directory for tests."""
    temp_path = Path(tempfile.mkdtemp())
    yield temp_path
    shutil.rmtree(temp_path, ignore_errors=True)


@pytest.fixture
def sample_config() -> dict:
    """Return a small qcarleson configuration."""
    return {
        "grids": {
            "n_i": 24,
            "n_theta": 256,
            "box_thetas": 16,
            "box_depths": 6,
            "tube_moduli": [0.0, 0.5, 0.9],
            "tube_angles": 3,
            "tube_axes": 2,
        },
        "monte_carlo": {
            "samples": 20000,
            "seed": 7,
        },
        "suite": {
            "workers": 1,
        },
        "logging": {
            "level": "WARNING",
            "file": False,
        },
    }


@pytest.fixture
def config_file(temp_dir: Path, sample_config: dict) -> Path:
    """Create a .qcarleson/config.yaml file in temp directory."""
    qcarleson_dir = temp_dir / ".qcarleson"
    qcarleson_dir.mkdir(parents=True, exist_ok=True)

    config_path = qcarleson_dir / "config.yaml"
    with open(config_path, "w") as f:
        yaml.dump(sample_config, f)

    return config_path


@pytest.fixture
def mock_env(monkeypatch):
    """Mock environment variables for testing."""
    def _mock_env(**kwargs):
        for key, value in kwargs.items():
            if value is None:
                monkeypatch.delenv(key, raising=False)
            else:
                monkeypatch.setenv(key, value)
    return _mock_env


@pytest.fixture
def change_cwd(temp_dir: Path):
    """Change working directory to temp_dir for the test."""
    original_cwd = os.getcwd()
    os.chdir(temp_dir)
    yield temp_dir
    os.chdir(original_cwd)


@pytest.fixture
def rng() -> np.random.Generator:
    """A seeded generator so sampled tests are reproducible."""
    return np.random.default_rng(12345)


@pytest.fixture
def atom_measure() -> Atomic:
    """A unit atom at 0.9 on the I-axis slice."""
    return Atomic([[0.0, 0.9, 0.0, 0.0]], [1.0])


@pytest.fixture
def slice_measure() -> SliceLebesgue:
    """Lebesgue measure on the disc of the I slice."""
    return SliceLebesgue(I_AXIS.copy(), RadialDensity((1.0,)))


# Markers for test categorization
def pytest_configure(config):
    """Configure custom markers."""
    config.addinivalue_line("markers", "slow: marks tests as slow")
    config.addinivalue_line("markers", "integration: marks tests as integration tests")
    config.addinivalue_line("markers", "unit: marks tests as unit tests")
