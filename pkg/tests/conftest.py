import io
import sys
import os

import numpy as np
import pytest
from rich.console import Console

# Add the project root to the Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.config.settings import reset_settings
from src.core.ensembles import build_gue
from src.core.quantum import HermitianOperator, QuantumState, diagonalize
from src.core.quench import QuenchSetup
from src.main import run
from src.ui.cli_interface import CLIInterface


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """每个测试使用干净的 TEMPUS_* 环境"""
    for name in ("TEMPUS_THREADS", "TEMPUS_MAX_DIM", "TEMPUS_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
    reset_settings()
    yield
    reset_settings()


def make_setup(dim: int, seed: int = 0, index: int = 0) -> QuenchSetup:
    """GUE 哈密顿量 + 计算基矢初态"""
    spec = diagonalize(build_gue(dim, seed))
    return QuenchSetup.from_state(spec, QuantumState.basis(dim, index))


@pytest.fixture
def small_setup():
    return make_setup(8, seed=1)


@pytest.fixture
def two_level_setup():
    """能级 ±1，等权叠加：F(δ) = cos²δ，ΔE = 1"""
    spec = diagonalize(HermitianOperator(np.diag([-1.0, 1.0])))
    return QuenchSetup.from_coefficients(spec, np.array([1.0, 1.0]) / np.sqrt(2.0))


@pytest.fixture(scope="session")
def gue_256_setup():
    return make_setup(256, seed=0)


@pytest.fixture
def setup_factory():
    return make_setup


def _invoke(argv):
    """运行 CLI，返回 (退出码, stdout, stderr)"""
    stdout, stderr = io.StringIO(), io.StringIO()
    cli = CLIInterface(console=Console(file=stderr, width=200), stdout=stdout)
    code = run(argv, cli)
    return code, stdout.getvalue(), stderr.getvalue()


@pytest.fixture
def invoke():
    return _invoke
