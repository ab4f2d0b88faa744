"""
哈密顿量系综
GUE / GOE 随机矩阵与横场+纵场 Ising 链，给定参数时结果完全确定
"""

import logging
from typing import Optional

import numpy as np
from scipy import sparse

from src.core.errors import DimensionTooLarge, OutOfRange
from src.core.lab_config import LabConfig
from src.core.quantum import HermitianOperator

logger = logging.getLogger(__name__)

SIGMA_X = sparse.csr_matrix(np.array([[0.0, 1.0], [1.0, 0.0]]))
SIGMA_Z = sparse.csr_matrix(np.array([[1.0, 0.0], [0.0, -1.0]]))


def _resolve_max_dim(max_dim: Optional[int]) -> int:
    if max_dim is not None:
        return max_dim
    from src.config.settings import get_settings
    return get_settings().max_dim


def _check_dim(dim: int, max_dim: Optional[int]) -> None:
    if dim < 2:
        raise OutOfRange(f"系综维数至少为 2, got {dim}")
    cap = _resolve_max_dim(max_dim)
    if dim > cap:
        raise DimensionTooLarge(
            f"维数 {dim} 超过上限 {cap}（可通过 TEMPUS_MAX_DIM 调整）",
            {"dim": dim, "max_dim": cap},
        )


def build_gue(dim: int, seed: int, max_dim: Optional[int] = None) -> HermitianOperator:
    """
    高斯幺正系综

    非对角元是方差 1/dim 的复高斯变量，对角元是方差 1/dim 的实高斯变量，
    因此谱宽与 dim 无关
    """
    _check_dim(dim, max_dim)
    rng = np.random.default_rng(seed)
    a = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    h = (a + a.conj().T) / np.sqrt(2.0 * dim)
    logger.debug(f"GUE dim={dim} seed={seed}")
    return HermitianOperator(h)


def build_goe(dim: int, seed: int, max_dim: Optional[int] = None) -> HermitianOperator:
    """高斯正交系综：实对称，非对角方差 1/dim，对角方差 2/dim"""
    _check_dim(dim, max_dim)
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((dim, dim))
    h = (x + x.T) / np.sqrt(2.0 * dim)
    logger.debug(f"GOE dim={dim} seed={seed}")
    return HermitianOperator(h)


def _site_operator(op: sparse.spmatrix, site: int, length: int) -> sparse.csr_matrix:
    """第 site 个格点上的单体算符，site 0 是最高位"""
    left = sparse.identity(2 ** site, format="csr")
    right = sparse.identity(2 ** (length - site - 1), format="csr")
    return sparse.kron(sparse.kron(left, op), right, format="csr")


def build_spin_chain(L: int, J: float, g: float, h: float,
                     max_dim: Optional[int] = None) -> HermitianOperator:
    """
    开边界 Ising 链
    H = −J Σ σᶻᵢσᶻᵢ₊₁ − g Σ σˣᵢ − h Σ σᶻᵢ

    基矢按 σᶻ 乘积基排列，|↑⟩ 在前：(↑↑, ↑↓, ↓↑, ↓↓)
    """
    if not LabConfig.MIN_CHAIN_LENGTH <= L <= LabConfig.MAX_CHAIN_LENGTH:
        raise OutOfRange(
            f"链长 L 必须在 [{LabConfig.MIN_CHAIN_LENGTH}, {LabConfig.MAX_CHAIN_LENGTH}] 内, got {L}"
        )
    _check_dim(2 ** L, max_dim)

    dim = 2 ** L
    hamiltonian = sparse.csr_matrix((dim, dim), dtype=np.float64)
    z_ops = [_site_operator(SIGMA_Z, i, L) for i in range(L)]
    for i in range(L - 1):
        hamiltonian = hamiltonian - J * (z_ops[i] @ z_ops[i + 1])
    for i in range(L):
        hamiltonian = hamiltonian - g * _site_operator(SIGMA_X, i, L) - h * z_ops[i]

    logger.debug(f"Ising chain L={L} J={J} g={g} h={h}")
    return HermitianOperator(hamiltonian.toarray())
