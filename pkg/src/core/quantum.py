"""
有限维量子力学内核
厄米算符、谱分解、幺正演化、密度矩阵与 von Neumann 熵，统一使用自然单位 ħ = 1
"""

import logging
import math
from dataclasses import dataclass
from typing import Union

import numpy as np
import scipy.linalg as la

from src.core.errors import (
    DimensionMismatch, InvariantViolation, NonHermitianInput, NotADensityMatrix,
    NotANormalizedState,
)
from src.core.lab_config import LabConfig

logger = logging.getLogger(__name__)


def _frozen_array(values, dtype) -> np.ndarray:
    """复制为只读数组，保证构造后不可变"""
    array = np.array(values, dtype=dtype, copy=True)
    array.setflags(write=False)
    return array


def _max_abs(matrix: np.ndarray) -> float:
    return float(np.max(np.abs(matrix))) if matrix.size else 0.0


@dataclass(frozen=True)
class QuantumState:
    """
    归一化的纯态 |ψ⟩
    amplitudes 为长度 dim 的复向量
    """

    amplitudes: np.ndarray

    def __post_init__(self):
        amplitudes = _frozen_array(self.amplitudes, np.complex128)
        if amplitudes.ndim != 1 or amplitudes.size < 1:
            raise DimensionMismatch(f"态矢量必须是非空一维向量, got shape {amplitudes.shape}")
        norm = float(np.linalg.norm(amplitudes))
        if abs(norm - 1.0) > LabConfig.NORM_TOL:
            raise NotANormalizedState(
                f"态矢量范数为 {norm!r}，偏离 1 超过 {LabConfig.NORM_TOL}",
                {"norm": norm},
            )
        object.__setattr__(self, "amplitudes", amplitudes)

    @classmethod
    def normalized(cls, vector) -> "QuantumState":
        """对任意非零向量归一化后构造"""
        vector = np.asarray(vector, dtype=np.complex128)
        norm = np.linalg.norm(vector)
        if norm == 0.0:
            raise NotANormalizedState("零向量无法归一化")
        return cls(vector / norm)

    @classmethod
    def basis(cls, dim: int, index: int) -> "QuantumState":
        """计算基矢 |index⟩"""
        if not 0 <= index < dim:
            raise DimensionMismatch(f"基矢下标 {index} 超出维数 {dim}")
        vector = np.zeros(dim, dtype=np.complex128)
        vector[index] = 1.0
        return cls(vector)

    @property
    def dim(self) -> int:
        return int(self.amplitudes.size)


@dataclass(frozen=True)
class HermitianOperator:
    """有限维哈密顿量 H（能量单位，ħ = 1）"""

    entries: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries)
        dtype = np.float64 if np.isrealobj(entries) else np.complex128
        entries = _frozen_array(entries, dtype)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1] or entries.shape[0] < 1:
            raise NonHermitianInput(f"算符必须是非空方阵, got shape {entries.shape}")
        scale = _max_abs(entries)
        asymmetry = _max_abs(entries - entries.conj().T)
        if asymmetry > LabConfig.HERMITIAN_TOL * scale:
            raise NonHermitianInput(
                f"算符不是厄米的: max|H - H†| = {asymmetry:.3e}, max|H| = {scale:.3e}",
                {"asymmetry": asymmetry, "scale": scale},
            )
        object.__setattr__(self, "entries", entries)

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])

    @property
    def is_real(self) -> bool:
        return bool(np.isrealobj(self.entries))

    def scaled(self, factor: float) -> "HermitianOperator":
        """返回 factor·H"""
        return HermitianOperator(self.entries * factor)


@dataclass(frozen=True)
class SpectralDecomposition:
    """
    H 的谱分解
    eigenvalues 升序排列，eigenvectors 第 n 列是 |n⟩
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self):
        eigenvalues = _frozen_array(self.eigenvalues, np.float64)
        eigenvectors = _frozen_array(self.eigenvectors, np.complex128)
        if eigenvectors.shape != (eigenvalues.size, eigenvalues.size):
            raise DimensionMismatch(
                f"本征矢矩阵形状 {eigenvectors.shape} 与 {eigenvalues.size} 个本征值不匹配"
            )
        if np.any(np.diff(eigenvalues) < 0):
            raise InvariantViolation("本征值必须非降序")
        object.__setattr__(self, "eigenvalues", eigenvalues)
        object.__setattr__(self, "eigenvectors", eigenvectors)

    @property
    def dim(self) -> int:
        return int(self.eigenvalues.size)

    def to_eigenbasis(self, vector: np.ndarray) -> np.ndarray:
        """原始基下的向量 → 本征基系数 U†v"""
        return self.eigenvectors.conj().T @ vector

    def from_eigenbasis(self, coefficients: np.ndarray) -> np.ndarray:
        """本征基系数 → 原始基向量 U c"""
        return self.eigenvectors @ coefficients

    def matrix_to_original_basis(self, matrix: np.ndarray) -> np.ndarray:
        """本征基下的矩阵 M → U M U†"""
        return self.eigenvectors @ matrix @ self.eigenvectors.conj().T

    def reconstruct(self) -> np.ndarray:
        return self.matrix_to_original_basis(np.diag(self.eigenvalues))

    def unitarity_residual(self) -> float:
        """‖U†U − I‖_max"""
        gram = self.eigenvectors.conj().T @ self.eigenvectors
        return _max_abs(gram - np.eye(self.dim))

    def reconstruction_residual(self, hamiltonian: HermitianOperator) -> float:
        """‖U diag(ε) U† − H‖_max"""
        return _max_abs(self.reconstruct() - hamiltonian.entries)


@dataclass(frozen=True)
class DensityMatrix:
    """
    密度矩阵 ρ
    构造时检查厄米性和迹；半正定性需要完整谱，由 check_positive 和
    von_neumann_entropy 检查
    """

    entries: np.ndarray

    def __post_init__(self):
        entries = _frozen_array(self.entries, np.complex128)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1] or entries.shape[0] < 1:
            raise NotADensityMatrix(f"密度矩阵必须是非空方阵, got shape {entries.shape}")
        asymmetry = _max_abs(entries - entries.conj().T)
        if asymmetry > LabConfig.DENSITY_TOL:
            raise NotADensityMatrix(f"密度矩阵不是厄米的: max|ρ - ρ†| = {asymmetry:.3e}")
        trace = complex(np.trace(entries))
        if abs(trace - 1.0) > LabConfig.DENSITY_TOL:
            raise NotADensityMatrix(f"密度矩阵迹为 {trace!r}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_pure_state(cls, state: QuantumState) -> "DensityMatrix":
        """|ψ⟩⟨ψ|"""
        return cls(np.outer(state.amplitudes, state.amplitudes.conj()))

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])

    @property
    def diagonal(self) -> np.ndarray:
        return np.real(np.diag(self.entries))

    def eigenvalues(self) -> np.ndarray:
        return la.eigvalsh(self.entries)

    def min_eigenvalue(self) -> float:
        return float(self.eigenvalues()[0])

    def check_positive(self) -> None:
        minimum = self.min_eigenvalue()
        if minimum < -LabConfig.DENSITY_TOL:
            raise NotADensityMatrix(f"密度矩阵不是半正定的: 最小本征值 {minimum:.3e}")


@dataclass(frozen=True)
class EnergyStatistics:
    """
    态的能量统计
    width = 0 时 boltzmann_time 为 +inf，is_stationary 为真
    """

    mean: float
    width: float
    boltzmann_time: float

    @property
    def is_stationary(self) -> bool:
        return self.width == 0.0

    def to_dict(self):
        return {"mean": self.mean, "width": self.width, "boltzmann_time": self.boltzmann_time}


def _check_dims(expected: int, actual: int) -> None:
    if expected != actual:
        raise DimensionMismatch(f"维数不匹配: {expected} != {actual}",
                                {"expected": expected, "actual": actual})


def diagonalize(hamiltonian: HermitianOperator) -> SpectralDecomposition:
    """
    稠密谱分解 H = U diag(ε) U†

    简并块内不做额外旋转，基的选择交给本征求解器
    """
    if not isinstance(hamiltonian, HermitianOperator):
        raise NonHermitianInput("diagonalize 需要 HermitianOperator")
    eigenvalues, eigenvectors = la.eigh(hamiltonian.entries)
    logger.debug(f"diagonalized dim={hamiltonian.dim}, spectrum [{eigenvalues[0]:.4f}, {eigenvalues[-1]:.4f}]")
    return SpectralDecomposition(eigenvalues, eigenvectors)


def evolve(spec: SpectralDecomposition, psi0: QuantumState, t: float) -> QuantumState:
    """
    |ψ(t)⟩ = Σ_n c_n e^{-iε_n t} |n⟩

    t 可以为负（逆向演化）；t = 0 原样返回
    """
    _check_dims(spec.dim, psi0.dim)
    if t == 0:
        return QuantumState(psi0.amplitudes)
    coefficients = spec.to_eigenbasis(psi0.amplitudes)
    phases = np.exp(-1j * spec.eigenvalues * t)
    return QuantumState(spec.from_eigenbasis(phases * coefficients))


def occupations(spec: SpectralDecomposition, psi0: QuantumState) -> np.ndarray:
    """p_n = |⟨n|ψ₀⟩|²"""
    _check_dims(spec.dim, psi0.dim)
    return np.abs(spec.to_eigenbasis(psi0.amplitudes)) ** 2


def statistics_from_distribution(energies: np.ndarray, probabilities: np.ndarray) -> EnergyStatistics:
    """
    由能量分布计算均值、宽度与 Boltzmann 时间

    宽度用中心二阶矩计算，负的舍入误差截断为 0
    """
    energies = np.asarray(energies, dtype=np.float64)
    probabilities = np.asarray(probabilities, dtype=np.float64)
    _check_dims(energies.size, probabilities.size)
    mean = float(np.dot(probabilities, energies))
    variance = float(np.dot(probabilities, (energies - mean) ** 2))
    width = math.sqrt(max(variance, 0.0))
    scale = max(1.0, float(np.max(np.abs(energies))))
    if width <= LabConfig.ZERO_WIDTH_TOL * scale:
        logger.warning("初态是哈密顿量的本征态: ΔE = 0, τ_B = inf")
        return EnergyStatistics(mean=mean, width=0.0, boltzmann_time=math.inf)
    return EnergyStatistics(mean=mean, width=width, boltzmann_time=1.0 / width)


def energy_statistics(spec: SpectralDecomposition, psi0: QuantumState) -> EnergyStatistics:
    """ΔE 与 τ_B = 1/ΔE"""
    return statistics_from_distribution(spec.eigenvalues, occupations(spec, psi0))


def spectrum_entropy(values: np.ndarray) -> float:
    """−Σ λ ln λ，约定 0·ln 0 = 0"""
    values = np.asarray(values, dtype=np.float64)
    positive = values[values > 0.0]
    entropy = -float(np.sum(positive * np.log(positive)))
    return max(entropy, 0.0)


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """
    S = −Tr ρ ln ρ（nats）

    [-1e-10, 0) 内的本征值视为舍入误差截断为 0，更负的值报错
    """
    if not isinstance(rho, DensityMatrix):
        raise NotADensityMatrix("von_neumann_entropy 需要 DensityMatrix")
    eigenvalues = rho.eigenvalues()
    if eigenvalues[0] < -LabConfig.ENTROPY_CLAMP:
        raise NotADensityMatrix(
            f"密度矩阵有负本征值 {eigenvalues[0]:.3e}",
            {"min_eigenvalue": float(eigenvalues[0])},
        )
    return spectrum_entropy(np.clip(eigenvalues, 0.0, None))


def fidelity(a: Union[QuantumState, np.ndarray], b: Union[QuantumState, np.ndarray]) -> float:
    """两个纯态的保真度 |⟨a|b⟩|²"""
    va = a.amplitudes if isinstance(a, QuantumState) else np.asarray(a)
    vb = b.amplitudes if isinstance(b, QuantumState) else np.asarray(b)
    _check_dims(va.size, vb.size)
    return float(abs(np.vdot(va, vb)) ** 2)
