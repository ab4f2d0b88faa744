"""
淬火熵
对角熵、时间平均密度矩阵 ρ̄_t 的闭式表达、熵曲线 S_d(t) 及其对数增长拟合
"""

import logging
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence, Tuple

import numpy as np
from scipy import stats

from src.core.errors import (
    DimensionMismatch, InsufficientSamples, NonPositiveTime, NotAProbabilityVector, ZeroWidth
)
from src.core.lab_config import LabConfig
from src.core.parallel import parallel_map
from src.core.quantum import (
    DensityMatrix, EnergyStatistics, QuantumState, SpectralDecomposition,
    spectrum_entropy, statistics_from_distribution, von_neumann_entropy,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuenchSetup:
    """
    本征基下表示的初态
    c_n = ⟨n|ψ₀⟩, p_n = |c_n|²
    """

    spec: SpectralDecomposition
    c: np.ndarray
    p: np.ndarray
    stats: EnergyStatistics

    def __post_init__(self):
        c = np.array(self.c, dtype=np.complex128)
        p = np.array(self.p, dtype=np.float64)
        if c.shape != (self.spec.dim,) or p.shape != (self.spec.dim,):
            raise DimensionMismatch(f"系数维数 {c.shape} 与谱维数 {self.spec.dim} 不一致")
        if abs(float(np.sum(p)) - 1.0) > LabConfig.NORM_TOL:
            raise NotAProbabilityVector(f"占据数之和为 {float(np.sum(p))!r}")
        if np.max(np.abs(p - np.abs(c) ** 2)) > LabConfig.NORM_TOL:
            raise NotAProbabilityVector("p 与 |c|² 不一致")
        c.setflags(write=False)
        p.setflags(write=False)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "p", p)

    @classmethod
    def from_coefficients(cls, spec: SpectralDecomposition, coefficients: np.ndarray) -> "QuenchSetup":
        c = np.asarray(coefficients, dtype=np.complex128)
        # c·c̄ 的虚部严格为 0，保证 ρ̄_t 的对角元与 p 逐位相同
        p = np.real(c * np.conj(c))
        return cls(spec=spec, c=c, p=p, stats=statistics_from_distribution(spec.eigenvalues, p))

    @classmethod
    def from_state(cls, spec: SpectralDecomposition, psi0: QuantumState) -> "QuenchSetup":
        """由原始基下的初态构造"""
        if psi0.dim != spec.dim:
            raise DimensionMismatch(f"初态维数 {psi0.dim} 与谱维数 {spec.dim} 不一致")
        return cls.from_coefficients(spec, spec.to_eigenbasis(psi0.amplitudes))

    @classmethod
    def from_eigenstate(cls, spec: SpectralDecomposition, index: int) -> "QuenchSetup":
        """初态恰为第 index 个本征态（定态，不发生演化）"""
        if not 0 <= index < spec.dim:
            raise DimensionMismatch(f"本征态下标 {index} 超出维数 {spec.dim}")
        c = np.zeros(spec.dim, dtype=np.complex128)
        c[index] = 1.0
        return cls.from_coefficients(spec, c)

    @property
    def dim(self) -> int:
        return self.spec.dim

    @property
    def energies(self) -> np.ndarray:
        return self.spec.eigenvalues

    def initial_state(self) -> QuantumState:
        """原始基下的 |ψ₀⟩"""
        return QuantumState(self.spec.from_eigenbasis(self.c))


@dataclass(frozen=True)
class EntropyCurve:
    """S_d(t) 采样；times 为升序正数"""

    times: np.ndarray
    entropies: np.ndarray

    def __post_init__(self):
        times = np.array(self.times, dtype=np.float64)
        entropies = np.array(self.entropies, dtype=np.float64)
        if times.shape != entropies.shape:
            raise DimensionMismatch(f"times {times.shape} 与 entropies {entropies.shape} 长度不同")
        times.setflags(write=False)
        entropies.setflags(write=False)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "entropies", entropies)

    def __len__(self) -> int:
        return int(self.times.size)


class LogGrowthFit(NamedTuple):
    """S ≈ slope·ln(t/τ_B) + intercept"""
    slope: float
    intercept: float
    r_squared: float


def diagonal_entropy(p) -> float:
    """S_d = −Σ p_n ln p_n"""
    p = np.asarray(p, dtype=np.float64)
    if p.ndim != 1 or p.size == 0:
        raise NotAProbabilityVector(f"概率向量必须是非空一维数组, got shape {p.shape}")
    if np.any(p < -LabConfig.PROBABILITY_TOL) or not np.all(np.isfinite(p)):
        raise NotAProbabilityVector("概率向量含负数或非有限值")
    total = float(np.sum(p))
    if abs(total - 1.0) > LabConfig.PROBABILITY_TOL:
        raise NotAProbabilityVector(f"概率之和为 {total!r}")
    return spectrum_entropy(np.clip(p, 0.0, None))


def time_kernel(x: np.ndarray) -> np.ndarray:
    """
    K(x) = (1 − e^{−ix})/(ix) = e^{−ix/2}·sin(x/2)/(x/2)

    K(0) = 1，x → 0 处没有相消误差
    """
    x = np.asarray(x, dtype=np.float64)
    return np.exp(-0.5j * x) * np.sinc(x / (2.0 * np.pi))


def _check_time(t: float) -> None:
    if not (t > 0) or not math.isfinite(t):
        raise NonPositiveTime(f"时间平均需要有限的 t > 0, got {t!r}")


def time_averaged_density_matrix(setup: QuenchSetup, t: float,
                                 in_original_basis: bool = False) -> DensityMatrix:
    """
    ρ̄_t = (1/t)∫₀ᵗ ρ(t′)dt′

    本征基下 ρ̄_t[n,m] = c_n c̄_m K(ω_nm t)，ω_nm = ε_n − ε_m；
    简并能级之间 ω = 0，相干项不衰减
    """
    _check_time(t)
    energies = setup.energies
    omega = energies[:, None] - energies[None, :]
    rho = np.outer(setup.c, setup.c.conj()) * time_kernel(omega * t)
    if in_original_basis:
        rho = setup.spec.matrix_to_original_basis(rho)
    return DensityMatrix(rho)


def pure_state_limit(setup: QuenchSetup, in_original_basis: bool = False) -> DensityMatrix:
    """t → 0⁺ 极限：|ψ₀⟩⟨ψ₀|"""
    rho = np.outer(setup.c, setup.c.conj())
    if in_original_basis:
        rho = setup.spec.matrix_to_original_basis(rho)
    return DensityMatrix(rho)


def entropy_at(setup: QuenchSetup, t: float) -> float:
    return von_neumann_entropy(time_averaged_density_matrix(setup, t))


def entropy_curve(setup: QuenchSetup, times: Sequence[float],
                  workers: Optional[int] = None) -> EntropyCurve:
    """在给定时间点上计算 S_d(t)，可按时间点并行"""
    times = np.asarray(times, dtype=np.float64)
    if times.ndim != 1 or times.size == 0:
        raise NonPositiveTime("时间网格必须是非空一维数组")
    if np.any(times <= 0) or not np.all(np.isfinite(times)):
        raise NonPositiveTime("时间网格必须全为有限正数")
    if np.any(np.diff(times) < 0):
        raise NonPositiveTime("时间网格必须升序")

    entropies = parallel_map(lambda t: entropy_at(setup, float(t)), times, workers)
    return EntropyCurve(times=times, entropies=np.array(entropies))


def default_fit_times(tau_B: float, window: Tuple[float, float] = LabConfig.DEFAULT_FIT_WINDOW,
                      count: int = LabConfig.DEFAULT_FIT_SAMPLES) -> np.ndarray:
    """拟合窗口 [lo·τ_B, hi·τ_B] 上的对数等距采样"""
    if not math.isfinite(tau_B) or tau_B <= 0:
        raise ZeroWidth("τ_B 无限大（定态），无法构造拟合网格")
    lo, hi = window
    return np.geomspace(lo * tau_B, hi * tau_B, count)


def log_growth_fit(curve: EntropyCurve, tau_B: float,
                   window: Tuple[float, float]) -> LogGrowthFit:
    """
    在窗口 [t_lo, t_hi] 内对 S 与 ln(t/τ_B) 做最小二乘直线拟合

    window 使用与 curve.times 相同的绝对时间单位
    """
    if not math.isfinite(tau_B) or tau_B <= 0:
        raise ZeroWidth("τ_B 无限大（定态），无法拟合对数增长")
    t_lo, t_hi = window
    if len(curve) == 0:
        raise InsufficientSamples("熵曲线没有采样点", {"samples": 0})
    first, last = float(np.min(curve.times)), float(np.max(curve.times))
    slack = LabConfig.WINDOW_RTOL
    if t_lo < first * (1.0 - slack) or t_hi > last * (1.0 + slack):
        raise InsufficientSamples(
            f"窗口 [{t_lo:g}, {t_hi:g}] 超出曲线范围 [{first:g}, {last:g}]",
            {"window": [t_lo, t_hi], "support": [first, last]},
        )
    mask = (curve.times >= t_lo) & (curve.times <= t_hi)
    count = int(np.count_nonzero(mask))
    if count < LabConfig.MIN_FIT_SAMPLES:
        raise InsufficientSamples(
            f"窗口 [{t_lo:g}, {t_hi:g}] 内只有 {count} 个采样点，至少需要 {LabConfig.MIN_FIT_SAMPLES}",
            {"samples": count},
        )
    x = np.log(curve.times[mask] / tau_B)
    result = stats.linregress(x, curve.entropies[mask])
    logger.debug(f"log fit over {count} samples: slope={result.slope:.4f} r={result.rvalue:.4f}")
    return LogGrowthFit(slope=float(result.slope), intercept=float(result.intercept),
                        r_squared=float(result.rvalue ** 2))
