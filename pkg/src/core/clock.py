"""
Salecker–Wigner 时钟
时钟波函数、正交指针态、读数分布与记录熵 ln(t/τ)
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from src.core.errors import DimensionMismatch, IndexOutOfRange, NonPositiveInputs, OutOfRange
from src.core.lab_config import LabConfig
from src.core.quantum import QuantumState

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClockSpec:
    """
    n 能级时钟，分辨率 tau，周期 n·tau

    相位按 e^{−i2πkt/(nτ)} 走，时钟每隔 τ 经过一个正交指针态
    """

    n: int
    tau: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise NonPositiveInputs(f"时钟能级数 n 必须是 ≥ 2 的整数, got {self.n!r}")
        if not (self.tau > 0) or not math.isfinite(self.tau):
            raise NonPositiveInputs(f"时钟分辨率 tau 必须为正, got {self.tau!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "tau", float(self.tau))

    @property
    def period(self) -> float:
        return self.n * self.tau

    @property
    def levels(self) -> np.ndarray:
        """能量基标号 k = 1..n"""
        return np.arange(1, self.n + 1)


# 时钟态与普通纯态共用归一化检查
ClockState = QuantumState


def _phase_turns(spec: ClockSpec, t: float) -> np.ndarray:
    """k·t/period 的小数部分（单位：圈），先对周期取模以保持大 k 时的精度"""
    fraction = np.mod(t / spec.period, 1.0)
    return np.mod(spec.levels * fraction, 1.0)


def clock_state(spec: ClockSpec, t: float) -> ClockState:
    """|C(t)⟩ = (1/√n) Σ_k e^{−i2πkt/(nτ)} |k⟩"""
    phases = np.exp(-2j * np.pi * _phase_turns(spec, t))
    return ClockState(phases / math.sqrt(spec.n))


def pointer_state(spec: ClockSpec, m: int) -> ClockState:
    """|m⟩_ptr = (1/√n) Σ_k e^{−i2πkm/n} |k⟩，m ∈ [0, n)"""
    if int(m) != m or not 0 <= m < spec.n:
        raise IndexOutOfRange(f"指针态下标 {m!r} 不在 [0, {spec.n}) 内")
    # 整数取模后相位精确
    turns = np.mod(spec.levels * int(m), spec.n) / spec.n
    return ClockState(np.exp(-2j * np.pi * turns) / math.sqrt(spec.n))


def pointer_basis(spec: ClockSpec) -> np.ndarray:
    """n×n 矩阵，第 m 列是 |m⟩_ptr"""
    k = spec.levels[:, None]
    m = np.arange(spec.n)[None, :]
    turns = np.mod(k * m, spec.n) / spec.n
    return np.exp(-2j * np.pi * turns) / math.sqrt(spec.n)


def readout_distribution(spec: ClockSpec, state: ClockState) -> np.ndarray:
    """
    q_m = |⟨m_ptr|state⟩|²

    ⟨m_ptr|state⟩ = (1/√n) Σ_k e^{+i2πkm/n} a_k，用逆 FFT 计算
    """
    if state.dim != spec.n:
        raise DimensionMismatch(f"时钟态维数 {state.dim} 与 n = {spec.n} 不一致")
    amplitudes = np.fft.ifft(state.amplitudes) * math.sqrt(spec.n)
    return np.abs(amplitudes) ** 2


def record_entropy(spec: ClockSpec, t_run: float) -> float:
    """
    读出时钟产生的熵 ln(n_used)，n_used = round(t_run/τ) ≥ 1

    超过一个周期时记录有歧义，直接拒绝
    """
    if not (t_run > 0) or not math.isfinite(t_run):
        raise OutOfRange(f"运行时间必须为正, got {t_run!r}")
    ticks = t_run / spec.tau
    if ticks > spec.n * (1.0 + LabConfig.NORM_TOL):
        raise OutOfRange(
            f"运行时间 {t_run:g} 超过一个周期 {spec.period:g}，时钟已回绕",
            {"t_run": t_run, "period": spec.period},
        )
    n_used = max(1, min(spec.n, int(round(ticks))))
    return math.log(n_used)


def segmented_record_entropy(spec: ClockSpec, t_run: float, segments: int) -> float:
    """
    用 segments 个时钟各运行 t_run/segments 时的总记录熵

    对数记录不可加：一个时钟跑 t 与两个时钟各跑 t/2 的熵不同
    """
    if int(segments) != segments or segments < 1:
        raise NonPositiveInputs(f"分段数必须是正整数, got {segments!r}")
    return segments * record_entropy(spec, t_run / segments)


def autocorrelation(spec: ClockSpec, delta: float) -> float:
    """
    |⟨C(t)|C(t+δ)⟩|² = |Σ_k e^{−i2πkδ/period}|²/n²，与 t 无关
    """
    phases = np.exp(-2j * np.pi * _phase_turns(spec, delta))
    value = abs(np.sum(phases)) ** 2 / spec.n ** 2
    return float(min(value, 1.0))
