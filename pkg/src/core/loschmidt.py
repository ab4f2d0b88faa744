"""
Loschmidt 回波与时间反演妖
回波保真度 F(δ)、峰宽与 τ_B 的关系，以及系统熵和时钟记录熵的账本
"""

import logging
import math
from dataclasses import asdict, dataclass
from typing import Any, Dict, Sequence

import numpy as np

from src.core.errors import (
    DimensionMismatch, InvariantViolation, NonPositiveInputs, NotBracketed, ZeroWidth
)
from src.core.lab_config import LabConfig
from src.core.quantum import DensityMatrix, von_neumann_entropy
from src.core.quench import QuenchSetup, entropy_at

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EchoCurve:
    """回波曲线 F(δ)"""

    deltas: np.ndarray
    fidelities: np.ndarray

    def __post_init__(self):
        deltas = np.array(self.deltas, dtype=np.float64)
        fidelities = np.array(self.fidelities, dtype=np.float64)
        if deltas.ndim != 1 or deltas.shape != fidelities.shape:
            raise DimensionMismatch(f"deltas {deltas.shape} 与 fidelities {fidelities.shape} 不匹配")
        deltas.setflags(write=False)
        fidelities.setflags(write=False)
        object.__setattr__(self, "deltas", deltas)
        object.__setattr__(self, "fidelities", fidelities)


@dataclass(frozen=True)
class DemonLedger:
    """
    妖实验账本
    t_run 时刻反演，时钟分辨率 tau_clock 决定反演时刻的误差
    """

    t_run: float
    tau_clock: float
    system_entropy_at_reversal: float
    clock_record_entropy: float
    mean_recovered_fidelity: float
    residual_entropy: float
    fidelity_stderr: float = 0.0
    asymptotic_system_entropy: float = 0.0
    n_samples: int = 0

    def __post_init__(self):
        for name in ("system_entropy_at_reversal", "clock_record_entropy",
                     "residual_entropy", "asymptotic_system_entropy"):
            if getattr(self, name) < 0:
                raise InvariantViolation(f"账本中的熵 {name} 为负: {getattr(self, name)!r}")
        if not 0.0 <= self.mean_recovered_fidelity <= 1.0 + LabConfig.NORM_TOL:
            raise InvariantViolation(f"平均保真度越界: {self.mean_recovered_fidelity!r}")

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _echo_amplitudes(setup: QuenchSetup, deltas: np.ndarray) -> np.ndarray:
    """Σ_n p_n e^{−i(ε_n − ⟨H⟩)δ}；扣除平均能量只改变全局相位"""
    shifted = setup.energies - setup.stats.mean
    phases = np.exp(-1j * np.multiply.outer(deltas, shifted))
    return phases @ setup.p


def echo_fidelity(setup: QuenchSetup, delta: float) -> float:
    """
    F(δ) = |Σ_n p_n e^{−iε_n δ}|²

    正向演化 t 后反演 t − δ 的保真度，只依赖 δ
    """
    amplitude = _echo_amplitudes(setup, np.array([float(delta)]))[0]
    return float(abs(amplitude) ** 2)


def echo_curve(setup: QuenchSetup, deltas: Sequence[float]) -> EchoCurve:
    deltas = np.asarray(deltas, dtype=np.float64)
    fidelities = np.abs(_echo_amplitudes(setup, deltas)) ** 2
    return EchoCurve(deltas=deltas, fidelities=fidelities)


def echo_curvature(setup: QuenchSetup) -> float:
    """
    −d²F/dδ² 在 δ = 0 处的解析值 2ΔE²

    F(δ) = 1 − (δ/τ_B)² + O(δ⁴)，近高斯衰减时半高半宽约为 τ_B/√2
    """
    if setup.stats.is_stationary:
        raise ZeroWidth("初态是本征态，回波不衰减，曲率为零")
    return 2.0 * setup.stats.width ** 2


def _crossing(d_a: float, f_a: float, d_b: float, f_b: float) -> float:
    """在 (d_a, f_a)–(d_b, f_b) 之间线性插值 F = 1/2 的位置"""
    if f_b == f_a:
        return d_b
    return d_a + (LabConfig.HALF_FIDELITY - f_a) * (d_b - d_a) / (f_b - f_a)


def half_width(curve: EchoCurve) -> float:
    """
    距峰最近的 F = 1/2 交点到峰的距离（取两侧中较小者）

    采样点之间线性插值；任一侧没有跨过 1/2 时报 NotBracketed
    """
    order = np.argsort(curve.deltas, kind="stable")
    deltas = curve.deltas[order]
    fidelities = curve.fidelities[order]
    peak = int(np.argmax(fidelities))
    half = LabConfig.HALF_FIDELITY

    right = None
    for j in range(peak + 1, deltas.size):
        if fidelities[j] <= half:
            right = _crossing(deltas[j - 1], fidelities[j - 1], deltas[j], fidelities[j])
            break
    left = None
    for j in range(peak - 1, -1, -1):
        if fidelities[j] <= half:
            left = _crossing(deltas[j + 1], fidelities[j + 1], deltas[j], fidelities[j])
            break

    if right is None or left is None:
        raise NotBracketed(
            "回波曲线没有在峰的两侧都降到 F = 1/2 以下，请扩大 δ 范围",
            {"left": left, "right": right},
        )
    return float(min(right - deltas[peak], deltas[peak] - left))


def timing_offsets(tau_clock: float, n_samples: int, seed: int) -> np.ndarray:
    """
    反演时刻误差 δ_i，均匀分布于 [−τ/2, τ/2)

    第 i 个样本使用由 (seed, i) 确定的独立生成器
    """
    units = np.array([np.random.default_rng([seed, i]).uniform(-0.5, 0.5) for i in range(n_samples)])
    return tau_clock * units


def _mixture_entropy(setup: QuenchSetup, deltas: np.ndarray) -> float:
    """δ 混合后的反演态 (1/N) Σ_i |ψ(δ_i)⟩⟨ψ(δ_i)| 的 von Neumann 熵（本征基）"""
    phases = np.exp(-1j * np.multiply.outer(setup.energies - setup.stats.mean, deltas))
    states = setup.c[:, None] * phases
    rho = states @ states.conj().T / deltas.size
    return von_neumann_entropy(DensityMatrix(rho))


def demon_experiment(setup: QuenchSetup, tau_clock: float, t_run: float,
                     n_samples: int = LabConfig.DEFAULT_DEMON_SAMPLES, seed: int = 0,
                     perfect_clock: bool = False) -> DemonLedger:
    """
    Loschmidt 妖：运行 t_run 后按分辨率为 tau_clock 的时钟反演

    perfect_clock 强制 δ = 0（tau_clock → 0 极限）
    """
    if not (t_run > 0) or not math.isfinite(t_run):
        raise NonPositiveInputs(f"t_run 必须为正, got {t_run!r}")
    if int(n_samples) != n_samples or n_samples < 1:
        raise NonPositiveInputs(f"n_samples 必须是正整数, got {n_samples!r}")
    if seed < 0:
        raise NonPositiveInputs(f"seed 必须非负, got {seed!r}")
    if not perfect_clock and (not (tau_clock > 0) or not math.isfinite(tau_clock)):
        raise NonPositiveInputs(f"tau_clock 必须为正（或使用 perfect_clock）, got {tau_clock!r}")

    system_entropy = entropy_at(setup, t_run)
    tau_B = setup.stats.boltzmann_time
    asymptotic = max(0.0, math.log(t_run / tau_B)) if math.isfinite(tau_B) else 0.0

    if perfect_clock:
        return DemonLedger(
            t_run=t_run, tau_clock=0.0,
            system_entropy_at_reversal=system_entropy,
            clock_record_entropy=math.inf,
            mean_recovered_fidelity=1.0,
            residual_entropy=0.0,
            fidelity_stderr=0.0,
            asymptotic_system_entropy=asymptotic,
            n_samples=int(n_samples),
        )

    deltas = timing_offsets(tau_clock, int(n_samples), seed)
    fidelities = np.abs(_echo_amplitudes(setup, deltas)) ** 2
    mean_fidelity = float(np.mean(fidelities))
    stderr = float(np.std(fidelities, ddof=1) / math.sqrt(n_samples)) if n_samples > 1 else 0.0
    record = max(0.0, math.log(t_run / tau_clock))
    residual = _mixture_entropy(setup, deltas)

    logger.debug(f"demon tau_clock={tau_clock:g} t_run={t_run:g}: F={mean_fidelity:.4f}±{stderr:.1e}")
    return DemonLedger(
        t_run=t_run, tau_clock=tau_clock,
        system_entropy_at_reversal=system_entropy,
        clock_record_entropy=record,
        mean_recovered_fidelity=min(mean_fidelity, 1.0),
        residual_entropy=residual,
        fidelity_stderr=stderr,
        asymptotic_system_entropy=asymptotic,
        n_samples=int(n_samples),
    )
