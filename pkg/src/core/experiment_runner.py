"""
实验管理器
根据 RunConfig 构造系综与初态，运行五类实验并输出 ResultTable
"""

import logging
import math
import time
from typing import Any, Callable, Dict, Optional

import numpy as np

from src.config.run_config import RunConfig
from src.core import bounds
from src.core.clock import (
    ClockSpec, clock_state, readout_distribution, record_entropy, segmented_record_entropy
)
from src.core.ensembles import build_goe, build_gue, build_spin_chain
from src.core.errors import InvariantViolation, ZeroWidth
from src.core.lab_config import LabConfig
from src.core.loschmidt import (
    DemonLedger, demon_experiment, echo_curvature, echo_curve, half_width
)
from src.core.parallel import parallel_map
from src.core.quantum import HermitianOperator, QuantumState, diagonalize
from src.core.quench import QuenchSetup, diagonal_entropy, entropy_curve, log_growth_fit
from src.core.result_table import ResultTable

logger = logging.getLogger(__name__)

SOLAR_MASS = 1.989e30  # kg


class ExperimentRunner:
    """
    实验管理器
    负责把配置翻译为数值实验，检查内部不变量，并生成可复现的结果表
    """

    def __init__(self, config: RunConfig, workers: Optional[int] = None):
        """
        Args:
            config: 已校验的运行配置
            workers: 线程数，以 TEMPUS_THREADS 为上限；不影响输出内容
        """
        self.config = config
        self.workers = workers if workers is not None else config.threads
        self._handlers: Dict[str, Callable[[], ResultTable]] = {
            "quench": self.run_quench,
            "echo": self.run_echo,
            "clock": self.run_clock,
            "demon": self.run_demon,
            "bounds": self.run_bounds,
        }

    # ---- 公共入口 ----

    def run(self) -> ResultTable:
        """运行配置指定的子命令"""
        started = time.perf_counter()
        logger.info(f"running {self.config.subcommand} (seed={self.config.seed})")
        table = self._handlers[self.config.subcommand]()
        elapsed = time.perf_counter() - started
        logger.info(f"{self.config.subcommand} finished in {elapsed:.2f}s, {len(table)} rows")
        if self.config.timing:
            table.meta["wall_clock_seconds"] = elapsed
        return table

    def _base_meta(self) -> Dict[str, Any]:
        return {
            "schema_version": LabConfig.SCHEMA_VERSION,
            "code_version": LabConfig.CODE_VERSION,
            "subcommand": self.config.subcommand,
            "seed": self.config.seed,
            "config": self.config.echo(),
        }

    # ---- 系综与初态 ----

    def build_hamiltonian(self) -> HermitianOperator:
        cfg = self.config
        if cfg.ensemble == "gue":
            return build_gue(cfg.dimension, cfg.seed)
        if cfg.ensemble == "goe":
            return build_goe(cfg.dimension, cfg.seed)
        return build_spin_chain(cfg.chain_length, cfg.J, cfg.g, cfg.h)

    def build_setup(self) -> QuenchSetup:
        """对角化并检查谱分解不变量，然后在本征基下表示初态"""
        hamiltonian = self.build_hamiltonian()
        spec = diagonalize(hamiltonian)

        scale = float(np.max(np.abs(hamiltonian.entries))) or 1.0
        unitarity = spec.unitarity_residual()
        reconstruction = spec.reconstruction_residual(hamiltonian)
        if unitarity > LabConfig.RECONSTRUCTION_TOL or reconstruction > LabConfig.RECONSTRUCTION_TOL * scale:
            raise InvariantViolation(
                f"谱分解残差过大: unitarity={unitarity:.2e}, reconstruction={reconstruction:.2e}",
                {"unitarity": unitarity, "reconstruction": reconstruction},
            )

        if self.config.eigenstate is not None:
            return QuenchSetup.from_eigenstate(spec, self.config.eigenstate)
        psi0 = QuantumState.basis(spec.dim, self.config.initial_state)
        return QuenchSetup.from_state(spec, psi0)

    def _time_unit(self, setup: QuenchSetup) -> float:
        """τ_B 单位下的时间换算；定态时 τ_B 无限大，退回绝对时间"""
        if self.config.time_unit == "abs":
            return 1.0
        if setup.stats.is_stationary:
            logger.warning("初态是本征态，τ_B 无限大，网格按绝对时间解释")
            return 1.0
        return setup.stats.boltzmann_time

    @staticmethod
    def _stats_meta(setup: QuenchSetup) -> Dict[str, Any]:
        return {
            "mean_energy": setup.stats.mean,
            "delta_E": setup.stats.width,
            "tau_B": setup.stats.boltzmann_time,
            "dim": setup.dim,
        }

    @staticmethod
    def _over(values: np.ndarray, unit: float) -> np.ndarray:
        return values / unit if math.isfinite(unit) else np.zeros_like(values)

    # ---- quench ----

    def run_quench(self) -> ResultTable:
        """S_d(t) 曲线：t, t/τ_B, S_d(t), S_diag, S_diag − S_d(t)"""
        setup = self.build_setup()
        unit = self._time_unit(setup)
        times = self.config.grid("times").values() * unit

        curve = entropy_curve(setup, times, workers=self.workers)
        s_diag = diagonal_entropy(setup.p)
        excess = float(np.max(curve.entropies)) - s_diag
        if excess > 1e-9:
            raise InvariantViolation(f"S_d(t) 超过对角熵 {excess:.2e}", {"excess": excess})

        table = ResultTable(columns=["t", "t_over_tauB", "S_dt", "S_diag", "bound_gap"],
                            meta=self._base_meta())
        t_over = self._over(curve.times, setup.stats.boltzmann_time)
        for t, ratio, entropy in zip(curve.times, t_over, curve.entropies):
            table.add_row([t, ratio, entropy, s_diag, s_diag - entropy])

        table.meta.update(self._stats_meta(setup))
        table.meta["S_diag"] = s_diag
        if self.config.fit_window is not None:
            lo, hi = self.config.fit_window
            tau_B = setup.stats.boltzmann_time
            fit = log_growth_fit(curve, tau_B, (lo * tau_B, hi * tau_B))
            table.meta["fit"] = {"window_tauB": [lo, hi], **fit._asdict()}
        return table

    # ---- echo ----

    def run_echo(self) -> ResultTable:
        """Loschmidt 回波：delta, delta/τ_B, F(δ)"""
        setup = self.build_setup()
        if setup.stats.is_stationary:
            raise ZeroWidth("初态是本征态，回波恒为 1，没有可测的峰宽")
        unit = self._time_unit(setup)
        curve = echo_curve(setup, self.config.grid("deltas").values() * unit)

        if np.any(curve.fidelities < 0) or np.any(curve.fidelities > 1 + LabConfig.NORM_TOL):
            raise InvariantViolation("回波保真度超出 [0, 1]")
        at_zero = curve.fidelities[curve.deltas == 0]
        if at_zero.size and np.any(np.abs(at_zero - 1.0) > LabConfig.NORM_TOL):
            raise InvariantViolation(f"F(0) = {at_zero[0]!r} ≠ 1")

        table = ResultTable(columns=["delta", "delta_over_tauB", "fidelity"], meta=self._base_meta())
        for delta, ratio, value in zip(curve.deltas, self._over(curve.deltas, setup.stats.boltzmann_time),
                                       curve.fidelities):
            table.add_row([delta, ratio, value])

        width = half_width(curve)
        table.meta.update(self._stats_meta(setup))
        table.meta["curvature"] = echo_curvature(setup)
        table.meta["half_width"] = width
        table.meta["half_width_over_tauB"] = width / setup.stats.boltzmann_time
        return table

    # ---- clock ----

    def run_clock(self) -> ResultTable:
        """时钟读数：每个时刻在 n 个指针态上的概率"""
        spec = ClockSpec(n=self.config.n, tau=self.config.tau)
        times = self.config.grid("times").values()
        t_run = self.config.t_run if self.config.t_run is not None else spec.period

        def readout(t: float) -> np.ndarray:
            return readout_distribution(spec, clock_state(spec, float(t)))

        distributions = parallel_map(readout, times, self.workers)
        table = ResultTable(columns=["t"] + [f"q_{m}" for m in range(spec.n)], meta=self._base_meta())
        for t, q in zip(times, distributions):
            total = float(np.sum(q))
            if abs(total - 1.0) > LabConfig.NORM_TOL:
                raise InvariantViolation(f"t = {t:g} 时读数概率之和为 {total!r}")
            table.add_row([t, *q])

        table.meta.update({
            "n": spec.n,
            "tau": spec.tau,
            "period": spec.period,
            "t_run": t_run,
            "record_entropy": record_entropy(spec, t_run),
            "record_entropy_two_clocks": segmented_record_entropy(spec, t_run, 2),
        })
        return table

    # ---- demon ----

    def run_demon(self) -> ResultTable:
        """妖实验账本：每个时钟分辨率一行，按 tau 升序"""
        setup = self.build_setup()
        tau_B = setup.stats.boltzmann_time
        if setup.stats.is_stationary:
            raise ZeroWidth("定态没有可逆转的熵增，妖实验无意义")

        taus = np.sort(self.config.grid("taus").values())
        t_run = self.config.demon_run * tau_B

        def ledger(tau_units: float) -> DemonLedger:
            return demon_experiment(
                setup, tau_clock=tau_units * tau_B, t_run=t_run,
                n_samples=self.config.samples, seed=self.config.seed,
                perfect_clock=(tau_units == 0.0),
            )

        ledgers = parallel_map(ledger, taus, self.workers)
        table = ResultTable(
            columns=["tau_over_tauB", "mean_fidelity", "S_system", "S_record",
                     "residual_entropy", "fidelity_stderr", "S_asymptotic"],
            meta=self._base_meta(),
        )
        for tau_units, entry in zip(taus, ledgers):
            table.add_row([tau_units, entry.mean_recovered_fidelity, entry.system_entropy_at_reversal,
                           entry.clock_record_entropy, entry.residual_entropy,
                           entry.fidelity_stderr, entry.asymptotic_system_entropy])

        self._check_monotone_fidelity(ledgers)
        table.meta.update(self._stats_meta(setup))
        table.meta["t_run_over_tauB"] = self.config.demon_run
        table.meta["n_samples"] = self.config.samples
        return table

    @staticmethod
    def _check_monotone_fidelity(ledgers) -> None:
        """分辨率变粗时平均保真度不应上升（允许 2 个标准误差的统计涨落）"""
        for coarse, fine in zip(ledgers[1:], ledgers[:-1]):
            allowance = 2.0 * math.hypot(coarse.fidelity_stderr, fine.fidelity_stderr)
            if coarse.mean_recovered_fidelity > fine.mean_recovered_fidelity + allowance:
                logger.warning(
                    f"mean fidelity rises from {fine.mean_recovered_fidelity:.4f} "
                    f"(tau={fine.tau_clock:g}) to {coarse.mean_recovered_fidelity:.4f} (tau={coarse.tau_clock:g})"
                )

    # ---- bounds ----

    def run_bounds(self) -> ResultTable:
        """黑洞时钟各量随质量的扫描，附带 Planck 质量与太阳质量两行"""
        units = bounds.planck_units()
        masses = np.unique(np.append(self.config.grid("masses").values(), [units.mass, SOLAR_MASS]))

        table = ResultTable(
            columns=["mass", "mass_planck", "schwarzschild_radius", "resolution", "resolution_planck",
                     "hawking_temperature", "hawking_temperature_literal", "entropy_exact",
                     "ticks", "mass_bound", "consistency_ratio",
                     "thermodynamic_exact", "thermodynamic_literal", "evaporation_time"],
            meta=self._base_meta(),
        )
        for mass in masses:
            clock = bounds.black_hole_clock(float(mass))
            bridge = bounds.bound_consistency(float(mass))
            row = [mass, mass / units.mass, clock.schwarzschild_radius, clock.resolution,
                   clock.resolution / units.time, clock.hawking_temperature,
                   clock.hawking_temperature_literal, clock.entropy_exact,
                   clock.ticks_order_of_magnitude, bridge.mass_bound, bridge.ratio,
                   bridge.thermodynamic_exact, bridge.thermodynamic_literal,
                   bounds.evaporation_time(float(mass))]
            if not all(math.isfinite(v) and v > 0 for v in row):
                raise InvariantViolation(f"质量 {mass:g} kg 的输出含非有限或非正值")
            if abs(bridge.ratio - 2.0) > 1e-12 * 2.0:
                raise InvariantViolation(f"质量 {mass:g} kg 处比值为 {bridge.ratio!r}")
            table.add_row(row)

        table.meta["constants"] = bounds.CODATA_2018.model_dump()
        table.meta["planck_units"] = units._asdict()
        table.meta["planck_clock"] = bounds.planck_clock()._asdict()
        return table
