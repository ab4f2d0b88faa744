"""
Core module for Tempus Lab
核心模块导出（数值内核；ExperimentRunner 依赖配置层，需从 src.core.experiment_runner 显式导入）
"""

# 错误与常量
from .errors import TempusError, ErrorCategory, EXIT_CODES
from .lab_config import LabConfig

# quantum-core
from .quantum import (
    QuantumState, HermitianOperator, SpectralDecomposition, DensityMatrix, EnergyStatistics,
    diagonalize, evolve, occupations, energy_statistics, von_neumann_entropy, fidelity
)
from .ensembles import build_gue, build_goe, build_spin_chain

# quench-entropy
from .quench import (
    QuenchSetup, EntropyCurve, LogGrowthFit,
    diagonal_entropy, time_averaged_density_matrix, entropy_at, entropy_curve, log_growth_fit
)

# clock-model
from .clock import ClockSpec, clock_state, pointer_state, readout_distribution, record_entropy, autocorrelation

# loschmidt-demon
from .loschmidt import EchoCurve, DemonLedger, echo_fidelity, echo_curve, echo_curvature, half_width, demon_experiment

# relativistic-bounds
from .bounds import (
    PhysicalConstants, CODATA_2018, BlackHoleClock,
    max_ticks_mass_bound, black_hole_clock, thermodynamic_tick_bound, planck_clock, evaporation_time
)

# 结果文档
from .result_table import ResultTable

__all__ = [
    'TempusError', 'ErrorCategory', 'EXIT_CODES', 'LabConfig',

    'QuantumState', 'HermitianOperator', 'SpectralDecomposition', 'DensityMatrix', 'EnergyStatistics',
    'diagonalize', 'evolve', 'occupations', 'energy_statistics', 'von_neumann_entropy', 'fidelity',
    'build_gue', 'build_goe', 'build_spin_chain',

    'QuenchSetup', 'EntropyCurve', 'LogGrowthFit',
    'diagonal_entropy', 'time_averaged_density_matrix', 'entropy_at', 'entropy_curve', 'log_growth_fit',

    'ClockSpec', 'clock_state', 'pointer_state', 'readout_distribution', 'record_entropy', 'autocorrelation',

    'EchoCurve', 'DemonLedger', 'echo_fidelity', 'echo_curve', 'echo_curvature', 'half_width',
    'demon_experiment',

    'PhysicalConstants', 'CODATA_2018', 'BlackHoleClock',
    'max_ticks_mass_bound', 'black_hole_clock', 'thermodynamic_tick_bound', 'planck_clock', 'evaporation_time',

    'ResultTable',
]
