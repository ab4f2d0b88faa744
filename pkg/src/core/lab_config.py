"""
数值实验配置常量
集中定义容差、默认参数和网格设置
"""


class LabConfig:
    """实验室配置常量"""

    # 容差
    NORM_TOL = 1e-12                 # 态矢量归一化
    HERMITIAN_TOL = 1e-12            # 相对于最大矩阵元
    DENSITY_TOL = 1e-10              # 密度矩阵厄米性、迹、正定性
    PROBABILITY_TOL = 1e-10          # 概率向量求和
    ENTROPY_CLAMP = 1e-10            # [-1e-10, 0) 的本征值视为 0
    RECONSTRUCTION_TOL = 1e-10       # U diag(ε) U† 与 H 的偏差
    ZERO_WIDTH_TOL = 1e-12           # 能量宽度低于该值（乘以能标）视为本征态

    # 维数上限
    DEFAULT_MAX_DIM = 4096
    MIN_CHAIN_LENGTH = 2
    MAX_CHAIN_LENGTH = 14

    # 对数增长拟合
    DEFAULT_FIT_WINDOW = (5.0, 50.0)     # 以 τ_B 为单位
    DEFAULT_FIT_SAMPLES = 32
    MIN_FIT_SAMPLES = 8
    WINDOW_RTOL = 1e-9                   # 窗口端点越出曲线范围的相对容差

    # Loschmidt 回波与妖实验
    DEFAULT_DEMON_SAMPLES = 256
    HALF_FIDELITY = 0.5

    # 自旋链默认参数
    DEFAULT_COUPLING_J = 1.0
    DEFAULT_FIELD_G = 1.05
    DEFAULT_FIELD_H = 0.5

    # 输出格式
    SCHEMA_VERSION = 1
    CODE_VERSION = "0.1.0"
