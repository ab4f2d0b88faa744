"""
错误类型定义
Tempus Lab 所有模块共享的异常层次，每个异常带有机器可读的 code 和类别
"""

from enum import Enum
from typing import Any, Dict, Optional


class ErrorCategory(Enum):
    """错误类别枚举"""
    INPUT = "input"            # 调用方传入了不合法的参数
    NUMERIC = "numeric"        # 数值计算无法完成
    CONFIG = "config"          # 运行配置无效
    INVARIANT = "invariant"    # 内部不变量检查失败
    IO = "io"                  # 文件读写失败


# CLI 退出码，与类别一一对应
EXIT_CODES: Dict[ErrorCategory, int] = {
    ErrorCategory.CONFIG: 2,
    ErrorCategory.INPUT: 3,
    ErrorCategory.NUMERIC: 4,
    ErrorCategory.INVARIANT: 5,
    ErrorCategory.IO: 6,
}


class TempusError(Exception):
    """Tempus Lab 异常基类"""

    code: str = "tempus_error"
    category: ErrorCategory = ErrorCategory.INPUT

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.category]

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式（用于机器可读输出）"""
        return {
            "code": self.code,
            "category": self.category.value,
            "message": self.message,
            "details": self.details,
        }

    def __str__(self) -> str:
        return f"error[{self.code}]: {self.message}"


# ---- quantum-core ----

class NonHermitianInput(TempusError):
    """算符不满足厄米性，属于调用方错误"""
    code = "non_hermitian_input"


class DimensionMismatch(TempusError):
    """态矢量与算符维数不一致"""
    code = "dimension_mismatch"


class NotADensityMatrix(TempusError):
    """矩阵不满足密度矩阵的不变量"""
    code = "not_a_density_matrix"
    category = ErrorCategory.NUMERIC


class DimensionTooLarge(TempusError):
    """维数超出配置的内存上限"""
    code = "dimension_too_large"


class NotANormalizedState(TempusError):
    """态矢量未归一化"""
    code = "not_a_normalized_state"


# ---- quench-entropy ----

class NotAProbabilityVector(TempusError):
    code = "not_a_probability_vector"


class NonPositiveTime(TempusError):
    code = "non_positive_time"


class InsufficientSamples(TempusError):
    code = "insufficient_samples"
    category = ErrorCategory.NUMERIC


# ---- clock-model ----

class IndexOutOfRange(TempusError):
    code = "index_out_of_range"


class OutOfRange(TempusError):
    code = "out_of_range"


# ---- loschmidt-demon ----

class ZeroWidth(TempusError):
    """初态是本征态，能量宽度为零"""
    code = "zero_width"
    category = ErrorCategory.NUMERIC


class NotBracketed(TempusError):
    """回波曲线没有在峰两侧跨过 F = 1/2"""
    code = "not_bracketed"
    category = ErrorCategory.NUMERIC


class NonPositiveInputs(TempusError):
    code = "non_positive_inputs"


# ---- relativistic-bounds ----

class MissingField(TempusError):
    code = "missing_field"


class NonPositiveMass(TempusError):
    code = "non_positive_mass"


# ---- cli ----

class ConfigValidationError(TempusError):
    """运行配置校验失败，message 汇总全部问题"""
    code = "config_invalid"
    category = ErrorCategory.CONFIG


class InvariantViolation(TempusError):
    code = "invariant_violation"
    category = ErrorCategory.INVARIANT


class OutputError(TempusError):
    code = "output_error"
    category = ErrorCategory.IO
