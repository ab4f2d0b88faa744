"""
运行配置
RunConfig 与时间网格 TimeGrid 的定义和校验，所有问题汇总为一条错误信息
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from src.core.errors import ConfigValidationError
from src.core.lab_config import LabConfig

logger = logging.getLogger(__name__)

SUBCOMMANDS = ("quench", "echo", "clock", "demon", "bounds")
ENSEMBLE_SUBCOMMANDS = ("quench", "echo", "demon")

# 各子命令的默认网格
DEFAULT_GRIDS = {
    "quench": "0.1:1e4:64:log",        # τ_B 单位
    "echo": "-3:3:121:linear",         # τ_B 单位
    "demon": "0:20:11:linear",         # τ_B 单位
    "bounds": "1e-10:1e40:51:log",     # kg
}
DEFAULT_DIM = 64
DEFAULT_CHAIN_LENGTH = 8
DEFAULT_DEMON_RUN = 50.0               # τ_B 单位


@dataclass(frozen=True)
class TimeGrid:
    """min:max:count:scale 形式的采样网格"""

    start: float
    stop: float
    count: int
    scale: str = "linear"

    @classmethod
    def parse(cls, text: str) -> "TimeGrid":
        parts = str(text).split(":")
        if len(parts) != 4:
            raise ValueError(f"网格必须写成 min:max:count:scale, got {text!r}")
        try:
            start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError:
            raise ValueError(f"网格 {text!r} 的 min/max/count 不是数值") from None
        grid = cls(start=start, stop=stop, count=count, scale=parts[3].strip().lower())
        grid.validate()
        return grid

    def validate(self) -> None:
        issues = []
        if self.scale not in ("linear", "log"):
            issues.append(f"scale 必须是 linear 或 log, got {self.scale!r}")
        if self.count < 1:
            issues.append(f"count 至少为 1, got {self.count}")
        if not np.isfinite(self.start) or not np.isfinite(self.stop):
            issues.append("min/max 必须是有限数")
        elif self.stop < self.start:
            issues.append(f"max {self.stop:g} 小于 min {self.start:g}")
        if self.scale == "log" and self.start <= 0:
            issues.append("log 网格要求 min > 0")
        if issues:
            raise ValueError("; ".join(issues))

    def values(self) -> np.ndarray:
        if self.count == 1:
            return np.array([self.start])
        if self.scale == "log":
            return np.geomspace(self.start, self.stop, self.count)
        return np.linspace(self.start, self.stop, self.count)

    def __str__(self) -> str:
        return f"{self.start!r}:{self.stop!r}:{self.count}:{self.scale}"


def _parse_window(value: Any) -> Optional[Tuple[float, float]]:
    if value is None or isinstance(value, tuple):
        return value
    if isinstance(value, (list,)):
        return tuple(float(v) for v in value)
    parts = str(value).split(":")
    if len(parts) != 2:
        raise ValueError(f"拟合窗口必须写成 LO:HI, got {value!r}")
    return float(parts[0]), float(parts[1])


class RunConfig(BaseModel):
    """一次 CLI 运行的完整配置"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    subcommand: Literal["quench", "echo", "clock", "demon", "bounds"]

    # 哈密顿量系综
    ensemble: Literal["gue", "goe", "spin-chain"] = "gue"
    dim: Optional[int] = None
    L: Optional[int] = None
    J: float = LabConfig.DEFAULT_COUPLING_J
    g: float = LabConfig.DEFAULT_FIELD_G
    h: float = LabConfig.DEFAULT_FIELD_H
    seed: int = Field(default=0, ge=0)
    initial_state: int = Field(default=0, ge=0)
    eigenstate: Optional[int] = Field(default=None, ge=0)

    # 网格
    times: Optional[str] = None
    time_unit: Literal["tauB", "abs"] = "tauB"
    fit_window: Optional[Tuple[float, float]] = None
    deltas: Optional[str] = None
    taus: Optional[str] = None
    masses: Optional[str] = None

    # 时钟与妖
    n: int = Field(default=16, ge=2)
    tau: float = Field(default=1.0, gt=0)
    t_run: Optional[float] = Field(default=None, gt=0)
    samples: int = Field(default=LabConfig.DEFAULT_DEMON_SAMPLES, ge=1)

    # 输出
    out: Optional[str] = None
    format: Literal["csv", "json"] = "csv"
    timing: bool = False
    threads: Optional[int] = Field(default=None, ge=1)

    @field_validator("times", "deltas", "taus", "masses", mode="before")
    @classmethod
    def _normalize_grid(cls, value: Any) -> Optional[str]:
        if value is None:
            return None
        return str(TimeGrid.parse(value))

    @field_validator("fit_window", mode="before")
    @classmethod
    def _normalize_window(cls, value: Any):
        return _parse_window(value)

    @model_validator(mode="after")
    def _check_consistency(self) -> "RunConfig":
        issues: List[str] = []
        cmd = self.subcommand

        if cmd in ENSEMBLE_SUBCOMMANDS:
            size = self.dimension
            if self.ensemble == "spin-chain":
                if not LabConfig.MIN_CHAIN_LENGTH <= self.chain_length <= LabConfig.MAX_CHAIN_LENGTH:
                    issues.append(f"L 必须在 [{LabConfig.MIN_CHAIN_LENGTH}, {LabConfig.MAX_CHAIN_LENGTH}] 内")
            elif size < 2:
                issues.append(f"dim 至少为 2, got {size}")
            if self.initial_state >= size:
                issues.append(f"initial_state {self.initial_state} 超出维数 {size}")
            if self.eigenstate is not None and self.eigenstate >= size:
                issues.append(f"eigenstate {self.eigenstate} 超出维数 {size}")

        if cmd == "quench" and self.grid("times").start <= 0:
            issues.append("quench 的时间网格要求 min > 0")
        if self.fit_window is not None:
            lo, hi = self.fit_window
            if not 0 < lo < hi:
                issues.append(f"拟合窗口要求 0 < LO < HI, got {lo:g}:{hi:g}")
        if cmd == "clock" and self.t_run is not None and self.t_run > self.n * self.tau:
            issues.append(f"t_run {self.t_run:g} 超过时钟周期 {self.n * self.tau:g}")
        if cmd == "demon" and self.grid("taus").start < 0:
            issues.append("demon 的 tau 网格要求 min ≥ 0")
        if cmd == "bounds" and self.grid("masses").start <= 0:
            issues.append("bounds 的质量网格要求 min > 0")

        if issues:
            raise ValueError("; ".join(issues))
        return self

    @property
    def chain_length(self) -> int:
        return self.L if self.L is not None else DEFAULT_CHAIN_LENGTH

    @property
    def dimension(self) -> int:
        if self.ensemble == "spin-chain":
            return 2 ** self.chain_length
        return self.dim if self.dim is not None else DEFAULT_DIM

    @property
    def demon_run(self) -> float:
        return self.t_run if self.t_run is not None else DEFAULT_DEMON_RUN

    def grid(self, name: str) -> TimeGrid:
        """取网格，未配置时使用子命令默认值"""
        value = getattr(self, name)
        if value is not None:
            return TimeGrid.parse(value)
        if self.subcommand == "clock":
            period = self.n * self.tau
            return TimeGrid(start=0.0, stop=period, count=4 * self.n + 1)
        return TimeGrid.parse(DEFAULT_GRIDS[self.subcommand])

    def echo(self) -> Dict[str, Any]:
        """写入结果元数据的配置回显；不含输出路径和线程数，保证输出与并行度无关"""
        return self.model_dump(mode="json", exclude={"out", "threads", "timing"})


def validate_config(values: Dict[str, Any]) -> RunConfig:
    """校验原始配置，全部问题汇总为一个 ConfigValidationError"""
    try:
        return RunConfig(**values)
    except ValidationError as exc:
        issues = []
        for err in exc.errors():
            location = ".".join(str(part) for part in err["loc"]) or "config"
            message = err["msg"].removeprefix("Value error, ")
            issues.append(f"{location}: {message}")
        raise ConfigValidationError("配置无效: " + "; ".join(issues), {"issues": issues}) from None
