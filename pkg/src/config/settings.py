import os
import logging
from typing import Any, Dict

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.core.lab_config import LabConfig

load_dotenv()

logger = logging.getLogger(__name__)


class Settings(BaseModel):
    """进程级设置，来自 TEMPUS_* 环境变量（支持 .env 文件）"""

    model_config = ConfigDict(frozen=True, extra="ignore")

    threads: int = Field(default_factory=lambda: os.cpu_count() or 1, ge=1)
    max_dim: int = Field(default=LabConfig.DEFAULT_MAX_DIM, ge=2)
    log_level: str = "WARNING"

    @field_validator("log_level")
    @classmethod
    def _upper_level(cls, value: str) -> str:
        value = value.upper()
        if value not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"未知的日志级别: {value}")
        return value

    @classmethod
    def from_env(cls, **overrides: Any) -> "Settings":
        """从环境变量构造，overrides 优先"""
        env_values: Dict[str, Any] = {
            "threads": os.getenv("TEMPUS_THREADS", str(os.cpu_count() or 1)),
            "max_dim": os.getenv("TEMPUS_MAX_DIM", str(LabConfig.DEFAULT_MAX_DIM)),
            "log_level": os.getenv("TEMPUS_LOG_LEVEL", "WARNING"),
        }
        merged = {**env_values, **{k: v for k, v in overrides.items() if v is not None}}
        return cls(**merged)


_settings_instance: "Settings | None" = None


def get_settings() -> Settings:
    """获取Settings实例（延迟初始化）"""
    global _settings_instance
    if _settings_instance is None:
        _settings_instance = Settings.from_env()
        logger.debug(f"settings loaded: {_settings_instance.model_dump()}")
    return _settings_instance


def reset_settings() -> None:
    """丢弃缓存的实例，下一次 get_settings 重新读取环境变量"""
    global _settings_instance
    _settings_instance = None

