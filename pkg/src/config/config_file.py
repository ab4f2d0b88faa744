"""
运行配置文件模块
读取 key=value 文本配置，键与命令行长选项同名，命令行优先
"""

import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

from src.core.errors import ConfigValidationError

logger = logging.getLogger(__name__)


def normalize_key(key: str) -> str:
    """'fit-window' 与 'fit_window' 视为同一个键"""
    return key.strip().lstrip("-").replace("-", "_")


class ConfigFile:
    """key=value 配置文件"""

    def __init__(self, config_path: Optional[str] = None):
        self.config_path = config_path
        self.config: Dict[str, str] = {}
        if config_path:
            self._load_config()

    def _load_config(self) -> None:
        """加载配置文件，所有格式问题汇总后一次性报错"""
        path = Path(self.config_path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigValidationError(f"无法读取配置文件 {path}: {e}") from e

        issues: List[str] = []
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep or not key.strip():
                issues.append(f"第 {number} 行不是 key=value 格式: {raw!r}")
                continue
            key = normalize_key(key)
            if key in self.config:
                issues.append(f"第 {number} 行重复定义 {key}")
                continue
            self.config[key] = value.strip()

        if issues:
            raise ConfigValidationError("; ".join(issues), {"issues": issues, "path": str(path)})
        logger.info(f"配置已从 {path} 加载 ({len(self.config)} 项)")

    def merged_with(self, overrides: Dict[str, Any]) -> Dict[str, Any]:
        """以文件为底，叠加命令行中显式给出的值（None 表示未给出）"""
        merged: Dict[str, Any] = dict(self.config)
        for key, value in overrides.items():
            if value is not None:
                merged[normalize_key(key)] = value
        return merged
