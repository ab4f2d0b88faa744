"""
结果表结构定义模块
实验输出的标准化表格格式，支持 CSV / JSON 序列化与逐字节往返
"""

import json
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence

from src.core.errors import OutputError
from src.core.lab_config import LabConfig

FORMATS = ("csv", "json")

# JSON 没有 inf/nan，写成字符串
NON_FINITE = {"inf": math.inf, "-inf": -math.inf, "nan": math.nan}


def encode_non_finite(value: Any) -> Any:
    """递归地把非有限浮点数替换为 NON_FINITE 中的字符串"""
    if isinstance(value, float) and not math.isfinite(value):
        return repr(float(value))
    if isinstance(value, dict):
        return {key: encode_non_finite(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode_non_finite(item) for item in value]
    return value


def decode_non_finite(value: Any) -> Any:
    if isinstance(value, str) and value in NON_FINITE:
        return NON_FINITE[value]
    if isinstance(value, dict):
        return {key: decode_non_finite(item) for key, item in value.items()}
    if isinstance(value, list):
        return [decode_non_finite(item) for item in value]
    return value


def _dumps(value: Any, **kwargs: Any) -> str:
    return json.dumps(encode_non_finite(value), sort_keys=True, ensure_ascii=False, allow_nan=False, **kwargs)


def _loads(text: str) -> Any:
    def reject(token: str):
        raise ValueError(f"非标准 JSON 常量: {token}")
    return decode_non_finite(json.loads(text, parse_constant=reject))


@dataclass
class ResultTable:
    """
    结果表
    列名、数值行，以及始终存在的元数据块（配置回显、种子、版本）
    """

    columns: List[str]
    rows: List[List[float]] = field(default_factory=list)
    meta: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        """后初始化处理：统一为浮点数并检查列数"""
        self.columns = [str(name) for name in self.columns]
        self.rows = [[float(value) for value in row] for row in self.rows]
        width = len(self.columns)
        for index, row in enumerate(self.rows):
            if len(row) != width:
                raise OutputError(f"第 {index} 行有 {len(row)} 列，表头有 {width} 列")
        self.meta.setdefault("schema_version", LabConfig.SCHEMA_VERSION)

    def add_row(self, values: Sequence[float]) -> None:
        row = [float(value) for value in values]
        if len(row) != len(self.columns):
            raise OutputError(f"行有 {len(row)} 列，表头有 {len(self.columns)} 列")
        self.rows.append(row)

    def column(self, name: str) -> List[float]:
        """按列名取出一列"""
        try:
            index = self.columns.index(name)
        except ValueError:
            raise OutputError(f"未知的列: {name}") from None
        return [row[index] for row in self.rows]

    def __len__(self) -> int:
        return len(self.rows)

    # ---- 序列化 ----

    def to_dict(self) -> Dict[str, Any]:
        return {"meta": self.meta, "columns": self.columns, "rows": self.rows}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ResultTable":
        for key in ("meta", "columns", "rows"):
            if key not in data:
                raise OutputError(f"结果文档缺少字段: {key}")
        return cls(columns=data["columns"], rows=data["rows"], meta=dict(data["meta"]))

    def to_json(self) -> str:
        """单个 JSON 文档 {meta, columns, rows}，键排序"""
        return _dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ResultTable":
        try:
            data = _loads(text)
        except ValueError as exc:
            raise OutputError(f"无法解析 JSON 结果: {exc}") from exc
        return cls.from_dict(data)

    def to_csv(self) -> str:
        """
        '#' 开头的元数据行 `# key: <json>`，随后是表头与数据行

        浮点数用最短往返表示（repr）
        """
        lines = [f"# {key}: {_dumps(self.meta[key])}" for key in sorted(self.meta)]
        lines.append(",".join(self.columns))
        lines.extend(",".join(repr(value) for value in row) for row in self.rows)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text: str) -> "ResultTable":
        meta: Dict[str, Any] = {}
        columns: List[str] = []
        rows: List[List[float]] = []
        for number, line in enumerate(text.splitlines(), start=1):
            if not line:
                continue
            if line.startswith("#"):
                key, sep, value = line[1:].strip().partition(": ")
                if not sep:
                    raise OutputError(f"第 {number} 行元数据格式错误: {line!r}")
                try:
                    meta[key] = _loads(value)
                except ValueError as exc:
                    raise OutputError(f"第 {number} 行元数据不是合法 JSON: {exc}") from exc
            elif not columns:
                columns = line.split(",")
            else:
                try:
                    rows.append([float(token) for token in line.split(",")])
                except ValueError as exc:
                    raise OutputError(f"第 {number} 行含非数值: {exc}") from exc
        if not columns:
            raise OutputError("CSV 结果缺少表头")
        return cls(columns=columns, rows=rows, meta=meta)

    def render(self, fmt: str) -> str:
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        raise OutputError(f"未知的输出格式: {fmt}")

    @classmethod
    def parse(cls, text: str, fmt: str) -> "ResultTable":
        if fmt == "csv":
            return cls.from_csv(text)
        if fmt == "json":
            return cls.from_json(text)
        raise OutputError(f"未知的输出格式: {fmt}")

    def __repr__(self) -> str:
        return f"ResultTable(columns={self.columns}, rows={len(self.rows)}, meta_keys={sorted(self.meta)})"
