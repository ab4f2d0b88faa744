"""
CLI用户界面
结果写到 stdout 或文件，摘要、提示与错误用 Rich 输出到 stderr
"""

import json
import math
import sys
from pathlib import Path
from typing import IO, Any, Optional

from rich import box
from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from src.core.errors import OutputError, TempusError
from src.core.result_table import ResultTable


class CLIInterface:
    """
    命令行界面控制器
    stdout 只承载结果文档，其余信息全部走 stderr
    """

    THEME = {
        "title": "bold blue",
        "success": "green",
        "error": "red",
        "warning": "yellow",
        "key": "dim white",
    }

    def __init__(self, console: Optional[Console] = None, stdout: Optional[IO[str]] = None):
        self.console = console or Console(stderr=True)
        self.stdout = stdout or sys.stdout
        self.theme = self.THEME

    # ---- 结果输出 ----

    def write_result(self, table: ResultTable, fmt: str, out: Optional[str] = None) -> None:
        """把结果文档写到 out；out 为空时写到 stdout"""
        text = table.render(fmt)
        if out is None:
            self.stdout.write(text)
            self.stdout.flush()
            return
        try:
            path = Path(out)
            path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, "w", encoding="utf-8", newline="\n") as f:
                f.write(text)
        except OSError as e:
            raise OutputError(f"无法写入 {out}: {e}") from e
        self.show_success(f"结果已写入 {out}")

    # ---- 提示信息 ----

    def show_summary(self, table: ResultTable) -> None:
        """显示结果摘要：子命令、行数与标量元数据"""
        summary = Table(show_header=False, box=box.SIMPLE)
        summary.add_column("键", style=self.theme["key"], no_wrap=True)
        summary.add_column("值", style="white")

        summary.add_row("rows", str(len(table)))
        summary.add_row("columns", ", ".join(table.columns[:8]) + (" …" if len(table.columns) > 8 else ""))
        for key in sorted(table.meta):
            if key == "config":
                continue
            summary.add_row(key, Text(self._format_value(table.meta[key])))

        title = f"tempus {table.meta.get('subcommand', '')}"
        self.console.print(Panel(summary, title=title, border_style="blue"))

    @staticmethod
    def _format_value(value: Any) -> str:
        if isinstance(value, float):
            return f"{value:.6g}" if math.isfinite(value) else str(value)
        if isinstance(value, dict):
            return json.dumps(value, sort_keys=True, ensure_ascii=False)
        return str(value)

    def show_error(self, error: TempusError) -> None:
        """显示错误，首行 error[code] 供机器解析"""
        self.console.print(str(error), style=self.theme["error"], markup=False, highlight=False)

    def show_success(self, message: str) -> None:
        self.console.print(f"✅ {message}", style=self.theme["success"])

    def show_warning(self, message: str) -> None:
        self.console.print(f"⚠️ {message}", style=self.theme["warning"])
