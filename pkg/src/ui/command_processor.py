"""
命令行指令处理器
解析子命令与选项，合并配置文件，生成已校验的 RunConfig
"""

import argparse
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence

from src.config.config_file import ConfigFile
from src.config.run_config import RunConfig, validate_config
from src.core.errors import ConfigValidationError


@dataclass
class ParsedCommand:
    """解析后的指令结构"""
    config: RunConfig
    verbose: bool = False
    config_path: Optional[str] = None


class _ArgumentParser(argparse.ArgumentParser):
    """参数错误统一转成 ConfigValidationError，而不是直接退出进程"""

    def error(self, message: str):
        raise ConfigValidationError(f"命令行参数无效: {message}")


class CommandProcessor:
    """
    命令行指令处理器
    各子命令只暴露与自己相关的选项，默认值一律为 None，以便区分"未给出"与"显式给出"
    """

    SUBCOMMANDS = {
        "quench": "时间平均密度矩阵的熵 S_d(t) 与对数增长拟合",
        "echo": "Loschmidt 回波 F(δ)、曲率与半高半宽",
        "clock": "Salecker–Wigner 时钟的指针态读数与记录熵",
        "demon": "时间反演妖账本：保真度、系统熵与时钟记录熵",
        "bounds": "黑洞时钟与滴答数上限（SI 单位）",
    }

    def __init__(self):
        self.parser = self._build_parser()

    def _build_parser(self) -> argparse.ArgumentParser:
        parser = _ArgumentParser(
            prog="tempus",
            description="Tempus Lab: 淬火熵、Loschmidt 回波、量子时钟与滴答数上限的数值实验",
            allow_abbrev=False,
        )
        parser.add_argument("--config", dest="config_path", default=None,
                            help="key=value 配置文件，命令行选项优先")
        parser.add_argument("--verbose", "-v", action="store_true", help="输出 INFO 级日志")

        output = _ArgumentParser(add_help=False, allow_abbrev=False)
        output.add_argument("--format", choices=["csv", "json"], default=None)
        output.add_argument("--out", default=None, help="输出路径，缺省写到 stdout")
        output.add_argument("--timing", action="store_const", const=True, default=None,
                            help="在元数据中记录墙钟时间（输出不再逐字节可复现）")
        output.add_argument("--threads", type=int, default=None, help="线程数，受 TEMPUS_THREADS 限制")

        ensemble = _ArgumentParser(add_help=False, allow_abbrev=False)
        ensemble.add_argument("--ensemble", choices=["gue", "goe", "spin-chain"], default=None)
        ensemble.add_argument("--dim", type=int, default=None)
        ensemble.add_argument("--L", dest="L", type=int, default=None, help="自旋链长度")
        ensemble.add_argument("--J", dest="J", type=float, default=None)
        ensemble.add_argument("--g", dest="g", type=float, default=None)
        ensemble.add_argument("--h", dest="h", type=float, default=None)
        ensemble.add_argument("--seed", type=int, default=None)
        ensemble.add_argument("--initial-state", dest="initial_state", type=int, default=None,
                              help="原始基矢下标作为初态")
        ensemble.add_argument("--eigenstate", type=int, default=None, help="以第 K 个本征态为初态")
        ensemble.add_argument("--time-unit", dest="time_unit", choices=["tauB", "abs"], default=None)

        subparsers = parser.add_subparsers(dest="subcommand", required=True, parser_class=_ArgumentParser)
        grid_help = "MIN:MAX:COUNT:linear|log（负数起点请写成 --opt=-3:3:...）"

        quench = subparsers.add_parser(
            "quench", parents=[ensemble, output], help=self.SUBCOMMANDS["quench"], allow_abbrev=False)
        quench.add_argument("--times", default=None, help=grid_help)
        quench.add_argument("--fit-window", dest="fit_window", default=None, help="LO:HI，以 τ_B 为单位")

        echo = subparsers.add_parser(
            "echo", parents=[ensemble, output], help=self.SUBCOMMANDS["echo"], allow_abbrev=False)
        echo.add_argument("--deltas", default=None, help=grid_help)

        clock = subparsers.add_parser(
            "clock", parents=[output], help=self.SUBCOMMANDS["clock"], allow_abbrev=False)
        clock.add_argument("--n", type=int, default=None)
        clock.add_argument("--tau", type=float, default=None)
        clock.add_argument("--times", default=None, help=grid_help)
        clock.add_argument("--t-run", dest="t_run", type=float, default=None)

        demon = subparsers.add_parser(
            "demon", parents=[ensemble, output], help=self.SUBCOMMANDS["demon"], allow_abbrev=False)
        demon.add_argument("--taus", default=None, help=grid_help + "，以 τ_B 为单位")
        demon.add_argument("--t-run", dest="t_run", type=float, default=None, help="以 τ_B 为单位")
        demon.add_argument("--samples", type=int, default=None)

        bounds = subparsers.add_parser(
            "bounds", parents=[output], help=self.SUBCOMMANDS["bounds"], allow_abbrev=False)
        bounds.add_argument("--masses", default=None, help=grid_help + "，单位 kg")

        return parser

    def parse(self, argv: Optional[Sequence[str]] = None) -> ParsedCommand:
        """解析命令行并与配置文件合并"""
        args = self.parser.parse_args(argv)
        flags: Dict[str, Any] = vars(args).copy()
        verbose = bool(flags.pop("verbose"))
        config_path = flags.pop("config_path")
        subcommand = flags.pop("subcommand")

        merged = ConfigFile(config_path).merged_with(flags)
        merged["subcommand"] = subcommand
        return ParsedCommand(config=validate_config(merged), verbose=verbose, config_path=config_path)
