import sys
import os
import logging
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from pydantic import ValidationError
from rich.logging import RichHandler

from src.config.settings import get_settings
from src.core.errors import ConfigValidationError, TempusError
from src.core.experiment_runner import ExperimentRunner
from src.ui.cli_interface import CLIInterface
from src.ui.command_processor import CommandProcessor

logger = logging.getLogger(__name__)

INTERNAL_ERROR_EXIT = 1


def initialize_logging(level: str) -> None:
    """日志统一走 stderr，stdout 只留给结果文档"""
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format="%(name)s: %(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=CLIInterface().console, show_path=False, rich_tracebacks=False)],
        force=True,
    )


def run(argv=None, cli: CLIInterface = None) -> int:
    """解析、运行并写出结果，返回进程退出码"""
    cli = cli or CLIInterface()
    try:
        try:
            level = get_settings().log_level
        except ValidationError as e:
            raise ConfigValidationError(f"TEMPUS_* 环境变量无效: {e.errors()[0]['msg']}") from None

        command = CommandProcessor().parse(argv)
        initialize_logging("INFO" if command.verbose else level)
        config = command.config

        table = ExperimentRunner(config).run()
        cli.write_result(table, config.format, config.out)
        if command.verbose or config.out is not None:
            cli.show_summary(table)
        return 0

    except TempusError as e:
        logger.debug("run failed", exc_info=True)
        cli.show_error(e)
        return e.exit_code
    except KeyboardInterrupt:
        cli.show_warning("用户中断")
        return 130
    except Exception as e:
        logger.error(f"未预期的错误: {e}", exc_info=True)
        cli.console.print(f"error[internal]: {e}", style=cli.theme["error"], markup=False, highlight=False)
        return INTERNAL_ERROR_EXIT


def main():
    """
    Tempus Lab 命令行入口
    """
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
