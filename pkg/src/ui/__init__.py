"""
UI module for Tempus Lab
命令行界面组件
"""

from .cli_interface import CLIInterface
from .command_processor import CommandProcessor, ParsedCommand

__all__ = [
    'CLIInterface',
    'CommandProcessor',
    'ParsedCommand',
]
