"""
配置模块
提供 Tempus Lab 的环境设置、配置文件与运行配置
"""

# 延迟导入以避免循环依赖
def get_settings():
    """获取settings实例"""
    from .settings import get_settings as _get_settings
    return _get_settings()


__all__ = [
    "get_settings",
]
