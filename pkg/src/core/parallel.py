"""
并行映射
线程池上的有序 map，结果与串行执行逐位一致
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

T = TypeVar("T")
R = TypeVar("R")

logger = logging.getLogger(__name__)


def resolve_workers(workers: Optional[int]) -> int:
    """请求的线程数，以 TEMPUS_THREADS 为上限；未指定时取上限"""
    from src.config.settings import get_settings
    cap = get_settings().threads
    if workers is None:
        return cap
    return max(1, min(int(workers), cap))


def parallel_map(func: Callable[[T], R], items: Iterable[T], workers: Optional[int] = None) -> List[R]:
    """
    按输入顺序返回 func(item)

    每个元素独立计算，不跨线程归约；workers == 1 时直接在当前线程执行
    """
    items = list(items)
    workers = min(resolve_workers(workers), max(len(items), 1))
    if workers == 1:
        return [func(item) for item in items]
    logger.debug(f"parallel_map: {len(items)} items on {workers} threads")
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, items))
