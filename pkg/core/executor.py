from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from threading import Lock
from typing import TypeVar

from core.config import BRANCHON_THREADS
from core.logger import logger

T = TypeVar("T")
R = TypeVar("R")

_executor: ThreadPoolExecutor | None = None
_executor_lock = Lock()


def _make_executor() -> ThreadPoolExecutor:
    """Создаёт пул потоков с потолком BRANCHON_THREADS."""
    logger.debug(f"Creating thread pool with {BRANCHON_THREADS} workers")
    return ThreadPoolExecutor(max_workers=BRANCHON_THREADS, thread_name_prefix="branchon")


def get_executor() -> ThreadPoolExecutor:
    """
    Возвращает общий пул потоков. Создаёт его при первом обращении.
    """
    global _executor
    with _executor_lock:
        if _executor is None:
            _executor = _make_executor()
        return _executor


def shutdown_executor() -> None:
    """Останавливает общий пул (если он был создан)."""
    global _executor
    with _executor_lock:
        if _executor is not None:
            _executor.shutdown(wait=True)
            logger.debug("Thread pool shut down.")
            _executor = None


def run_jobs(fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
    """
    Выполняет независимые задачи в общем пуле и возвращает результаты в исходном порядке.
    Одна задача выполняется прямо в вызывающем потоке.
    Первое исключение из задач пробрасывается наружу.
    """
    jobs = list(items)
    if len(jobs) <= 1 or BRANCHON_THREADS == 1:
        return [fn(job) for job in jobs]
    return list(get_executor().map(fn, jobs))
