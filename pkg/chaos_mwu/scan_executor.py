#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import os
import threading
import time
from concurrent.futures import ThreadPoolExecutor

from chaos_mwu.config import config
from chaos_mwu.utils.logger import setup_logger

logger = setup_logger("scan_executor")


def worker_count(requested: int = None) -> int:
    """
    Number of worker threads for grid scans.

    CHAOS_MWU_THREADS caps the count; without it the hardware parallelism is used.
    """
    env = os.getenv("CHAOS_MWU_THREADS", config.CHAOS_MWU_THREADS)
    cap = None
    if env:
        try:
            cap = max(int(env), 1)
        except ValueError:
            logger.warning(f"Ignoring invalid CHAOS_MWU_THREADS value '{env}'")
    workers = requested or os.cpu_count() or 1
    if cap is not None:
        workers = min(workers, cap)
    return max(workers, 1)


class ScanExecutor:
    """
    Runs independent tasks on a thread pool and hands results back in input order.

    Tasks must not share mutable state; ordering of the returned list never
    depends on scheduling.
    """

    def __init__(self, max_workers: int = None, label: str = "scan"):
        self.max_workers = worker_count(max_workers)
        self.label = label
        self._progress_lock = threading.Lock()
        self._done = 0

    def map(self, func, items):
        """
        Apply func to every item.

        Args:
            func: Callable of one argument
            items: Iterable of task inputs

        Returns:
            list: func(item) for each item, in input order
        """
        items = list(items)
        self._done = 0
        start = time.time()
        if self.max_workers == 1 or len(items) <= 1:
            results = [self._tracked(func, item, len(items)) for item in items]
        else:
            with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
                results = list(executor.map(lambda item: self._tracked(func, item, len(items)), items))
        logger.info(
            f"{self.label}: {len(items)} tasks on {self.max_workers} workers in {time.time() - start:.2f}s"
        )
        return results

    def _tracked(self, func, item, total):
        result = func(item)
        with self._progress_lock:
            self._done += 1
            done = self._done
        if total >= 10 and done % max(total // 10, 1) == 0:
            logger.debug(f"{self.label}: {done}/{total} done")
        return result
