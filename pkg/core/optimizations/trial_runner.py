#!/usr/bin/env python3
"""
Deterministic trial loops.

A trial function takes a trial index and returns a result or ``None``.  The
runner reports the success with the smallest index, so the outcome is the
same whether trials run sequentially or on a thread pool.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Generic, List, Optional, TypeVar

log = logging.getLogger(__name__)

T = TypeVar("T")


@dataclass
class TrialOutcome(Generic[T]):
    index: Optional[int]
    result: Optional[T]
    attempted: int

    @property
    def found(self) -> bool:
        return self.index is not None


class TrialRunner:
    """Run ``fn(0) .. fn(trials-1)`` and keep the first success by index."""

    def __init__(self, workers: int = 1, chunk: int = 8):
        self.workers = max(1, int(workers))
        self.chunk = max(1, int(chunk))

    def first_success(self, fn: Callable[[int], Optional[T]], trials: int) -> TrialOutcome[T]:
        if self.workers == 1:
            for t in range(trials):
                result = fn(t)
                if result is not None:
                    return TrialOutcome(t, result, t + 1)
            return TrialOutcome(None, None, trials)

        # Chunks run in parallel; the first chunk holding a success wins and
        # later chunks are never started, so the result matches a serial run.
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            start = 0
            while start < trials:
                stop = min(trials, start + self.chunk * self.workers)
                results: List[Optional[T]] = list(pool.map(fn, range(start, stop)))
                for offset, result in enumerate(results):
                    if result is not None:
                        return TrialOutcome(start + offset, result, start + offset + 1)
                start = stop
        return TrialOutcome(None, None, trials)

    def map(self, fn: Callable[[int], T], count: int) -> List[T]:
        """All results in index order."""
        if self.workers == 1:
            return [fn(t) for t in range(count)]
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            return list(pool.map(fn, range(count)))
