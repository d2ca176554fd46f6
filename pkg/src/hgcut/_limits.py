"""Cooperative time-limit plumbing shared by the solvers."""

from __future__ import annotations

import time
from typing import Optional


class SolveTimeout(Exception):
    """A cooperative time limit expired.

    ``best`` carries the best feasible result found so far (or None when
    the algorithm has no anytime answer).
    """

    def __init__(self, best=None) -> None:
        super().__init__("time limit exceeded")
        self.best = best


class Deadline:
    """Wall-clock deadline; a ``None`` limit never expires."""

    __slots__ = ("_until",)

    def __init__(self, seconds: Optional[float] = None) -> None:
        self._until = None if seconds is None else time.perf_counter() + seconds

    def expired(self) -> bool:
        return self._until is not None and time.perf_counter() >= self._until

    def remaining(self) -> Optional[float]:
        if self._until is None:
            return None
        return max(0.0, self._until - time.perf_counter())
