"""Time and memory limits for long exact computations."""

from __future__ import annotations

import time
from dataclasses import dataclass

try:
    import resource
except ImportError:  # pragma: no cover - non-POSIX
    resource = None


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class Budget:
    """Wall-time and memory limits; ``None`` disables a limit."""

    max_seconds: float | None = None
    max_mem_mb: float | None = None
    max_states: int | None = None

    def __post_init__(self):
        self._start = time.monotonic()

    def restart(self):
        self._start = time.monotonic()

    def check(self, states: int = 0):
        if self.max_seconds is not None and time.monotonic() - self._start > self.max_seconds:
            raise BudgetExceeded(f"time budget of {self.max_seconds}s exceeded")
        if self.max_states is not None and states > self.max_states:
            raise BudgetExceeded(f"state budget of {self.max_states} exceeded ({states})")
        if self.max_mem_mb is not None and resource is not None:
            peak_mb = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024
            if peak_mb > self.max_mem_mb:
                raise BudgetExceeded(f"memory budget of {self.max_mem_mb} MB exceeded")
