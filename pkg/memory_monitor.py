# =============================================================================
# MEMORY MONITORING FOR BENCH CELLS
# =============================================================================

import gc
import logging
import os
import threading
from collections import deque
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Deque, Dict, Iterator

import psutil

LOG = logging.getLogger(__name__)

# Table-backed solvers at the cap allocate hundreds of MB
HIGH_MEMORY_MB = 1000

# Labelled snapshots kept per process; older ones are dropped
MAX_SAMPLES = 256

# Seconds between RSS polls while a cell runs
POLL_INTERVAL_S = 0.005


@dataclass
class MemorySample:
    label: str
    rss_mb: float
    system_percent: float


@dataclass
class MemoryMonitor:
    """
    RSS sampling of the current process.

    Each bench cell runs inside measure(): a snapshot before and after, and a
    background thread polling RSS in between to catch the cell's peak.
    """

    process: psutil.Process = field(default_factory=psutil.Process)
    samples: Deque[MemorySample] = field(default_factory=lambda: deque(maxlen=MAX_SAMPLES))
    poll_interval_s: float = POLL_INTERVAL_S

    def rss_mb(self) -> float:
        # forked pool workers inherit the parent's Process handle
        if self.process.pid != os.getpid():
            self.process = psutil.Process()
        return self.process.memory_info().rss / 1024 / 1024

    def take_snapshot(self, label: str) -> MemorySample:
        sample = MemorySample(label, self.rss_mb(), psutil.virtual_memory().percent)
        self.samples.append(sample)
        if sample.rss_mb > HIGH_MEMORY_MB:
            LOG.warning(f"[MEMORY] ⚠️ High memory usage [{label}]: {sample.rss_mb:.1f}MB")
        else:
            LOG.debug(f"[MEMORY] [{label}]: {sample.rss_mb:.1f}MB")
        return sample

    @contextmanager
    def measure(self, label: str) -> Iterator[Dict[str, float]]:
        """
        Yields a dict filled on exit with rss_before_mb, rss_after_mb and
        peak_rss_mb (highest RSS seen by the poller or either snapshot).
        """
        result: Dict[str, float] = {}
        before = self.take_snapshot(f"{label}_START")
        peak = [before.rss_mb]
        stop = threading.Event()

        def poll() -> None:
            while not stop.wait(self.poll_interval_s):
                peak[0] = max(peak[0], self.rss_mb())

        poller = threading.Thread(target=poll, name=f"rss-{label}", daemon=True)
        poller.start()
        try:
            yield result
        finally:
            stop.set()
            poller.join()
            after = self.take_snapshot(f"{label}_END")
            result["rss_before_mb"] = before.rss_mb
            result["rss_after_mb"] = after.rss_mb
            result["peak_rss_mb"] = max(peak[0], after.rss_mb)
            gc.collect()

    def clear(self) -> None:
        self.samples.clear()

    def summary(self) -> Dict[str, float]:
        if not self.samples:
            return {}
        values = [s.rss_mb for s in self.samples]
        return {"first_mb": values[0], "last_mb": values[-1], "max_mb": max(values)}


# One monitor per process; bench workers each get their own copy
memory_monitor = MemoryMonitor()
