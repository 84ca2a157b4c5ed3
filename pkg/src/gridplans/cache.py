"""On-disk JSON cache for expensive exact results."""

from __future__ import annotations

import hashlib
import json
import os
import time
from pathlib import Path

from . import __version__


def default_cache_dir() -> Path:
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "gridplans"


class ResultCache:
    """One JSON file per (operation, parameters).

    Records hold the result with integers written as decimal strings, the
    package version and the wall time of the original computation. A record
    written by another version is ignored.
    """

    def __init__(self, directory, version: str = __version__):
        self.directory = Path(directory)
        self.version = version

    def _path(self, op: str, params: dict) -> Path:
        blob = json.dumps([op, params], sort_keys=True, separators=(",", ":"))
        digest = hashlib.sha256(blob.encode()).hexdigest()[:24]
        return self.directory / f"{op}-{digest}.json"

    def get(self, op: str, params: dict):
        path = self._path(op, params)
        try:
            record = json.loads(path.read_text("utf-8"))
        except (OSError, ValueError):
            return None
        if record.get("version") != self.version or record.get("params") != params:
            return None
        return record["result"]

    def put(self, op: str, params: dict, result, wall_time: float) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        record = {
            "op": op,
            "params": params,
            "version": self.version,
            "wall_time": wall_time,
            "result": result,
        }
        path = self._path(op, params)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(record, sort_keys=True, indent=1), "utf-8")
        os.replace(tmp, path)

    def fetch(self, op: str, params: dict, compute):
        """Cached ``compute()``; results must be JSON-serialisable."""
        hit = self.get(op, params)
        if hit is not None:
            return hit
        start = time.monotonic()
        result = compute()
        self.put(op, params, result, time.monotonic() - start)
        return result


class NullCache:
    def fetch(self, op, params, compute):
        return compute()
