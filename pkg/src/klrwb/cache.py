"""Content-addressed disk cache for expensive tables.

Entries are pickles named by the SHA-256 of a canonical JSON key that
includes the code version, so stale entries are never read.  A hit or a
miss must never change a result, only how long it takes.
"""

from __future__ import annotations

import hashlib
import json
import os
import pickle
import shutil
from pathlib import Path

from . import __version__

ENV_VAR = "KLRWB_CACHE"


def default_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "klrwb"


class DiskCache:
    def __init__(self, directory: str | Path | None = None, enabled: bool = True):
        self.directory = Path(directory) if directory is not None else default_dir()
        self.enabled = enabled
        self.hits = 0
        self.misses = 0

    def key(self, kind: str, params: dict) -> str:
        blob = json.dumps({"kind": kind, "version": __version__, "params": params}, sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()

    def path(self, kind: str, params: dict) -> Path:
        return self.directory / kind / f"{self.key(kind, params)}.pkl"

    def get_or_compute(self, kind: str, params: dict, compute):
        if not self.enabled:
            return compute()
        p = self.path(kind, params)
        if p.exists():
            try:
                with p.open("rb") as fh:
                    value = pickle.load(fh)
                self.hits += 1
                return value
            except (OSError, pickle.UnpicklingError, EOFError, AttributeError):
                # corrupt or from an incompatible build; recompute
                pass
        self.misses += 1
        value = compute()
        p.parent.mkdir(parents=True, exist_ok=True)
        tmp = p.with_suffix(".tmp")
        with tmp.open("wb") as fh:
            pickle.dump(value, fh, protocol=pickle.HIGHEST_PROTOCOL)
        tmp.replace(p)
        return value

    def clear(self) -> int:
        """Remove every entry; returns the number of files removed."""
        if not self.directory.exists():
            return 0
        count = sum(1 for f in self.directory.rglob("*.pkl"))
        shutil.rmtree(self.directory)
        return count
