"""On-disk cache of canonical forms, keyed by a digest of the structure.

Entries are written to a temporary file and moved into place with
``os.replace``, so concurrent readers never observe a partial entry and
concurrent writers of the same key simply race to identical content.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

ENV_VAR = "KNESER_COVERS_CACHE_DIR"


def structure_key(n, layers, colors) -> str:
    h = hashlib.sha256()
    h.update(json.dumps([n, list(colors)]).encode())
    for layer in layers:
        h.update(b"|")
        h.update(",".join(format(m, "x") for m in layer).encode())
    return h.hexdigest()


class CanonCache:
    def __init__(self, directory: str | os.PathLike):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self.hits = 0
        self.misses = 0

    def _path(self, key: str) -> Path:
        return self.directory / key[:2] / f"{key}.json"

    def get(self, key: str) -> dict | None:
        path = self._path(key)
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (FileNotFoundError, json.JSONDecodeError):
            self.misses += 1
            return None
        self.hits += 1
        return data

    def put(self, key: str, data: dict) -> None:
        path = self._path(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump(data, fh)
        os.replace(tmp, path)

    def clear(self) -> None:
        for p in self.directory.glob("*/*.json"):
            p.unlink()


_active: CanonCache | None = None


def configure(directory: str | os.PathLike | None) -> CanonCache | None:
    """Use ``directory`` for caching; None disables the cache."""
    global _active
    _active = CanonCache(directory) if directory else None
    return _active


def configure_from_env() -> CanonCache | None:
    return configure(os.environ.get(ENV_VAR) or None)


def active() -> CanonCache | None:
    return _active
