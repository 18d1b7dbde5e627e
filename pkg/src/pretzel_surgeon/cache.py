"""Content-addressed JSON cache for scan and continuation results.

Entries are keyed by a digest of the computation kind, its parameters and the
digest of the input file, so an unchanged input (even with a new mtime) hits and
any edit misses.  Writes go through a temporary file and an atomic rename; an
entry that fails to parse or whose checksum disagrees is deleted and recomputed.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Callable, Optional

from .data import DATA_VERSION

ENV_VAR = "PRETZEL_SURGEON_CACHE"
log = logging.getLogger(__name__)


def default_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "pretzel_surgeon"


def file_digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def _blob(obj) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()


def cache_key(kind: str, input_digest: str, params: Optional[dict] = None) -> str:
    return hashlib.sha256(_blob({"kind": kind, "input": input_digest, "params": params or {},
                                 "data_version": DATA_VERSION})).hexdigest()


class ResultCache:
    def __init__(self, store_dir=None):
        self.root = Path(store_dir) if store_dir is not None else default_dir()
        self.hits = 0
        self.misses = 0
        self.evictions = 0

    def _path(self, kind: str, key: str) -> Path:
        return self.root / kind / f"{key}.json"

    def get(self, kind: str, key: str):
        path = self._path(kind, key)
        if not path.exists():
            return None
        try:
            entry = json.loads(path.read_text())
            payload = entry["payload"]
            ok = entry["key"] == key and entry["checksum"] == hashlib.sha256(_blob(payload)).hexdigest()
        except (OSError, ValueError, KeyError, TypeError):
            ok, payload = False, None
        if not ok:
            log.warning("evicting corrupt cache entry %s", path)
            self.evictions += 1
            try:
                path.unlink()
            except OSError:
                pass
            return None
        return payload

    def put(self, kind: str, key: str, payload) -> Path:
        path = self._path(kind, key)
        path.parent.mkdir(parents=True, exist_ok=True)
        entry = {"key": key, "checksum": hashlib.sha256(_blob(payload)).hexdigest(),
                 "payload": payload}
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(entry, fh, sort_keys=True)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return path

    def get_or_compute(self, kind: str, key: str, compute: Callable[[], object]) -> tuple:
        """(payload, hit) where hit says whether the value came from the cache."""
        val = self.get(kind, key)
        if val is not None:
            self.hits += 1
            return val, True
        self.misses += 1
        val = compute()
        self.put(kind, key, val)
        return val, False
