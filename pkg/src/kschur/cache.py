"""Persistent result cache: one append-only JSON-lines log plus an index sidecar.

Writers take an advisory file lock; readers never lock.  A stale or
missing index is rebuilt by scanning the log, so a crash between the two
writes loses nothing.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from pathlib import Path

from filelock import FileLock

ENV_VAR = "KSCHUR_CACHE_DIR"
DEFAULT_DIR = ".kschur-cache"
LOG_NAME = "results.jsonl"
INDEX_NAME = "index.json"


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def cache_key(op: str, inputs, version: str) -> str:
    return hashlib.sha256(canonical([op, inputs, version]).encode()).hexdigest()


def resolve_dir(flag: str | None) -> Path:
    """Environment variable beats the command-line flag, which beats the default."""
    return Path(os.environ.get(ENV_VAR) or flag or DEFAULT_DIR)


class ResultCache:
    def __init__(self, directory: str | os.PathLike, version: str):
        self.dir = Path(directory)
        self.version = version
        self.log = self.dir / LOG_NAME
        self.index_path = self.dir / INDEX_NAME
        self._index: dict[str, list[int]] | None = None

    # -- index handling
    def _load_index(self) -> dict[str, list[int]]:
        if self._index is not None:
            return self._index
        index: dict[str, list[int]] = {}
        if self.index_path.exists():
            try:
                index = json.loads(self.index_path.read_text())
            except (OSError, json.JSONDecodeError):
                index = {}
        log_size = self.log.stat().st_size if self.log.exists() else 0
        covered = max((off + ln for off, ln in index.values()), default=0)
        if covered != log_size:
            index = self._scan()
        self._index = index
        return index

    def _scan(self) -> dict[str, list[int]]:
        index: dict[str, list[int]] = {}
        if not self.log.exists():
            return index
        offset = 0
        with open(self.log, "rb") as fh:
            for line in fh:
                try:
                    rec = json.loads(line)
                    index[rec["key"]] = [offset, len(line)]
                except (json.JSONDecodeError, KeyError):
                    pass  # torn trailing write
                offset += len(line)
        return index

    # -- public API
    def key(self, op: str, inputs) -> str:
        return cache_key(op, inputs, self.version)

    def get(self, op: str, inputs):
        entry = self._load_index().get(self.key(op, inputs))
        if entry is None:
            return None
        offset, length = entry
        with open(self.log, "rb") as fh:
            fh.seek(offset)
            rec = json.loads(fh.read(length))
        return rec["value"]

    def put(self, op: str, inputs, value) -> None:
        self.dir.mkdir(parents=True, exist_ok=True)
        key = self.key(op, inputs)
        line = (canonical({"key": key, "value": value, "created_at": time.time()}) + "\n").encode()
        with FileLock(str(self.dir / "write.lock")):
            self._index = None
            index = self._load_index()
            if key in index:
                return
            offset = self.log.stat().st_size if self.log.exists() else 0
            pad = b""
            if offset:
                with open(self.log, "rb") as fh:
                    fh.seek(offset - 1)
                    if fh.read(1) != b"\n":
                        pad = b"\n"  # close off a torn record
            with open(self.log, "ab") as fh:
                fh.write(pad + line)
            offset += len(pad)
            index[key] = [offset, len(line)]
            tmp = self.index_path.with_suffix(".tmp")
            tmp.write_text(canonical(index))
            os.replace(tmp, self.index_path)
