"""On-disk cache: one file per key, checksummed payloads, atomic writes."""

from __future__ import annotations

import hashlib
import json
import os
import sys
import tempfile
from pathlib import Path
from typing import Callable

ENV_CACHE_DIR = "CELLKIT_CACHE_DIR"


def _warn(message: str) -> None:
    print(f"cellkit: {message}", file=sys.stderr)


def resolve_cache_dir(flag_value: str | None) -> Path | None:
    """The cache directory from the flag, else the environment, else None."""
    if flag_value:
        return Path(flag_value)
    env = os.environ.get(ENV_CACHE_DIR)
    return Path(env) if env else None


class DiskCache:
    """Content-addressed JSON cache keyed by dictionaries.

    Each entry is one file holding a canonical JSON payload line plus a
    sha256 trailer; corrupt or mismatched entries are discarded with a
    warning and recomputed. An unwritable directory degrades to pass-through
    with a warning rather than failing the command.
    """

    def __init__(self, directory: Path, *, warn: Callable[[str], None] = _warn) -> None:
        self.directory = Path(directory)
        self.warn = warn
        self.hits = 0
        self.misses = 0
        self.enabled = True
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
            probe = tempfile.NamedTemporaryFile(dir=self.directory, delete=True)
            probe.close()
        except OSError as exc:
            self.enabled = False
            self.warn(f"cache directory {self.directory} is not writable ({exc}); continuing without cache")

    def _path(self, key: dict) -> Path:
        canon = json.dumps(key, sort_keys=True, separators=(",", ":"))
        digest = hashlib.sha256(canon.encode()).hexdigest()
        return self.directory / f"{digest}.json"

    def _load(self, path: Path, key: dict):
        try:
            text = path.read_text()
        except OSError:
            return None
        lines = text.splitlines()
        if len(lines) != 2 or not lines[1].startswith("sha256:"):
            self.warn(f"discarding malformed cache entry {path}")
            return None
        payload_line, trailer = lines
        if hashlib.sha256(payload_line.encode()).hexdigest() != trailer[len("sha256:"):]:
            self.warn(f"discarding cache entry {path} with a bad checksum")
            return None
        try:
            payload = json.loads(payload_line)
        except json.JSONDecodeError:
            self.warn(f"discarding unparseable cache entry {path}")
            return None
        if payload.get("key") != key:
            self.warn(f"discarding cache entry {path} whose key does not match")
            return None
        return payload

    def _store(self, path: Path, key: dict, value) -> None:
        payload_line = json.dumps({"key": key, "value": value}, sort_keys=True,
                                  separators=(",", ":"))
        trailer = "sha256:" + hashlib.sha256(payload_line.encode()).hexdigest()
        try:
            fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
            with os.fdopen(fd, "w") as fh:
                fh.write(payload_line + "\n" + trailer + "\n")
            os.replace(tmp, path)
        except OSError as exc:
            self.warn(f"cache write to {path} failed ({exc}); continuing without storing")

    def get_or_compute(self, key: dict, compute: Callable[[], object]):
        """Return the cached value for key, computing and storing on a miss."""
        if not self.enabled:
            return compute()
        path = self._path(key)
        if path.exists():
            payload = self._load(path, key)
            if payload is not None:
                self.hits += 1
                return payload["value"]
        self.misses += 1
        value = compute()
        self._store(path, key, value)
        return value

    def stats(self) -> str:
        return f"cache: {self.hits} hit(s), {self.misses} miss(es) in {self.directory}"
