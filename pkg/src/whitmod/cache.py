"""On-disk persistence for the straightening swap cache.

One JSON file per algebra fingerprint under the cache directory
(``WHITMOD_CACHE_DIR`` or ~/.cache/whitmod).  Files are versioned and keyed
by a root-system fingerprint; stale files are ignored on load.  Caches are
purely an optimization: results never depend on cache state.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

CACHE_DIR_ENV = "WHITMOD_CACHE_DIR"


def cache_dir():
    env = os.environ.get(CACHE_DIR_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "whitmod"


def _cache_path(algebra):
    return cache_dir() / f"swaps-{algebra.fingerprint()}.json"


def load_into(algebra):
    """Load a persisted swap cache into an algebra; returns entry count."""
    path = _cache_path(algebra)
    if not path.exists():
        return 0
    try:
        doc = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError):
        return 0
    return algebra.import_swap_cache(doc)


def save_from(algebra):
    """Persist an algebra's swap cache atomically; returns the file path."""
    path = _cache_path(algebra)
    path.parent.mkdir(parents=True, exist_ok=True)
    doc = algebra.export_swap_cache()
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(doc, fh, sort_keys=True)
        os.replace(tmp, path)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)
    return path


def stats():
    """Per-file entry counts for every cache file present."""
    out = []
    base = cache_dir()
    if not base.is_dir():
        return out
    for path in sorted(base.glob("swaps-*.json")):
        try:
            doc = json.loads(path.read_text())
            entries = len(doc.get("entries", []))
            fingerprint = doc.get("fingerprint", "?")
        except (OSError, json.JSONDecodeError):
            entries, fingerprint = -1, "corrupt"
        out.append(
            {
                "file": path.name,
                "fingerprint": fingerprint,
                "entries": entries,
                "bytes": path.stat().st_size,
            }
        )
    return out


def clear():
    """Delete all cache files; returns the number removed."""
    base = cache_dir()
    if not base.is_dir():
        return 0
    n = 0
    for path in sorted(base.glob("swaps-*.json")):
        path.unlink()
        n += 1
    return n
