"""On-disk JSON cache for expensive per-field computations.

Entries are keyed by (a, operation, parameters).  Payloads are stored with
sorted keys so a cached read serialises to the same bytes as a fresh run.
"""

import hashlib
import json
import logging
import os

log = logging.getLogger(__name__)

CACHE_ENV = "SHANKSLIFT_CACHE_DIR"
CACHE_VERSION = 1


def default_cache_dir():
    env = os.environ.get(CACHE_ENV)
    if env:
        return env
    return os.path.join(os.path.expanduser("~"), ".cache", "shankslift")


def cache_key(a, op, params):
    blob = json.dumps({"a": a, "op": op, "params": params, "v": CACHE_VERSION}, sort_keys=True)
    return f"{op}-a{a}-{hashlib.sha256(blob.encode()).hexdigest()[:16]}"


class ResultCache:
    def __init__(self, directory=None, enabled=True):
        self.directory = directory or default_cache_dir()
        self.enabled = enabled
        self.hits = 0
        self.misses = 0

    def _path(self, key):
        return os.path.join(self.directory, key + ".json")

    def get(self, a, op, params):
        if not self.enabled:
            return None
        path = self._path(cache_key(a, op, params))
        try:
            with open(path) as fh:
                payload = json.load(fh)
        except FileNotFoundError:
            self.misses += 1
            return None
        except json.JSONDecodeError:
            log.warning("ignoring corrupt cache entry %s", path)
            self.misses += 1
            return None
        self.hits += 1
        return payload

    def put(self, a, op, params, payload):
        if not self.enabled:
            return
        os.makedirs(self.directory, exist_ok=True)
        path = self._path(cache_key(a, op, params))
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(payload, fh, sort_keys=True)
        os.replace(tmp, path)

    def fetch(self, a, op, params, compute):
        hit = self.get(a, op, params)
        if hit is not None:
            log.debug("cache hit %s a=%s", op, a)
            return hit
        payload = compute()
        # round-trip so cached and fresh payloads have identical types
        payload = json.loads(json.dumps(payload, sort_keys=True))
        self.put(a, op, params, payload)
        return payload
