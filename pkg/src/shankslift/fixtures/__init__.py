"""Versioned numeric fixtures transcribed from published computations."""

import json
import os
from dataclasses import dataclass
from types import MappingProxyType

FIXTURE_DIR = os.path.dirname(os.path.abspath(__file__))
SCHEMA_VERSION = 1


class FixtureMissing(LookupError):
    pass


class FixtureInvalid(ValueError):
    pass


@dataclass(frozen=True)
class Fixture:
    name: str
    citation: str
    payload: MappingProxyType
    provenance: str = "paper"

    def __getitem__(self, key):
        return self.payload[key]


def _freeze(obj):
    if isinstance(obj, dict):
        return MappingProxyType({k: _freeze(v) for k, v in obj.items()})
    if isinstance(obj, list):
        return tuple(_freeze(v) for v in obj)
    return obj


def fixture_load(name, directory=None):
    path = os.path.join(directory or FIXTURE_DIR, f"{name}.json")
    if not os.path.exists(path):
        raise FixtureMissing(name)
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except json.JSONDecodeError as exc:
        raise FixtureInvalid(f"{name}: {exc}") from exc
    if raw.get("schema_version") != SCHEMA_VERSION:
        raise FixtureInvalid(f"{name}: unsupported schema version {raw.get('schema_version')}")
    citation = raw.get("citation", "")
    if not isinstance(citation, str) or not citation.strip():
        raise FixtureInvalid(f"{name}: empty citation")
    payload = raw.get("payload")
    if not isinstance(payload, dict) or not payload:
        raise FixtureInvalid(f"{name}: payload must be a nonempty object")
    if raw.get("provenance", "paper") != "paper":
        raise FixtureInvalid(f"{name}: fixtures always carry provenance 'paper'")
    return Fixture(name, citation, _freeze(payload))


def available(directory=None):
    d = directory or FIXTURE_DIR
    return sorted(f[:-5] for f in os.listdir(d) if f.endswith(".json"))
