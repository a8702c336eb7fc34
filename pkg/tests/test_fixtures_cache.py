import json

import pytest

from shankslift.cache import ResultCache, cache_key
from shankslift.fixtures import FixtureInvalid, FixtureMissing, available, fixture_load


def test_paper_fixtures():
    assert dict(fixture_load("lemmaP").payload) == {"gens_over_K_T": 9, "trivial_reps": 3, "adjoint_reps": 2,
                                                    "h_L": 28}
    assert fixture_load("levelraising_349")["aux_primes"] == (19, 193, 271, 331, 367, 373)
    assert dict(fixture_load("wild_place_3").payload) == {"h1_dim": 4, "h0_dim": 1, "h2_dim": 0}
    assert set(available()) >= {"lemmaP", "levelraising_349", "wild_place_3", "selmerone", "rankone_kernel"}


def test_fixture_immutable():
    fx = fixture_load("lemmaP")
    with pytest.raises(TypeError):
        fx.payload["h_L"] = 1
    assert fixture_load("lemmaP")["h_L"] == 28
    assert fx.citation


def test_fixture_errors(tmp_path):
    with pytest.raises(FixtureMissing):
        fixture_load("nope")
    (tmp_path / "bad.json").write_text("{not json")
    with pytest.raises(FixtureInvalid):
        fixture_load("bad", str(tmp_path))
    (tmp_path / "empty.json").write_text(json.dumps({"schema_version": 1, "citation": "", "payload": {"x": 1}}))
    with pytest.raises(FixtureInvalid):
        fixture_load("empty", str(tmp_path))


def test_cache_round_trip(tmp_path):
    c = ResultCache(str(tmp_path))
    calls = []

    def compute():
        calls.append(1)
        return {"h": 28, "inv": (2, 14)}

    a = c.fetch(85, "classgroup", {"seed": 0}, compute)
    b = c.fetch(85, "classgroup", {"seed": 0}, compute)
    assert a == b == {"h": 28, "inv": [2, 14]} and len(calls) == 1
    assert cache_key(85, "x", {"s": 1}) != cache_key(85, "x", {"s": 2})
    off = ResultCache(str(tmp_path), enabled=False)
    off.fetch(85, "classgroup", {"seed": 0}, compute)
    assert len(calls) == 2
