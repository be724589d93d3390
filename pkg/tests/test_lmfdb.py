"""Curve-data provider: fixtures, cache round-trips, fault handling."""

import json

import pytest

from finemw import lmfdb
from finemw.hypotheses import SUPERSINGULAR


def cfg(**kw):
    return lmfdb.ClientConfig(**kw)


def test_fixture_fetch_known_curve():
    curve = lmfdb.fetch_curve(cfg(offline=True), "11a1")
    assert curve.conductor == 11
    assert curve.rank == 0
    assert curve.ap[2] == -2 and curve.ap[3] == -1 and curve.ap[5] == 1
    assert curve.source == "fixture"


def test_fixture_fetch_is_deterministic():
    a = lmfdb.fetch_curve(cfg(offline=True), "389.a1")
    b = lmfdb.fetch_curve(cfg(offline=True), "389.a1")
    assert json.dumps(lmfdb.curve_record(a), sort_keys=True) == json.dumps(
        lmfdb.curve_record(b), sort_keys=True
    )


def test_unknown_label_is_not_found():
    with pytest.raises(lmfdb.CurveNotFoundError):
        lmfdb.fetch_curve(cfg(offline=True), "zzz999")


def test_offline_miss_without_fixture(tmp_path):
    with pytest.raises(lmfdb.OfflineMissError):
        lmfdb.fetch_curve(cfg(offline=True, cache_dir=tmp_path), "9999a1")


def test_cache_round_trip_offline(tmp_path, monkeypatch):
    record = {
        "label": "9999a1",
        "conductor": 9999,
        "rank": 1,
        "ap": {"2": 1, "5": -2},
    }

    calls = {"n": 0}

    def fake_get(url, params=None, timeout=None):
        calls["n"] += 1

        class Resp:
            status_code = 200

            @staticmethod
            def json():
                return {
                    "data": [
                        {
                            "conductor": 9999,
                            "rank": 1,
                            "aplist": [1, 0, -2],
                        }
                    ]
                }

        return Resp()

    monkeypatch.setattr(lmfdb.requests, "get", fake_get)
    config = cfg(cache_dir=tmp_path, offline=False)
    fetched = lmfdb.fetch_curve(config, "9999a1")
    assert calls["n"] == 1
    assert fetched.source == "network"
    assert fetched.ap == {2: 1, 5: -2}  # 3 divides 9999: bad-reduction entry dropped

    # networking disabled: the cache must now satisfy the fetch with equal data
    offline = cfg(cache_dir=tmp_path, offline=True)
    cached = lmfdb.fetch_curve(offline, "9999a1")
    assert cached.source == "cache"
    assert lmfdb.curve_record(cached) == lmfdb.curve_record(fetched)
    assert calls["n"] == 1

    on_disk = json.loads((tmp_path / "9999a1.json").read_text())
    assert on_disk == dict(record)


def test_network_retries_then_fails(monkeypatch):
    attempts = {"n": 0}

    def flaky_get(url, params=None, timeout=None):
        attempts["n"] += 1
        raise lmfdb.requests.ConnectionError("down")

    monkeypatch.setattr(lmfdb.requests, "get", flaky_get)
    monkeypatch.setattr(lmfdb.time, "sleep", lambda s: None)
    with pytest.raises(lmfdb.NetworkError):
        lmfdb.fetch_curve(cfg(retries=3), "9998a1")
    assert attempts["n"] == 3


def test_protocol_error_on_hasse_violation(monkeypatch):
    def bad_get(url, params=None, timeout=None):
        class Resp:
            status_code = 200

            @staticmethod
            def json():
                return {"data": [{"conductor": 7, "rank": 0, "aplist": [99]}]}

        return Resp()

    monkeypatch.setattr(lmfdb.requests, "get", bad_get)
    with pytest.raises(lmfdb.ProtocolError):
        lmfdb.fetch_curve(cfg(), "9997a1")


def test_network_not_found(monkeypatch):
    def empty_get(url, params=None, timeout=None):
        class Resp:
            status_code = 200

            @staticmethod
            def json():
                return {"data": []}

        return Resp()

    monkeypatch.setattr(lmfdb.requests, "get", empty_get)
    with pytest.raises(lmfdb.CurveNotFoundError):
        lmfdb.fetch_curve(cfg(), "9996a1")


def test_classify_curve_from_fixture():
    curve = lmfdb.fetch_curve(cfg(offline=True), "11a1")
    verdict = lmfdb.classify_curve(curve, 19)
    assert verdict.verdict == SUPERSINGULAR
    assert verdict.provenance == "fixture"
    assert lmfdb.classify_curve(curve, 7).verdict == "ordinary"
    with pytest.raises(lmfdb.BadReductionError):
        lmfdb.classify_curve(curve, 11)
    with pytest.raises(lmfdb.MissingApError):
        lmfdb.classify_curve(curve, 101)


def test_label_grammar():
    assert lmfdb.validate_label("11a1") == "11a1"
    assert lmfdb.validate_label("389.a1") == "389.a1"
    for bad in ("zzz999", "11A1", ".a1", "11a-1", ""):
        with pytest.raises(ValueError):
            lmfdb.validate_label(bad)


def test_env_override_for_base_url(monkeypatch):
    monkeypatch.setenv(lmfdb.BASE_URL_ENV, "https://mirror.example/api")
    assert cfg().base_url == "https://mirror.example/api"
    monkeypatch.delenv(lmfdb.BASE_URL_ENV)
    assert cfg().base_url == lmfdb.DEFAULT_BASE_URL
