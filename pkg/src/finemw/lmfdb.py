"""Optional curve-data provider backed by the LMFDB public API.

Resolution order is cache file, bundled fixture, then network; the offline
flag cuts the chain before the network.  Cache files and fixtures share one
JSON format (label, conductor, rank, a_p table) and are named by the
percent-encoded label, so a record fetched once keeps resolving with
networking disabled.  Every core computation in this package runs without
this module; it only feeds the reduction-type hypothesis checks.
"""

from __future__ import annotations

import json
import os
import re
import tempfile
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from urllib.parse import quote

import requests

from .hypotheses import CurveData, reduction_type
from .numbertheory import is_prime

DEFAULT_BASE_URL = "https://www.lmfdb.org/api"
BASE_URL_ENV = "FINEMW_LMFDB_URL"

_CREMONA_RE = re.compile(r"^[1-9][0-9]*[a-z]+[0-9]*$")
_LMFDB_RE = re.compile(r"^[1-9][0-9]*\.[a-z]+[0-9]+$")


class LmfdbError(Exception):
    """Base class for provider failures."""


class CurveNotFoundError(LmfdbError):
    pass


class OfflineMissError(LmfdbError):
    pass


class NetworkError(LmfdbError):
    pass


class ProtocolError(LmfdbError):
    pass


class BadReductionError(LmfdbError):
    pass


class MissingApError(LmfdbError):
    pass


def _default_base_url() -> str:
    return os.environ.get(BASE_URL_ENV, DEFAULT_BASE_URL)


@dataclass(frozen=True)
class ClientConfig:
    """Provider settings; the offline flag forces fixture/cache resolution."""

    base_url: str = field(default_factory=_default_base_url)
    timeout: float = 10.0
    retries: int = 3
    cache_dir: Path | None = None
    offline: bool = False


def validate_label(label: str) -> str:
    if _CREMONA_RE.match(label) or _LMFDB_RE.match(label):
        return label
    raise ValueError(f"label {label!r} matches neither label grammar")


def _record_filename(label: str) -> str:
    return quote(label, safe="") + ".json"


def _record_to_curve(record: dict, label: str, source: str) -> CurveData:
    try:
        ap = {int(q): int(a) for q, a in record["ap"].items()}
        got_label = record["label"]
        conductor = record.get("conductor")
        rank = record.get("rank")
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise ProtocolError(f"malformed record for {label!r}: {exc}") from None
    if got_label != label:
        raise ProtocolError(f"record label {got_label!r} does not match {label!r}")
    if not all(is_prime(q) for q in ap):
        raise ProtocolError(f"non-prime a_p key in record for {label!r}")
    try:
        return CurveData(
            label=label, ap=ap, rank=rank, conductor=conductor, source=source
        )
    except ValueError as exc:  # Hasse violations and similar
        raise ProtocolError(str(exc)) from None


def _read_record(path: Path, label: str, source: str) -> CurveData:
    try:
        record = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ProtocolError(f"unreadable record {path}: {exc}") from None
    return _record_to_curve(record, label, source)


def _fixture_path(label: str):
    candidate = resources.files("finemw").joinpath("fixtures", _record_filename(label))
    return candidate if candidate.is_file() else None


def curve_record(curve: CurveData) -> dict:
    """Cache-file form of a curve record."""
    return {
        "label": curve.label,
        "conductor": curve.conductor,
        "rank": curve.rank,
        "ap": {str(q): a for q, a in sorted(curve.ap.items())},
    }


def _write_cache(cache_dir: Path, curve: CurveData) -> None:
    cache_dir.mkdir(parents=True, exist_ok=True)
    target = cache_dir / _record_filename(curve.label)
    text = json.dumps(curve_record(curve), indent=2, sort_keys=True) + "\n"
    fd, tmp = tempfile.mkstemp(dir=cache_dir, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, target)  # atomic publish; concurrent readers see old or new
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _fetch_network(cfg: ClientConfig, label: str) -> CurveData:
    key = "lmfdb_label" if _LMFDB_RE.match(label) else "Clabel"
    url = f"{cfg.base_url.rstrip('/')}/ec_curvedata/"
    params = {key: label, "_format": "json"}
    last_error = None
    for attempt in range(cfg.retries):
        if attempt:
            time.sleep(0.5 * 2 ** (attempt - 1))  # jitter-free for determinism
        try:
            response = requests.get(url, params=params, timeout=cfg.timeout)
        except requests.RequestException as exc:
            last_error = exc
            continue
        if response.status_code >= 500:
            last_error = RuntimeError(f"server returned {response.status_code}")
            continue
        if response.status_code != 200:
            raise ProtocolError(f"unexpected status {response.status_code} for {label!r}")
        try:
            payload = response.json()
            rows = payload["data"]
        except (ValueError, KeyError) as exc:
            raise ProtocolError(f"malformed response for {label!r}: {exc}") from None
        if not rows:
            raise CurveNotFoundError(f"no curve with label {label!r}")
        row = rows[0]
        record = {
            "label": label,
            "conductor": row.get("conductor"),
            "rank": row.get("rank"),
            "ap": _aplist_to_map(row),
        }
        return _record_to_curve(record, label, "network")
    raise NetworkError(f"fetch of {label!r} failed after {cfg.retries} attempts: {last_error}")


def _aplist_to_map(row: dict) -> dict:
    """The API returns traces at the first primes in order, as 'aplist'."""
    aplist = row.get("aplist")
    if not isinstance(aplist, list):
        raise ProtocolError("response carries no a_p list")
    primes = []
    n = 2
    while len(primes) < len(aplist):
        if is_prime(n):
            primes.append(n)
        n += 1
    conductor = row.get("conductor")
    out = {}
    for q, a in zip(primes, aplist):
        if conductor and conductor % q == 0:
            continue  # bad-reduction entries are not traces of good Frobenius
        out[str(q)] = a
    return out


def fetch_curve(cfg: ClientConfig, label: str) -> CurveData:
    """Resolve a curve record: cache, then fixture, then network.

    A successful network fetch is written to the cache atomically, so the
    next call succeeds with networking disabled and returns equal data.
    """
    try:
        label = validate_label(label)
    except ValueError:
        raise CurveNotFoundError(
            f"label {label!r} is not a recognized curve label"
        ) from None
    if cfg.cache_dir is not None:
        cached = Path(cfg.cache_dir) / _record_filename(label)
        if cached.is_file():
            return _read_record(cached, label, "cache")
    fixture = _fixture_path(label)
    if fixture is not None:
        with resources.as_file(fixture) as path:
            return _read_record(path, label, "fixture")
    if cfg.offline:
        raise OfflineMissError(f"offline and no cached record for {label!r}")
    curve = _fetch_network(cfg, label)
    if cfg.cache_dir is not None:
        _write_cache(Path(cfg.cache_dir), curve)
    return curve


@dataclass(frozen=True)
class ReductionVerdict:
    label: str
    p: int
    verdict: str
    ap: int
    provenance: str

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "p": self.p,
            "verdict": self.verdict,
            "ap": self.ap,
            "provenance": self.provenance,
        }


def classify_curve(curve: CurveData, p: int) -> ReductionVerdict:
    """Reduction-type verdict at p, with data provenance attached."""
    if curve.conductor is not None and curve.conductor % p == 0:
        raise BadReductionError(
            f"{curve.label} has bad reduction at {p} (conductor {curve.conductor})"
        )
    if p not in curve.ap:
        raise MissingApError(f"a_p at {p} not available for {curve.label}")
    verdict = reduction_type(curve.ap[p], p)
    return ReductionVerdict(curve.label, p, verdict, curve.ap[p], curve.source)
