"""Flat record serialization, the JSON-lines result cache, and tables of H factorizations."""

from __future__ import annotations

import hashlib
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from typing import Iterable

from .arith import format_factorization
from .classgroup import class_number
from .congruence import CongruenceRecord, H_value, _record, prime_pairs, scan
from .quadratic import fundamental_unit

log = logging.getLogger(__name__)

SCAN_COLUMNS = [f.name for f in fields(CongruenceRecord)]

# which -> (class number of p1 p2, largest p1 p2)
TABLES = {"a1": (1, 161), "a2": (3, 1509), "a3": (5, 3997)}


def record_to_dict(rec: CongruenceRecord) -> dict:
    return asdict(rec)


def record_from_dict(data: dict) -> CongruenceRecord:
    kwargs = {}
    for name in SCAN_COLUMNS:
        value = data[name]
        if name == "holds_mod8":
            if isinstance(value, str):
                value = value.lower() == "true"
            kwargs[name] = bool(value)
        else:
            kwargs[name] = int(value)
    return CongruenceRecord(**kwargs)


def checksum(data: dict) -> str:
    payload = json.dumps({k: data[k] for k in SCAN_COLUMNS}, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


class RecordCache:
    """Append-only JSON-lines cache of congruence records keyed by (p1, p2, f).

    Lines that fail to parse or whose checksum does not match are dropped on
    load, so the affected records get recomputed.
    """

    def __init__(self, path: str | os.PathLike):
        self.path = os.fspath(path)
        self.records: dict[tuple[int, int, int], CongruenceRecord] = {}
        self.corrupt = 0
        self.hits = 0
        if os.path.exists(self.path):
            self._load()

    def _load(self) -> None:
        with open(self.path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    data = json.loads(line)
                    if data.pop("checksum") != checksum(data):
                        raise ValueError("checksum mismatch")
                    rec = record_from_dict(data)
                except (ValueError, KeyError, TypeError) as exc:
                    log.warning("%s:%d: discarding cached record (%s)", self.path, lineno, exc)
                    self.corrupt += 1
                    continue
                self.records[(rec.p1, rec.p2, rec.f)] = rec

    def get(self, key: tuple[int, int, int]) -> CongruenceRecord | None:
        rec = self.records.get(key)
        if rec is not None:
            self.hits += 1
        return rec

    def put_many(self, recs: Iterable[CongruenceRecord]) -> None:
        recs = [r for r in recs if (r.p1, r.p2, r.f) not in self.records]
        if not recs:
            return
        with open(self.path, "a", encoding="utf-8") as fh:
            for rec in recs:
                data = record_to_dict(rec)
                data["checksum"] = checksum(data)
                fh.write(json.dumps(data, sort_keys=True) + "\n")
                self.records[(rec.p1, rec.p2, rec.f)] = rec


def cached_scan(bound: int, f_set=(1, 2), jobs: int = 1, cache: RecordCache | None = None) -> list[CongruenceRecord]:
    """Like ``congruence.scan`` but reading and writing a record cache."""
    if cache is None:
        return scan(bound, f_set, jobs)
    keys = [(p1, p2, f) for p1, p2 in prime_pairs(bound) for f in sorted(set(f_set))]
    missing = [k for k in keys if cache.get(k) is None]
    if missing:
        if jobs > 1 and len(missing) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                fresh = list(pool.map(_record, missing, chunksize=8))
        else:
            fresh = [_record(k) for k in missing]
        cache.put_many(fresh)
    out = [cache.records[k] for k in keys]
    out.sort(key=lambda r: (r.p1 * r.p2, r.f))
    return out


@dataclass(frozen=True)
class TableRow:
    p1: int
    p2: int
    f: int
    psi_omega: int
    unit: tuple[int, int] | None
    h_pos: int
    h_neg1: int
    h_neg2: int
    theta: int
    H: int

    def delta_label(self, style: str = "text") -> str:
        D = self.p1 * self.p2
        if self.f == 1:
            return f"{D}={self.p1}·{self.p2}" if style == "text" else f"{D}={self.p1}*{self.p2}"
        return f"{D}·2²" if style == "text" else f"{D}*2^2"

    def text(self) -> str:
        unit = f"({self.unit[0]},{self.unit[1]})" if self.unit else ""
        return " | ".join([
            self.delta_label(),
            str(self.psi_omega),
            unit,
            f"{self.h_pos},{self.h_neg1},{self.h_neg2}",
            str(self.theta),
            format_factorization(self.H, "text"),
        ])

    def as_dict(self) -> dict:
        return {
            "delta": self.p1 * self.p2 * self.f * self.f,
            "p1": self.p1,
            "p2": self.p2,
            "f": self.f,
            "psi_omega": self.psi_omega,
            "x": self.unit[0] if self.unit else "",
            "y": self.unit[1] if self.unit else "",
            "h_pos": self.h_pos,
            "h_neg1": self.h_neg1,
            "h_neg2": self.h_neg2,
            "theta": self.theta,
            "H": self.H,
            "H_factored": format_factorization(self.H, "ascii"),
        }


TABLE_COLUMNS = ["delta", "p1", "p2", "f", "psi_omega", "x", "y", "h_pos", "h_neg1", "h_neg2",
                 "theta", "H", "H_factored"]


def table_rows(which: str) -> list[TableRow]:
    """Rows of a reference table: pairs with the given h(p1 p2) up to its bound, f = 1 then 2."""
    try:
        h, bound = TABLES[which.lower()]
    except KeyError:
        raise ValueError(f"unknown table {which!r}; choose from {', '.join(TABLES)}") from None
    rows = []
    for p1, p2 in prime_pairs(bound):
        if class_number(p1 * p2) != h:
            continue
        eps = fundamental_unit(p1 * p2)
        for f in (1, 2):
            rec = H_value(p1, p2, f)
            rows.append(TableRow(
                p1, p2, f, rec.psi_omega, (eps.q, eps.r) if f == 1 else None,
                rec.h_pos, rec.h_neg1, rec.h_neg2, rec.theta, rec.H,
            ))
    return rows
