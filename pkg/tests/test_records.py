import json

import pytest

from quadcong.congruence import scan
from quadcong.records import (
    SCAN_COLUMNS, RecordCache, cached_scan, checksum, record_from_dict, record_to_dict, table_rows,
)


def test_record_roundtrip():
    for rec in scan(500):
        data = record_to_dict(rec)
        assert list(data) == SCAN_COLUMNS
        assert record_from_dict(data) == rec
        as_text = {k: str(v).lower() if isinstance(v, bool) else str(v) for k, v in data.items()}
        assert record_from_dict(as_text) == rec


def test_checksum_is_order_independent():
    data = record_to_dict(scan(21)[0])
    assert checksum(data) == checksum(dict(reversed(list(data.items()))))
    assert checksum({**data, "H": 8}) != checksum(data)


def test_cache_fills_then_serves(tmp_path):
    path = tmp_path / "records.jsonl"
    first = cached_scan(600, (1, 2), 1, RecordCache(path))
    assert first == scan(600)
    lines = path.read_text().splitlines()
    assert len(lines) == len(first)
    cache = RecordCache(path)
    assert cached_scan(600, (1, 2), 1, cache) == first
    assert cache.hits == len(first) and cache.corrupt == 0
    assert path.read_text().splitlines() == lines


def test_cache_extends_for_larger_bound(tmp_path):
    path = tmp_path / "records.jsonl"
    cached_scan(300, (1,), 1, RecordCache(path))
    cache = RecordCache(path)
    assert cached_scan(900, (1, 2), 2, cache) == scan(900)
    assert 0 < cache.hits < len(scan(900))


@pytest.mark.parametrize("damage", ["truncate", "garbage", "tamper", "missing_field"])
def test_corrupt_lines_are_recomputed(tmp_path, damage):
    path = tmp_path / "records.jsonl"
    good = cached_scan(400, (1, 2), 1, RecordCache(path))
    lines = path.read_text().splitlines()
    victim = json.loads(lines[3])
    if damage == "truncate":
        lines[3] = lines[3][: len(lines[3]) // 2]
    elif damage == "garbage":
        lines[3] = "not json at all"
    elif damage == "tamper":
        victim["H"] += 8
        lines[3] = json.dumps(victim)
    else:
        del victim["theta"]
        lines[3] = json.dumps(victim)
    path.write_text("\n".join(lines) + "\n")
    cache = RecordCache(path)
    assert cache.corrupt == 1
    assert cached_scan(400, (1, 2), 1, cache) == good
    # the recomputed record was appended and the file now loads with one stale line skipped
    again = RecordCache(path)
    assert again.corrupt == 1 and len(again.records) == len(good)


def test_table_rows_rejects_unknown():
    with pytest.raises(ValueError):
        table_rows("a4")
    assert len(table_rows("A1")) == 20
