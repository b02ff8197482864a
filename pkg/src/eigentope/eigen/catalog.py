"""JSON catalog of eigentope records.

The catalog is a JSON array of records. Appending merges new records into the
existing file, deduplicating on (word, evec rounded to 6 digits).
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, List

from eigentope.core.errors import ConfigError
from eigentope.core.models import EigentopeRecord


def load_catalog(path: str | Path) -> List[EigentopeRecord]:
    path = Path(path)
    if not path.exists():
        return []
    try:
        data = json.loads(path.read_text(encoding="utf-8") or "[]")
    except json.JSONDecodeError as e:
        raise ConfigError(f"catalog {path} is not valid JSON: {e}") from e
    if not isinstance(data, list):
        raise ConfigError(f"catalog {path} must hold a JSON array of records")
    return [EigentopeRecord.from_dict(item) for item in data]


def merge_records(
    existing: Iterable[EigentopeRecord], new: Iterable[EigentopeRecord]
) -> List[EigentopeRecord]:
    """Union keyed on ``record.key()``; newer records replace older ones."""
    merged = {rec.key(): rec for rec in existing}
    for rec in new:
        merged[rec.key()] = rec
    return [merged[k] for k in sorted(merged)]


def save_catalog(records: Iterable[EigentopeRecord], path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = [rec.to_dict() for rec in records]
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return path


def append_catalog(records: Iterable[EigentopeRecord], path: str | Path) -> List[EigentopeRecord]:
    """Merge ``records`` into the catalog at ``path`` and return the merged list."""
    merged = merge_records(load_catalog(path), records)
    save_catalog(merged, path)
    return merged


__all__ = ["load_catalog", "merge_records", "save_catalog", "append_catalog"]
