"""
ReportingService

Turns lists of result dicts (relation verifications, eigentope records,
recomputed tables, honeycomb statistics) into a pandas DataFrame and renders
it as text, CSV, JSON or a compact HTML table. Identical inputs give
byte-identical output.
"""

import html as html_lib
import json
import math
from pathlib import Path
from typing import Dict, List, Optional

import pandas as pd

from eigentope.core.config import OUTPUT_FORMATS
from eigentope.core.errors import ConfigError


def _cell(value):
    """Flatten sequences for tabular output."""
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(_cell(v) if isinstance(v, (list, tuple)) else repr(v) for v in value) + "]"
    return value


def jsonable(value):
    """JSON-safe copy: numpy scalars unwrapped, nan to null, infinities as strings."""
    if isinstance(value, float) and not math.isfinite(value):
        return None if math.isnan(value) else ("inf" if value > 0 else "-inf")
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: jsonable(v) for k, v in value.items()}
    if hasattr(value, "item"):
        return jsonable(value.item())
    return value


class ReportingService:
    def __init__(
        self,
        rows: Optional[List[Dict]] = None,
        title: str = "eigentope report",
        logger=None,
    ):
        self.rows = list(rows or [])
        self.title = title
        self.logger = logger
        self.df: pd.DataFrame = self.dataframe(self.rows)

        if self.logger:
            self.logger.info(f"[Reporting] Processed {len(self.df)} result rows.")

    # -------------------------------------------------------------------------
    def dataframe(self, rows: Optional[List[Dict]] = None) -> pd.DataFrame:
        rows = rows if rows is not None else self.rows
        columns: List[str] = []
        for row in rows:
            columns.extend(k for k in row if k not in columns)
        return pd.DataFrame([{k: _cell(row.get(k)) for k in columns} for row in rows], columns=columns)

    # -------------------------------------------------------------------------
    def to_text(self) -> str:
        if self.df.empty:
            return "(no rows)"
        return self.df.to_string(index=False)

    def to_csv(self, path: Optional[str | Path] = None):
        """CSV text, or the written path when ``path`` is given."""
        text = self.df.to_csv(index=False, lineterminator="\n")
        if path is None:
            return text
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        return path

    def to_json(self, path: Optional[str | Path] = None):
        """JSON array of the original row dicts (floats written repr-exact)."""
        text = json.dumps(jsonable(self.rows), indent=2) + "\n"
        if path is None:
            return text
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        return path

    def to_html(self, path: str | Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        body = (
            "<p>No rows.</p>"
            if self.df.empty
            else self.df.to_html(index=False, escape=True, na_rep="", border=0)
        )
        title = html_lib.escape(self.title)
        path.write_text(
            "<!doctype html><html><head><meta charset='utf-8'>"
            f"<title>{title}</title></head><body><h1>{title}</h1>{body}</body></html>\n",
            encoding="utf-8",
        )
        return path

    def render(self, fmt: str = "text") -> str:
        if fmt not in OUTPUT_FORMATS:
            raise ConfigError(f"unknown output format {fmt!r}; expected one of {OUTPUT_FORMATS}")
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        return self.to_text()

    def summary(self, status_column: str = "verdict") -> Dict[str, int]:
        """Row counts per value of ``status_column``."""
        if self.df.empty or status_column not in self.df.columns:
            return {}
        counts = self.df[status_column].value_counts()
        return {str(k): int(v) for k, v in sorted(counts.items())}
