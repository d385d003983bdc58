from __future__ import annotations

import csv
import io
from functools import lru_cache
from importlib import resources

from .tables import CountMethod, CountRow, CountTable

BUNDLED_TABLES = {2: "theta_base2.csv", 10: "theta_base10.csv"}

def _parse_table(base: int, text: str) -> CountTable:
    header = [line[1:].strip() for line in text.splitlines() if line.startswith("#")]
    body = "\n".join(line for line in text.splitlines() if not line.startswith("#"))
    rows = [
        CountRow(n=int(record["n"]), count=int(record["count"]), method=CountMethod.REFERENCE)
        for record in csv.DictReader(io.StringIO(body))
    ]
    return CountTable(base=base, rows=rows, provenance=" ".join(header))

class ReferenceRegistry:

    def __init__(self) -> None:
        self._tables: dict[int, CountTable] = {}

    @classmethod
    def bundled(cls) -> ReferenceRegistry:
        registry = cls()
        for base, filename in BUNDLED_TABLES.items():
            text = resources.files("revsieve.data").joinpath(filename).read_text(encoding="utf-8")
            registry.register(_parse_table(base, text))
        return registry

    def register(self, table: CountTable) -> None:
        if table.base in self._tables:
            raise ValueError(f"A reference table for base {table.base} is already registered")
        self._tables[table.base] = table

    def get(self, base: int) -> CountTable:
        if base not in self._tables:
            raise KeyError(f"No reference table for base {base}")
        return self._tables[base]

    def __contains__(self, base: int) -> bool:
        return base in self._tables

    def __iter__(self):
        return iter(self._tables)

    def __len__(self) -> int:
        return len(self._tables)

    def items(self):
        return self._tables.items()

@lru_cache(maxsize=1)
def default_registry() -> ReferenceRegistry:
    return ReferenceRegistry.bundled()

def reference_table(base: int) -> CountTable:
    return default_registry().get(base)
