from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .errors import DomainError

class CountMethod(str, Enum):

    BITSET = "bitset"
    BLOCKED = "blocked"
    BOTH = "both"
    BRUTE = "brute"
    REFERENCE = "reference"

@dataclass(frozen=True)
class CountRow:

    n: int
    count: int
    method: CountMethod
    seconds: float | None = None

    def __post_init__(self) -> None:
        if self.count < 0:
            raise DomainError(f"Count for n={self.n} must be non-negative, got {self.count}")

@dataclass
class CountTable:

    base: int
    rows: list[CountRow] = field(default_factory=list)
    provenance: str = ""

    def __post_init__(self) -> None:
        self.rows.sort(key=lambda row: row.n)
        seen = [row.n for row in self.rows]
        if len(seen) != len(set(seen)):
            raise DomainError(f"Duplicate digit counts in table: {seen}")

    def add(self, row: CountRow) -> None:
        if row.n in self:
            raise DomainError(f"Row n={row.n} is already present")
        self.rows.append(row)
        self.rows.sort(key=lambda r: r.n)

    def get(self, n: int) -> CountRow:
        for row in self.rows:
            if row.n == n:
                return row
        raise KeyError(f"No row for n={n} in base {self.base} table")

    def counts(self) -> dict[int, int]:
        return {row.n: row.count for row in self.rows}

    def verify_against(self, reference: CountTable) -> list[tuple[int, int, int]]:
        """(n, computed, expected) for every row that disagrees with `reference`.

        Rows missing from the reference are not compared.
        """
        if reference.base != self.base:
            raise DomainError(f"Cannot compare base {self.base} counts with base {reference.base}")
        expected = reference.counts()
        return [
            (row.n, row.count, expected[row.n])
            for row in self.rows
            if row.n in expected and expected[row.n] != row.count
        ]

    def __contains__(self, n: int) -> bool:
        return any(row.n == n for row in self.rows)

    def __iter__(self):
        return iter(self.rows)

    def __len__(self) -> int:
        return len(self.rows)
