from __future__ import annotations

import re
from fractions import Fraction

_RANGE = re.compile(r"^\s*(\d+)\s*\.\.\s*(\d+)\s*$")

class Validator:

    @staticmethod
    def parse_range(value: str) -> list[int]:
        """'a..b' (inclusive), 'a,b,c' or a single integer."""
        text = value.strip()
        match = _RANGE.match(text)
        if match:
            lo, hi = int(match.group(1)), int(match.group(2))
            if lo > hi:
                raise ValueError(f"Empty range {value!r}: {lo} > {hi}")
            return list(range(lo, hi + 1))
        try:
            return [int(part) for part in text.split(",") if part.strip()]
        except ValueError as e:
            raise ValueError(f"Expected 'a..b', a comma list or an integer, got {value!r}") from e

    @staticmethod
    def parse_ranges(values: list[str]) -> list[int]:
        found: set[int] = set()
        for value in values:
            found.update(Validator.parse_range(value))
        return sorted(found)

    @staticmethod
    def parse_fraction(value: str) -> Fraction:
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"Expected a rational such as '1/4' or '0.25', got {value!r}") from e

    @staticmethod
    def is_power_of_two(value: int) -> bool:
        return isinstance(value, int) and value > 0 and value & (value - 1) == 0
