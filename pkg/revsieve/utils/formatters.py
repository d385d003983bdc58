from __future__ import annotations

import math
from enum import Enum
from fractions import Fraction
from typing import Any

import numpy as np

class Formatter:

    @staticmethod
    def format_float(value: float | None) -> str:
        if value is None:
            return ""
        value = float(value)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        # shortest string that round-trips
        return repr(value)

    @staticmethod
    def format_fraction(value: Fraction | None) -> str:
        if value is None:
            return ""
        return f"{value.numerator}/{value.denominator}"

    @staticmethod
    def format_complex(value: complex | None) -> tuple[str, str]:
        if value is None:
            return "", ""
        return Formatter.format_float(value.real), Formatter.format_float(value.imag)

    @staticmethod
    def format_seconds(value: float | None, *, timing: bool = False) -> str:
        if value is None or not timing:
            return ""
        return f"{value:.6f}"

    @staticmethod
    def format_bytes(value: int | None) -> str:
        if value is None:
            return ""
        size = float(value)
        for unit in ["B", "KiB", "MiB", "GiB", "TiB"]:
            if size < 1024.0:
                return f"{size:.1f} {unit}"
            size /= 1024.0
        return f"{size:.1f} PiB"

    @staticmethod
    def format_value(value: Any) -> str:
        if value is None:
            return ""
        if isinstance(value, bool):
            return "true" if value else "false"
        if isinstance(value, Enum):
            return str(value.value)
        if isinstance(value, np.generic):
            value = value.item()
        if isinstance(value, Fraction):
            return Formatter.format_fraction(value)
        if isinstance(value, float):
            return Formatter.format_float(value)
        return str(value)
