from __future__ import annotations

import dataclasses
import json
import math
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import BaseModel

class JSONSerializer:

    def serialize(self, data: Any, *, pretty: bool = False) -> str:
        serialized = self._serialize_value(data)
        indent = 2 if pretty else None
        # sorted keys keep output byte-identical across runs
        return json.dumps(serialized, indent=indent, ensure_ascii=False, sort_keys=True, allow_nan=False)

    def _serialize_value(self, value: Any) -> Any:
        if isinstance(value, Enum):
            return value.value
        elif isinstance(value, np.ndarray):
            return [self._serialize_value(item) for item in value.tolist()]
        elif isinstance(value, np.generic):
            return self._serialize_value(value.item())
        elif isinstance(value, bool) or value is None or isinstance(value, (int, str)):
            return value
        elif isinstance(value, float):
            return value if math.isfinite(value) else str(value)
        elif isinstance(value, Fraction):
            return f"{value.numerator}/{value.denominator}"
        elif isinstance(value, complex):
            return {"re": self._serialize_value(value.real), "im": self._serialize_value(value.imag)}
        elif isinstance(value, Path):
            return str(value)
        elif isinstance(value, BaseModel):
            return self._serialize_value(value.model_dump())
        elif dataclasses.is_dataclass(value) and not isinstance(value, type):
            return {f.name: self._serialize_value(getattr(value, f.name)) for f in dataclasses.fields(value) if f.repr}
        elif isinstance(value, dict):
            return {str(k): self._serialize_value(v) for k, v in value.items()}
        elif isinstance(value, (list, tuple, set)):
            return [self._serialize_value(item) for item in value]
        else:
            raise TypeError(f"Cannot serialize {type(value).__name__} to JSON")
