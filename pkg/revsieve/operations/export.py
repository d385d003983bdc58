from __future__ import annotations

import csv
import dataclasses
from collections.abc import Iterable, Sequence
from io import StringIO
from typing import Any

from ..core.config import OutputFormat
from ..core.tables import CountTable
from ..serializers.json import JSONSerializer
from ..utils.formatters import Formatter
from .analytic import HeuristicRow
from .arith import ArithSumRecord
from .squarefree import SquarefreeRow

COUNT_FIELDS = ["n", "count", "method", "seconds"]
SQUAREFREE_FIELDS = ["n", "Q", "Q_tilde", "Q_ratio", "Q_tilde_ratio", "deviation"]
ARITH_FIELDS = ["n", "d", "j", "T", "R", "Rtilde_re", "Rtilde_im", "f_d"]
HEURISTIC_FIELDS = ["n", "theta", "theta_source", "theta_exp", "ratio"]

class ExportOperations:

    def __init__(self) -> None:
        self.serializer = JSONSerializer()

    def to_json(self, records: Any, *, pretty: bool = False) -> str:
        return self.serializer.serialize(records, pretty=pretty) + "\n"

    def to_csv(
        self,
        rows: Sequence[dict[str, Any]],
        *,
        fields: list[str] | None = None,
        include_headers: bool = True,
    ) -> str:
        if fields is None:
            if not rows:
                return ""
            fields = list(rows[0].keys())

        output = StringIO()
        writer = csv.DictWriter(output, fieldnames=fields, lineterminator="\n")
        if include_headers:
            writer.writeheader()
        for row in rows:
            writer.writerow({field: self._serialize_value(row.get(field)) for field in fields})
        return output.getvalue()

    def _serialize_value(self, value: Any) -> str:
        # str enums would otherwise print as Class.MEMBER
        return Formatter.format_value(value)

def count_rows(table: CountTable, *, timing: bool = False) -> list[dict[str, Any]]:
    return [
        {
            "n": row.n,
            "count": row.count,
            "method": row.method,
            "seconds": Formatter.format_seconds(row.seconds, timing=timing),
        }
        for row in table
    ]

def squarefree_rows(rows: Iterable[SquarefreeRow]) -> list[dict[str, Any]]:
    return [
        {
            "n": row.n,
            "Q": row.q,
            "Q_tilde": row.q_tilde,
            "Q_ratio": row.q_ratio,
            "Q_tilde_ratio": row.q_tilde_ratio,
            "deviation": row.deviation,
        }
        for row in rows
    ]

def arith_rows(records: Iterable[ArithSumRecord]) -> list[dict[str, Any]]:
    rows = []
    for record in records:
        re_part, im_part = Formatter.format_complex(record.Rtilde)
        rows.append(
            {
                "n": record.n,
                "d": record.d,
                "j": record.j,
                "T": record.T,
                "R": record.R,
                "Rtilde_re": re_part,
                "Rtilde_im": im_part,
                "f_d": record.f_d,
            }
        )
    return rows

def heuristic_rows(rows: Iterable[HeuristicRow]) -> list[dict[str, Any]]:
    return [dataclasses.asdict(row) for row in rows]

def export_rows(
    rows: Sequence[dict[str, Any]],
    *,
    format: OutputFormat | str = OutputFormat.CSV,
    fields: list[str] | None = None,
) -> str:
    exporter = ExportOperations()
    format = OutputFormat(format)
    if format is OutputFormat.JSON:
        return exporter.to_json(list(rows))
    return exporter.to_csv(rows, fields=fields)
