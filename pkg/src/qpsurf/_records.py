"""Result records and their JSON-lines / CSV files.

Floats are written with ``repr`` (shortest round-trip form), so reading a
file back reproduces every field exactly.
"""

from __future__ import annotations

__author__ = "Artur Barseghyan <artur.barseghyan@gmail.com>"
__copyright__ = "2026 Artur Barseghyan"
__license__ = "MIT"
__all__ = (
    "RECORD_FIELDS",
    "RecordWriter",
    "ResultRecord",
    "read_records",
)

import csv
import json
import os
from collections.abc import Iterator
from dataclasses import asdict, dataclass, fields
from typing import IO, Any

from qpsurf._engine import Estimate, RunConfig
from qpsurf._enums import OutputFormat


@dataclass(frozen=True)
class ResultRecord:
    model: str
    d: int
    p: float
    r: float
    n_samples: int
    p_l_mean: float
    std_error: float
    r_tot_log10: float
    seed: int
    wall_time_s: float
    version: str

    @classmethod
    def from_estimate(
        cls, config: RunConfig, result: Estimate, version: str
    ) -> ResultRecord:
        return cls(
            model=config.model.value,
            d=config.d,
            p=config.noise.p,
            r=config.noise.r,
            n_samples=result.n_samples,
            p_l_mean=result.p_l_mean,
            std_error=result.std_error,
            r_tot_log10=result.log10_r_tot,
            seed=config.seed,
            wall_time_s=result.wall_time,
            version=version,
        )

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ResultRecord:
        kwargs = {}
        for f in fields(cls):
            raw = data[f.name]
            kwargs[f.name] = _COERCE[f.type](raw)
        return cls(**kwargs)


_COERCE = {"str": str, "int": int, "float": float}

RECORD_FIELDS: tuple[str, ...] = tuple(f.name for f in fields(ResultRecord))


class RecordWriter:
    """Append records to an open text stream, flushing after each one.

    CSV output starts with a header row in :data:`RECORD_FIELDS` order.
    """

    def __init__(self, stream: IO[str], fmt: OutputFormat = OutputFormat.JSONL):
        self._stream = stream
        self._format = fmt
        self._csv: Any = None
        if fmt is OutputFormat.CSV:
            self._csv = csv.writer(stream, lineterminator="\n")
            self._csv.writerow(RECORD_FIELDS)
            stream.flush()

    def write(self, record: ResultRecord) -> None:
        if self._csv is not None:
            self._csv.writerow(
                [_csv_cell(getattr(record, name)) for name in RECORD_FIELDS]
            )
        else:
            self._stream.write(json.dumps(record.to_dict()) + "\n")
        self._stream.flush()


def _csv_cell(value: object) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def read_records(
    path: str | os.PathLike[str], fmt: OutputFormat = OutputFormat.JSONL
) -> Iterator[ResultRecord]:
    """Yield the records stored in *path*."""
    with open(path, encoding="utf-8", newline="") as fh:
        if fmt is OutputFormat.CSV:
            for row in csv.DictReader(fh):
                yield ResultRecord.from_dict(row)
        else:
            for line in fh:
                if line.strip():
                    yield ResultRecord.from_dict(json.loads(line))
