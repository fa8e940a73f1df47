"""
Trace destinations: CSV and JSON files, plus an optional DuckDB trace store.
"""

import json
import logging
import os
import tempfile
from abc import ABC, abstractmethod
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Mapping, Union

import numpy as np

from ..builder.models import OutputFormat, Trace
from ..builder.utils import format_float
from ..errors import TraceIOError, UsageError
from .sources import batched_rows

logger = logging.getLogger(__name__)

TRACE_FORMAT_VERSION = 1
COLUMNS = ("t", "p1", "p2", "p3")
DEFAULT_DATASET = "su3_traces"
DEFAULT_TABLE = "traces"


def _plain(value: Any) -> Any:
    """Convert numpy scalars to built-in types for serialization."""
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def _header(metadata: Mapping[str, Any]) -> Dict[str, Any]:
    header = {key: _plain(value) for key, value in metadata.items()}
    header["format_version"] = TRACE_FORMAT_VERSION
    return dict(sorted(header.items()))


def write_atomically(path: Union[str, Path], text: str) -> Path:
    """
    Write text to a sibling temp file and rename it over ``path``.

    Raises:
        TraceIOError: If the directory is missing or not writable
    """
    target = Path(path)
    directory = target.parent if str(target.parent) else Path(".")
    try:
        handle = tempfile.NamedTemporaryFile(
            "w", encoding="utf-8", newline="\n", dir=directory,
            prefix=f".{target.name}.", suffix=".tmp", delete=False)
    except OSError as e:
        raise TraceIOError(f"cannot write to {directory}: {e.strerror or e}") from e
    try:
        with handle:
            handle.write(text)
        os.replace(handle.name, target)
    except OSError as e:
        try:
            os.unlink(handle.name)
        except OSError:
            pass
        raise TraceIOError(f"cannot write {target}: {e.strerror or e}") from e
    logger.debug("Wrote %s", target)
    return target


class TraceDestination(ABC):
    """A file format that traces can be written to and read back from."""

    suffix: str

    @abstractmethod
    def render(self, trace: Trace) -> str:
        """Serialize a trace."""

    @abstractmethod
    def parse(self, text: str) -> Trace:
        """Rebuild a trace from its serialized form."""

    def write(self, trace: Trace, path: Union[str, Path]) -> Path:
        """
        Write a trace atomically.

        Args:
            trace: Trace to write
            path: Output file

        Returns:
            The path written
        """
        return write_atomically(path, self.render(trace))

    def read(self, path: Union[str, Path]) -> Trace:
        try:
            with open(path, "r", encoding="utf-8") as handle:
                return self.parse(handle.read())
        except OSError as e:
            raise TraceIOError(f"cannot read {path}: {e.strerror or e}") from e


class CsvDestination(TraceDestination):
    """
    CSV trace file.

    Metadata sits above the header as ``# key: value`` comment lines; rows
    are ``t,p1,p2,p3`` with shortest round-trip float text.
    """

    suffix = ".csv"

    def render(self, trace: Trace) -> str:
        lines = [f"# {key}: {self._meta_text(value)}" for key, value in _header(trace.metadata).items()]
        lines.append(",".join(COLUMNS))
        for t, row in zip(trace.times, trace.probabilities):
            lines.append(",".join(format_float(v) for v in (t, *row)))
        return "\n".join(lines) + "\n"

    @staticmethod
    def _meta_text(value: Any) -> str:
        if isinstance(value, float):
            return format_float(value)
        if isinstance(value, str):
            return value
        return json.dumps(value)

    def parse(self, text: str) -> Trace:
        metadata: Dict[str, Any] = {}
        rows: List[List[float]] = []
        header_seen = False
        for line in text.splitlines():
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition(":")
                metadata[key.strip()] = self._meta_value(value.strip())
            elif not header_seen:
                if tuple(line.split(",")) != COLUMNS:
                    raise UsageError(f"unexpected CSV header {line!r}")
                header_seen = True
            elif line:
                rows.append([float(v) for v in line.split(",")])
        data = np.array(rows, dtype=float).reshape(-1, 4)
        return Trace(data[:, 0], data[:, 1:], metadata)

    @staticmethod
    def _meta_value(text: str) -> Any:
        try:
            return json.loads(text)
        except json.JSONDecodeError:
            return text


class JsonDestination(TraceDestination):
    """JSON trace file with sorted keys: metadata, columns and rows."""

    suffix = ".json"

    def render(self, trace: Trace) -> str:
        payload = {
            "metadata": _header(trace.metadata),
            "columns": list(COLUMNS),
            "rows": [[float(t), *(float(v) for v in row)]
                     for t, row in zip(trace.times, trace.probabilities)],
        }
        return json.dumps(payload, sort_keys=True) + "\n"

    def parse(self, text: str) -> Trace:
        payload = json.loads(text)
        data = np.array(payload["rows"], dtype=float).reshape(-1, 4)
        return Trace(data[:, 0], data[:, 1:], payload.get("metadata", {}))


_DESTINATIONS = {
    OutputFormat.CSV: CsvDestination,
    OutputFormat.JSON: JsonDestination,
}


def destination_for(output_format: Union[str, OutputFormat]) -> TraceDestination:
    """CsvDestination or JsonDestination for a format name."""
    try:
        return _DESTINATIONS[OutputFormat(output_format)]()
    except ValueError as e:
        raise UsageError(f"unknown format {output_format!r}; expected csv or json") from e


def read_trace(path: Union[str, Path]) -> Trace:
    """Read a trace file, picking the parser from the suffix."""
    fmt = OutputFormat.JSON if str(path).endswith(".json") else OutputFormat.CSV
    return destination_for(fmt).read(path)


@dataclass
class DuckDBDestination:
    """
    Load traces into one DuckDB table through a dlt pipeline.

    Every row carries its run id, so a whole sweep lands in a single table.
    """

    database_path: str
    pipeline_name: str = "su3_atom_traces"
    dataset_name: str = DEFAULT_DATASET
    table_name: str = DEFAULT_TABLE
    batch_size: int = 1000

    def get_dlt_destination(self) -> Any:
        import dlt

        return dlt.destinations.duckdb(credentials=self.database_path)

    def load(self, traces: Mapping[str, Trace]) -> Any:
        """
        Append every trace to the table.

        Args:
            traces: Run id to trace

        Returns:
            dlt load info
        """
        import dlt

        pipeline = dlt.pipeline(
            pipeline_name=self.pipeline_name,
            destination=self.get_dlt_destination(),
            dataset_name=self.dataset_name,
            pipelines_dir=str(Path(self.database_path).resolve().parent / ".dlt"),
        )

        def rows():
            for run_id in sorted(traces):
                trace = traces[run_id]
                extra = {key: trace.metadata.get(key) for key in ("model", "field", "initial_level")}
                yield from batched_rows(trace, run_id, self.batch_size, extra)

        resource = dlt.resource(rows(), name=self.table_name, write_disposition="append")
        info = pipeline.run(resource)
        logger.info("Loaded %d traces into %s", len(traces), self.database_path)
        return info


class TraceStore:
    """Read-only view of a DuckDB trace store."""

    def __init__(self, database_path: str, dataset_name: str = DEFAULT_DATASET,
                 table_name: str = DEFAULT_TABLE):
        self.database_path = database_path
        self.dataset_name = dataset_name
        self.table_name = table_name

    def summary(self) -> List[Dict[str, Any]]:
        """
        Per-run row counts and population ranges.

        Returns:
            One dict per run id, ordered by run id
        """
        import duckdb

        query = (
            f"SELECT run_id, count(*) AS samples, min(p1), max(p1), min(p2), max(p2), min(p3), max(p3) "
            f"FROM {self.dataset_name}.{self.table_name} GROUP BY run_id ORDER BY run_id"
        )
        con = duckdb.connect(database=self.database_path, read_only=True)
        try:
            result = con.execute(query).fetchall()
        finally:
            con.close()
        keys = ("run_id", "samples", "p1_min", "p1_max", "p2_min", "p2_max", "p3_min", "p3_max")
        return [dict(zip(keys, row)) for row in result]
