"""
Data bindings for su3-atom.

Turns run configurations into population traces and writes them to CSV or
JSON files, or loads them into a DuckDB trace store through dlt.
"""

from .config import RunConfig
from .destinations import (
    CsvDestination,
    DuckDBDestination,
    JsonDestination,
    TraceDestination,
    TraceStore,
    destination_for,
    read_trace,
)
from .pipeline import SimulationResult, SweepResult, TracePipeline
from .sources import (
    BaseTraceSource,
    ClassicalSource,
    CoherentSource,
    NumberStateSource,
    create_source,
)

__all__ = [
    "RunConfig",
    "TracePipeline",
    "SimulationResult",
    "SweepResult",
    "BaseTraceSource",
    "ClassicalSource",
    "NumberStateSource",
    "CoherentSource",
    "create_source",
    "TraceDestination",
    "CsvDestination",
    "JsonDestination",
    "DuckDBDestination",
    "TraceStore",
    "destination_for",
    "read_trace",
]
