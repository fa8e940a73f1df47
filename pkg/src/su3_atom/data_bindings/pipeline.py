"""
Trace pipeline: run a configuration to a file, or sweep one parameter.
"""

import json
import logging
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from ..builder.models import Trace
from ..builder.utils import format_float
from ..errors import TraceIOError, UsageError
from .config import RunConfig
from .destinations import DuckDBDestination, destination_for, write_atomically
from .sources import create_source

logger = logging.getLogger(__name__)

INDEX_FILE = "index.json"
_INTEGER_FIELDS = {"n", "m", "initial_level", "samples"}
_TEXT_FIELDS = {"model", "field", "method", "format", "weighting"}
_NOT_SWEPT = {"output_path"}


@dataclass
class SimulationResult:
    """A computed trace and where it was written, if anywhere."""

    config: RunConfig
    trace: Trace
    path: Optional[Path] = None


@dataclass
class SweepResult:
    """All runs of a sweep plus the manifest listing them."""

    parameter: str
    index_path: Path
    runs: List[SimulationResult]


def coerce_value(parameter: str, value: Any) -> Any:
    """
    Convert a sweep value to the type of the RunConfig field.

    Raises:
        UsageError: For unknown parameters or unparseable values
    """
    names = {f.name for f in fields(RunConfig)} - _NOT_SWEPT
    if parameter not in names:
        raise UsageError(f"cannot sweep {parameter!r}; expected one of {', '.join(sorted(names))}")
    if parameter in _TEXT_FIELDS:
        return str(value)
    try:
        number = float(value)
    except (TypeError, ValueError) as e:
        raise UsageError(f"{parameter} value {value!r} is not a number") from e
    if parameter in _INTEGER_FIELDS:
        if not number.is_integer():
            raise UsageError(f"{parameter} value {value!r} is not an integer")
        return int(number)
    return number


def run_name(config: RunConfig, parameter: str, value: Any) -> str:
    """Deterministic file stem for one sweep run."""
    token = format_float(value) if isinstance(value, float) else str(value)
    token = re.sub(r"[^A-Za-z0-9.+-]", "_", token)
    return f"{config.model}_{config.field}_{parameter}-{token}"


class TracePipeline:
    """
    Runs RunConfigs through a trace source into a destination.

    Example usage:
        pipeline = TracePipeline(RunConfig.for_figure(3))
        pipeline.simulate()
        pipeline.sweep("initial_level", [1, 2, 3], "fig3")
    """

    def __init__(self, config: RunConfig):
        """
        Initialize the pipeline.

        Args:
            config: Template configuration; validated here
        """
        self.config = config.validate()

    def compute(self, config: Optional[RunConfig] = None) -> Trace:
        """Compute the trace for ``config`` (default: the template)."""
        config = config or self.config
        return create_source(config.to_model_spec()).trace()

    def simulate(self, config: Optional[RunConfig] = None, force: bool = True) -> SimulationResult:
        """
        Compute one trace and write it to the configuration's output path.

        Args:
            config: Configuration to run; defaults to the template
            force: Overwrite an existing file

        Returns:
            SimulationResult

        Raises:
            UsageError: If the file exists and force is False
            TraceIOError: If the file cannot be written
        """
        config = config or self.config
        trace = self.compute(config)
        path = None
        if config.output_path:
            path = Path(config.output_path)
            if path.exists() and not force:
                raise UsageError(f"{path} exists; pass --force to overwrite")
            destination_for(config.output_format).write(trace, path)
        return SimulationResult(config=config, trace=trace, path=path)

    def sweep(self, parameter: str, values: Sequence[Any], out_dir: Union[str, Path],
              force: bool = False, workers: Optional[int] = None,
              duckdb_path: Optional[str] = None) -> SweepResult:
        """
        Run the template once per value of a single parameter.

        Each run is written to ``out_dir`` under a name derived from the
        value, and an index.json manifest lists all of them. Runs execute
        concurrently; file contents do not depend on the worker count.

        Args:
            parameter: RunConfig field to vary
            values: Values to use, in order
            out_dir: Output directory, created if missing
            force: Overwrite existing files
            workers: Thread count; None lets the executor decide
            duckdb_path: Also load every trace into this DuckDB file

        Returns:
            SweepResult

        Raises:
            UsageError: For an empty range, duplicate names or existing files
        """
        if not values:
            raise UsageError("sweep range is empty")
        coerced = [coerce_value(parameter, v) for v in values]
        directory = Path(out_dir)

        configs: List[RunConfig] = []
        names: List[str] = []
        for value in coerced:
            config = self.config.merged({parameter: value})
            name = run_name(config, parameter, value) + destination_for(config.output_format).suffix
            if name in names:
                raise UsageError(f"sweep values produce the same file name {name!r}")
            names.append(name)
            configs.append(config.merged({"output_path": str(directory / name)}).validate())

        clashes = [n for n in names + [INDEX_FILE] if (directory / n).exists()]
        if clashes and not force:
            raise UsageError(f"{directory} already holds {', '.join(clashes)}; pass --force to overwrite")
        try:
            directory.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise TraceIOError(f"cannot create {directory}: {e.strerror or e}") from e

        logger.info("Sweeping %s over %d values into %s", parameter, len(configs), directory)
        with ThreadPoolExecutor(max_workers=workers) as executor:
            futures = [executor.submit(self.simulate, config, True) for config in configs]
            runs = [future.result() for future in futures]

        index = {
            "parameter": parameter,
            "runs": [
                {"file": name, "value": value, "config": _index_config(run.config)}
                for name, value, run in zip(names, coerced, runs)
            ],
        }
        index_path = write_atomically(directory / INDEX_FILE, json.dumps(index, indent=2, sort_keys=True) + "\n")

        if duckdb_path:
            DuckDBDestination(duckdb_path).load({Path(n).stem: run.trace for n, run in zip(names, runs)})
        return SweepResult(parameter=parameter, index_path=index_path, runs=runs)


def _index_config(config: RunConfig) -> Dict[str, Any]:
    values = asdict(config)
    values.pop("output_path", None)
    return values
