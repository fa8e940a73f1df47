"""
Run configuration for trace pipelines.
"""

import json
import logging
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any, Dict, Optional, Union

from ..builder.model_builder import ModelBuilder, ModelSpec
from ..builder.models import FieldKind, OutputFormat
from ..errors import Su3AtomError, UsageError

logger = logging.getLogger(__name__)

DEFAULT_SAMPLES = 2000
DEFAULT_T_MAX = 100.0

# Parameter sets of the published figures
_CLASSICAL_FIGURES = {3: "lambda", 4: "vee"}
_NUMBER_FIGURES = {5: "lambda", 6: "vee"}
_COHERENT_LEVELS = {7: 1, 8: 2, 9: 3}


@dataclass
class RunConfig:
    """One simulation run: model, field, couplings, horizon and output."""

    model: str = "lambda"
    field: str = "classical"
    kappa1: Optional[float] = None
    kappa2: Optional[float] = None
    g1: Optional[float] = None
    g2: Optional[float] = None
    n: Optional[int] = None
    m: Optional[int] = None
    nbar: Optional[float] = None
    mbar: Optional[float] = None
    initial_level: int = 1
    t_max: Optional[float] = None
    samples: Optional[int] = None
    output_path: Optional[str] = None
    format: str = "csv"

    method: str = "auto"
    omega1: float = 1.0
    omega2: float = 0.5
    delta1: float = 0.0
    delta2: float = 0.0
    weighting: str = "literal"

    @classmethod
    def from_dict(cls, values: Dict[str, Any]) -> 'RunConfig':
        """
        Create a configuration from a plain mapping.

        Args:
            values: Field names to values; 'tmax', 'out' and 'initial' are
                accepted as aliases

        Returns:
            RunConfig instance

        Raises:
            UsageError: On unknown keys
        """
        aliases = {"tmax": "t_max", "out": "output_path", "initial": "initial_level"}
        known = {f.name for f in fields(cls)}
        cleaned: Dict[str, Any] = {}
        for key, value in values.items():
            name = aliases.get(key, key)
            if name not in known:
                raise UsageError(f"unknown configuration key {key!r}")
            cleaned[name] = value
        return cls(**cleaned)

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> 'RunConfig':
        """
        Load a configuration from a JSON file.

        Raises:
            UsageError: If the file is missing or not a JSON object
        """
        try:
            with open(path, "r", encoding="utf-8") as handle:
                values = json.load(handle)
        except FileNotFoundError as e:
            raise UsageError(f"config file not found: {path}") from e
        except json.JSONDecodeError as e:
            raise UsageError(f"config file {path} is not valid JSON: {e}") from e
        if not isinstance(values, dict):
            raise UsageError(f"config file {path} must contain a JSON object")
        logger.debug("Loaded run configuration from %s", path)
        return cls.from_dict(values)

    @classmethod
    def for_figure(cls, number: int, initial_level: Optional[int] = None,
                   model: Optional[str] = None) -> 'RunConfig':
        """
        Preset parameters of one of the published figures.

        Figures 3 and 4 use a classical drive with kappa = (0.2, 0.1); 5 and 6
        a number state with g = (0.2, 0.1), n = m = 1; 7 to 9 a coherent state
        with nbar = 30, mbar = 20 and the lambda atom starting in level 1, 2 or 3.

        Args:
            number: Figure number, 3 to 9
            initial_level: Panel selector; defaults to level 1 (3 to 6) or the
                figure's level (7 to 9, mirrored for the vee atom)
            model: 'lambda' or 'vee'; only used for figures 7 to 9

        Returns:
            RunConfig for the figure

        Raises:
            UsageError: For an unknown figure number
        """
        if number in _CLASSICAL_FIGURES:
            return cls(model=_CLASSICAL_FIGURES[number], field="classical",
                       kappa1=0.2, kappa2=0.1, initial_level=initial_level or 1)
        if number in _NUMBER_FIGURES:
            return cls(model=_NUMBER_FIGURES[number], field="number",
                       g1=0.2, g2=0.1, n=1, m=1, initial_level=initial_level or 1)
        if number in _COHERENT_LEVELS:
            model = model or "lambda"
            level = _COHERENT_LEVELS[number]
            if model == "vee":
                level = 4 - level
            return cls(model=model, field="coherent", g1=0.2, g2=0.1,
                       nbar=30.0, mbar=20.0, initial_level=initial_level or level)
        raise UsageError(f"no preset for figure {number}; expected 3 to 9")

    def merged(self, overrides: Dict[str, Any]) -> 'RunConfig':
        """Copy with every non-None override applied (flags over file values)."""
        values = {k: v for k, v in overrides.items() if v is not None}
        return RunConfig.from_dict({**asdict(self), **values})

    def validate(self) -> 'RunConfig':
        """
        Check the configuration without running it.

        Returns:
            self, for chaining

        Raises:
            UsageError: If a value is missing or out of range
        """
        self.to_model_spec()
        return self

    @property
    def output_format(self) -> OutputFormat:
        try:
            return OutputFormat(str(self.format).lower())
        except ValueError as e:
            raise UsageError(f"unknown format {self.format!r}; expected csv or json") from e

    def to_model_spec(self) -> ModelSpec:
        """
        Translate the configuration into a validated ModelSpec.

        Raises:
            UsageError: If required parameters are missing or invalid
        """
        _ = self.output_format
        try:
            kind = FieldKind(str(self.field).lower())
        except ValueError as e:
            raise UsageError(f"unknown field {self.field!r}; expected classical, number or coherent") from e

        try:
            builder = (ModelBuilder()
                       .configuration(self.model)
                       .atom(self.omega1, self.omega2)
                       .initial(self.initial_level)
                       .horizon(self.t_max, self.samples)
                       .method(self.method)
                       .weighting(self.weighting)
                       .detuning(self.delta1, self.delta2))
            if kind is FieldKind.CLASSICAL:
                self._require("classical", kappa1=self.kappa1, kappa2=self.kappa2)
                builder.classical(self.kappa1, self.kappa2)
            elif kind is FieldKind.NUMBER:
                self._require("number", g1=self.g1, g2=self.g2, n=self.n, m=self.m)
                self._require_integral(n=self.n, m=self.m)
                builder.number_state(self.g1, self.g2, self.n, self.m)
            else:
                self._require("coherent", g1=self.g1, g2=self.g2, nbar=self.nbar, mbar=self.mbar)
                builder.coherent_state(self.g1, self.g2, self.nbar, self.mbar)
            return builder.build()
        except UsageError:
            raise
        except Su3AtomError as e:
            raise UsageError(str(e)) from e

    @staticmethod
    def _require(kind: str, **values: Any) -> None:
        missing = [name for name, value in values.items() if value is None]
        if missing:
            raise UsageError(f"{kind} field needs {', '.join(missing)}")

    @staticmethod
    def _require_integral(**values: Any) -> None:
        for name, value in values.items():
            if isinstance(value, float) and not value.is_integer():
                raise UsageError(f"{name} must be an integer, got {value}")

    def describe(self) -> str:
        """Short label used in logs."""
        return f"{self.model}/{self.field} level {self.initial_level}"
