"""
Trace sources for each field kind.

A source turns a validated ModelSpec into a Trace, choosing closed forms or
numerical oracles from the spec's resolved method and filling in the
default horizon and sample count.
"""

import logging
from typing import Any, Dict, Iterator, List, Optional, Type

import numpy as np

from ..builder.hamiltonians import drive_frequencies_for
from ..builder.model_builder import ModelSpec
from ..builder.models import AveragedTrace, CoherentSpec, FieldKind, Method, Trace
from ..builder.utils import time_grid
from ..dynamics.analytic import quantized_probabilities, semiclassical_probabilities
from ..dynamics.coherent import (
    averaged_probabilities,
    coherent_spec,
    max_manifold_frequency,
    recommended_samples,
    revival_time_estimate,
)
from ..dynamics.verification import block_probabilities, default_oracle_config, rk4_semiclassical
from ..errors import UsageError

logger = logging.getLogger(__name__)

DEFAULT_T_MAX = 100.0
DEFAULT_SAMPLES = 2000


class BaseTraceSource:
    """
    Base class for trace sources.

    Subclasses implement ``_compute``; this class resolves the time grid and
    attaches the run metadata.
    """

    field_kind: FieldKind

    def __init__(self, spec: ModelSpec):
        """
        Initialize the source.

        Args:
            spec: Validated model

        Raises:
            UsageError: If the spec's field does not match this source
        """
        if spec.field_kind is not self.field_kind:
            raise UsageError(f"{type(self).__name__} cannot run a {spec.field_kind.value} field")
        self.spec = spec

    def default_t_max(self) -> float:
        return DEFAULT_T_MAX

    def default_samples(self, t_max: float) -> int:
        return DEFAULT_SAMPLES

    def times(self) -> np.ndarray:
        """Uniform grid from the spec, with defaults where it leaves gaps."""
        t_max = self.spec.t_max if self.spec.t_max is not None else self.default_t_max()
        samples = self.spec.samples if self.spec.samples is not None else self.default_samples(t_max)
        return time_grid(t_max, samples)

    def trace(self) -> Trace:
        """
        Compute the trace for the spec.

        Returns:
            Trace with the spec metadata merged in
        """
        times = self.times()
        logger.debug("Computing %s trace: %d samples up to t=%.6g",
                     self.spec.configuration.value, times.size, times[-1])
        trace = self._compute(times)
        trace.metadata = {**self.spec.metadata(), **trace.metadata,
                          "t_max": float(times[-1]), "samples": int(times.size)}
        return trace

    def _compute(self, times: np.ndarray) -> Trace:
        raise NotImplementedError


class ClassicalSource(BaseTraceSource):
    """Classical bichromatic drive: closed forms on resonance, RK4 otherwise."""

    field_kind = FieldKind.CLASSICAL

    def _compute(self, times: np.ndarray) -> Trace:
        spec = self.spec
        drive = spec.drive
        if spec.resolved_method is Method.ANALYTIC:
            probabilities = semiclassical_probabilities(
                spec.configuration, drive.kappa1, drive.kappa2, spec.initial, times)
            return Trace(times, probabilities)
        detuned = drive.with_frequencies(
            *drive_frequencies_for(spec.configuration, spec.atom, *spec.detuning))
        oracle = default_oracle_config(spec.configuration, spec.atom, detuned, t_max=float(times[-1]))
        amplitudes = rk4_semiclassical(spec.configuration, spec.atom, detuned, spec.initial,
                                       oracle=oracle, times=times)
        trace = amplitudes.to_trace()
        trace.metadata = {"norm_drift": amplitudes.norm_drift}
        return trace


class NumberStateSource(BaseTraceSource):
    """Two-mode number state: dressed-basis propagator or block exponentiation."""

    field_kind = FieldKind.NUMBER

    def _compute(self, times: np.ndarray) -> Trace:
        spec = self.spec
        n, m = spec.photons
        if spec.resolved_method is Method.ANALYTIC:
            probabilities = quantized_probabilities(
                spec.configuration, spec.cavity, n, m, spec.initial, times)
        else:
            probabilities = block_probabilities(spec.configuration, spec.cavity, n, m, spec.initial, times)
        return Trace(times, probabilities)


class CoherentSource(BaseTraceSource):
    """Two-mode coherent state: Poisson-averaged closed forms."""

    field_kind = FieldKind.COHERENT

    def __init__(self, spec: ModelSpec):
        super().__init__(spec)
        self.coherent: CoherentSpec = coherent_spec(*spec.mean_photons)

    def default_t_max(self) -> float:
        """Two revival times."""
        spec = self.spec
        return 2.0 * revival_time_estimate(spec.configuration, spec.cavity, self.coherent,
                                           spec.initial, spec.weighting)

    def default_samples(self, t_max: float) -> int:
        omega_max = max_manifold_frequency(self.spec.configuration, self.spec.cavity, self.coherent)
        return recommended_samples(t_max, omega_max)

    def _compute(self, times: np.ndarray) -> AveragedTrace:
        spec = self.spec
        trace = averaged_probabilities(spec.configuration, spec.cavity, self.coherent,
                                       spec.initial, times, spec.weighting)
        trace.metadata = {
            "cutoff_n": self.coherent.cutoff_n,
            "cutoff_m": self.coherent.cutoff_m,
            "mean_rabi_frequency": trace.mean_rabi_frequency,
            "truncated_mass": trace.truncated_mass,
        }
        return trace


_SOURCES: Dict[FieldKind, Type[BaseTraceSource]] = {
    FieldKind.CLASSICAL: ClassicalSource,
    FieldKind.NUMBER: NumberStateSource,
    FieldKind.COHERENT: CoherentSource,
}


def create_source(spec: ModelSpec) -> BaseTraceSource:
    """Pick the source class for the spec's field kind."""
    return _SOURCES[spec.field_kind](spec)


def batched_rows(trace: Trace, run_id: str, batch_size: int = 1000,
                 extra: Optional[Dict[str, Any]] = None) -> Iterator[List[Dict[str, Any]]]:
    """
    Yield trace rows in batches, each row tagged with the run id.

    Args:
        trace: Trace to flatten
        run_id: Identifier stored with every row
        batch_size: Rows per batch
        extra: Constant columns added to every row
    """
    extra = extra or {}
    batch: List[Dict[str, Any]] = []
    for row in trace.rows():
        batch.append({"run_id": run_id, **extra, **row})
        if len(batch) >= batch_size:
            yield batch
            batch = []
    if batch:
        yield batch
