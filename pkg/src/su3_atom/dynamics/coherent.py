"""
Coherent-state averaging of number-state populations and envelope diagnostics
for collapse and revival.
"""

import logging
import math
from typing import Iterator, Optional, Tuple

import numpy as np
from scipy.signal import detrend
from scipy.stats import poisson

from ..builder.hamiltonians import manifold_for_occupation
from ..builder.models import (
    AveragedTrace,
    CavityParams,
    CoherentSpec,
    Configuration,
    EnvelopeMetrics,
    InitialLevel,
    Trace,
    Weighting,
)
from ..builder.utils import neumaier_sum
from ..errors import DiagnosticError, DomainError
from .analytic import closed_form_probabilities, leg_weights

logger = logging.getLogger(__name__)

TAIL_TOLERANCE = 1e-12
MIN_CUTOFF = 20
SAMPLES_PER_PERIOD = 40
DEFAULT_SAMPLES = 2000


def default_cutoff(nbar: float, tail: float = TAIL_TOLERANCE) -> int:
    """
    Smallest cutoff of the form max(20, ceil(nbar + 10 sqrt(nbar))), extended
    until the Poisson mass beyond it drops below ``tail``.

    Raises:
        DomainError: If nbar < 0
    """
    if nbar < 0:
        raise DomainError(f"mean photon number must be >= 0, got {nbar}")
    cutoff = max(MIN_CUTOFF, math.ceil(nbar + 10.0 * math.sqrt(nbar)))
    if nbar == 0:
        return cutoff
    while poisson.sf(cutoff, nbar) >= tail:
        cutoff += 1
    return cutoff


def poisson_weights(nbar: float, cutoff: int) -> np.ndarray:
    """
    Poisson weights W_k = exp(-nbar) nbar^k / k! for k = 0..cutoff.

    Computed in log space so large k does not overflow.

    Args:
        nbar: Mean photon number
        cutoff: Largest photon number kept

    Returns:
        Array of cutoff + 1 non-negative weights

    Raises:
        DomainError: If nbar < 0 or cutoff < 0
    """
    if nbar < 0:
        raise DomainError(f"mean photon number must be >= 0, got {nbar}")
    if cutoff < 0:
        raise DomainError(f"cutoff must be >= 0, got {cutoff}")
    if nbar == 0:
        weights = np.zeros(cutoff + 1)
        weights[0] = 1.0
        return weights
    return np.exp(poisson.logpmf(np.arange(cutoff + 1), nbar))


def coherent_spec(nbar: float, mbar: float) -> CoherentSpec:
    """CoherentSpec with both cutoffs chosen by ``default_cutoff``."""
    spec = CoherentSpec(nbar=nbar, mbar=mbar,
                        cutoff_n=default_cutoff(nbar), cutoff_m=default_cutoff(mbar))
    logger.debug("Coherent cutoffs: n <= %d, m <= %d", spec.cutoff_n, spec.cutoff_m)
    return spec


def _manifold_terms(config: Configuration, cavity: CavityParams, spec: CoherentSpec,
                    initial: InitialLevel,
                    weighting: Weighting) -> Iterator[Tuple[float, float, float]]:
    """Yield (weight, x, y) in ascending (n, m) order of the weighted labels."""
    weights_n = poisson_weights(spec.nbar, spec.cutoff_n)
    weights_m = poisson_weights(spec.mbar, spec.cutoff_m)
    for n in range(spec.cutoff_n + 1):
        for m in range(spec.cutoff_m + 1):
            weight = weights_n[n] * weights_m[m]
            if weighting is Weighting.OCCUPATION:
                label = manifold_for_occupation(config, initial, (n, m))
            else:
                label = (n, m)
            x, y = leg_weights(config, cavity, *label)
            yield weight, x, y


def mean_rabi_frequency(config: Configuration, cavity: CavityParams, spec: CoherentSpec,
                        initial: InitialLevel = InitialLevel.LEVEL_1,
                        weighting: Weighting = Weighting.LITERAL) -> float:
    """Poisson-weighted mean of the manifold frequency."""
    total = 0.0
    mass = 0.0
    for weight, x, y in _manifold_terms(config, cavity, spec, initial, weighting):
        total += weight * math.sqrt(x + y)
        mass += weight
    return total / mass if mass > 0 else 0.0


def revival_time_estimate(config: Configuration, cavity: CavityParams, spec: CoherentSpec,
                          initial: InitialLevel = InitialLevel.LEVEL_1,
                          weighting: Weighting = Weighting.LITERAL) -> float:
    """
    Estimated time of the main revival, 2 pi <Omega> / min(g1^2, g2^2).

    Zero couplings are left out of the minimum.

    Raises:
        DomainError: If both couplings vanish
    """
    squares = [g * g for g in (cavity.g1, cavity.g2) if g > 0]
    if not squares:
        raise DomainError("at least one coupling must be > 0 to estimate a revival")
    return 2.0 * math.pi * mean_rabi_frequency(config, cavity, spec, initial, weighting) / min(squares)


def max_manifold_frequency(config: Configuration, cavity: CavityParams, spec: CoherentSpec) -> float:
    """Largest manifold frequency in the truncated sum."""
    x, y = leg_weights(config, cavity, spec.cutoff_n + 1, spec.cutoff_m + 1)
    return math.sqrt(x + y)


def recommended_samples(t_max: float, omega_max: float, minimum: int = DEFAULT_SAMPLES) -> int:
    """At least ``SAMPLES_PER_PERIOD`` samples per shortest Rabi period."""
    if omega_max <= 0:
        return minimum
    return max(minimum, math.ceil(SAMPLES_PER_PERIOD * t_max * omega_max / (2.0 * math.pi)) + 1)


def averaged_probabilities(config: Configuration, cavity: CavityParams, spec: CoherentSpec,
                           initial: InitialLevel, times: np.ndarray,
                           weighting: Weighting = Weighting.LITERAL) -> AveragedTrace:
    """
    Poisson-average the number-state populations over both modes.

    The double sum runs over ascending n, then ascending m, with compensated
    accumulation, so repeated runs are bit-identical.

    Args:
        config: LAMBDA or VEE
        cavity: Couplings g1, g2
        spec: Mean photon numbers and cutoffs
        initial: Level occupied at t = 0
        times: Non-empty increasing time grid
        weighting: LITERAL puts W_n W_m on the manifold labels; OCCUPATION puts
            them on the photon numbers of the occupied bare state

    Returns:
        AveragedTrace with populations, mean Rabi frequency and truncated mass
    """
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0:
        raise DomainError("time grid must be a non-empty 1-D array")
    if times.size > 1 and np.any(np.diff(times) <= 0):
        raise DomainError("time grid must be strictly increasing")

    terms = list(_manifold_terms(config, cavity, spec, initial, weighting))
    averaged = neumaier_sum(
        (weight * closed_form_probabilities(config, initial, x, y, times)
         for weight, x, y in terms if weight > 0.0),
        (times.size, 3),
    )
    mass = float(poisson_weights(spec.nbar, spec.cutoff_n).sum()
                 * poisson_weights(spec.mbar, spec.cutoff_m).sum())
    omega_mean = mean_rabi_frequency(config, cavity, spec, initial, weighting)
    logger.debug("Averaged %d manifolds for %s level %d", len(terms), config.value, initial.value)

    return AveragedTrace(
        times=times,
        probabilities=averaged,
        metadata={
            "model": config.value,
            "field": "coherent",
            "initial_level": initial.value,
            "g1": cavity.g1,
            "g2": cavity.g2,
            "nbar": spec.nbar,
            "mbar": spec.mbar,
            "cutoff_n": spec.cutoff_n,
            "cutoff_m": spec.cutoff_m,
            "weighting": weighting.value,
        },
        spec=spec,
        mean_rabi_frequency=omega_mean,
        truncated_mass=mass,
    )


def envelope_metrics(trace: Trace, level: Optional[int] = None,
                     rabi_frequency: Optional[float] = None) -> EnvelopeMetrics:
    """
    Measure oscillation amplitudes over half-overlapping windows.

    Each window is 4 pi / <Omega> wide; its amplitude is max - min of the
    linearly detrended series. The first window gives the initial amplitude,
    the quietest later window in the first half of the trace is the collapse,
    and the loudest window after it is the revival.

    Args:
        trace: Trace to analyse; an AveragedTrace supplies its own <Omega>
        level: Level series to use, default the trace's initial level
        rabi_frequency: Override for <Omega>

    Returns:
        EnvelopeMetrics

    Raises:
        DiagnosticError: If <Omega> is unknown or fewer than three windows fit
    """
    omega = rabi_frequency
    if omega is None:
        omega = getattr(trace, "mean_rabi_frequency", 0.0)
    if not omega or omega <= 0:
        raise DiagnosticError("a positive Rabi frequency is needed to size the windows")
    if level is None:
        level = int(trace.metadata.get("initial_level", 1))
    series = trace.level(level)
    times = trace.times

    width = 4.0 * math.pi / omega
    start = float(times[0]) if times.size else 0.0
    end = float(times[-1]) if times.size else 0.0
    centers, amplitudes = [], []
    left = start
    while left + width <= end + 1e-12 * max(1.0, abs(end)):
        mask = (times >= left) & (times <= left + width)
        if np.count_nonzero(mask) < 3:
            raise DiagnosticError("time grid too coarse for the envelope window")
        window = detrend(series[mask], type='linear')
        centers.append(left + width / 2)
        amplitudes.append(float(np.max(window) - np.min(window)))
        left += width / 2
    if len(amplitudes) < 3:
        raise DiagnosticError(
            f"trace spans {end - start:.6g} but at least {2 * width:.6g} is needed for three windows"
        )

    midpoint = start + (end - start) / 2
    candidates = [k for k in range(1, len(centers)) if centers[k] <= midpoint] or [1]
    collapse = min(candidates, key=lambda k: (amplitudes[k], k))
    later = range(collapse + 1, len(amplitudes))
    revival = max(later, key=lambda k: (amplitudes[k], -k))

    return EnvelopeMetrics(
        window_width=width,
        initial_amplitude=amplitudes[0],
        collapse_amplitude=amplitudes[collapse],
        collapse_time=centers[collapse],
        revival_amplitude=amplitudes[revival],
        revival_time=centers[revival],
        window_centers=tuple(centers),
        window_amplitudes=tuple(amplitudes),
    )
