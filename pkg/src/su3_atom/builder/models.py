"""
Data models and constants for three-level atom dynamics.

All matrices use the basis order (|3>, |2>, |1>): component 0 is level 3,
component 2 is level 1. Frequencies are angular, with hbar = 1.
"""

import math
from enum import Enum
from dataclasses import dataclass, field, replace
from typing import Any, Dict, Iterator, List, Optional, Tuple

import numpy as np

from ..errors import DomainError

# 3x3 complex numpy array in the (|3>, |2>, |1>) basis.
ComplexMatrix3 = np.ndarray


class Configuration(Enum):
    """Three-level topologies and the generator pair that couples them."""

    LAMBDA = "lambda"
    VEE = "vee"
    CASCADE = "cascade"

    @property
    def generators(self) -> Tuple[str, str]:
        """Shift-operator families driven by mode 1 and mode 2."""
        return _GENERATORS[self]

    @property
    def has_closed_form(self) -> bool:
        return self is not Configuration.CASCADE


_GENERATORS = {
    Configuration.LAMBDA: ("v", "t"),
    Configuration.VEE: ("v", "u"),
    Configuration.CASCADE: ("u", "t"),
}


class InitialLevel(Enum):
    """Atomic level occupied at t = 0."""

    LEVEL_1 = 1
    LEVEL_2 = 2
    LEVEL_3 = 3

    @property
    def index(self) -> int:
        """Component index in the (|3>, |2>, |1>) basis."""
        return 3 - self.value

    def amplitudes(self) -> np.ndarray:
        """Unit amplitude vector with a single 1 on this level."""
        vector = np.zeros(3, dtype=complex)
        vector[self.index] = 1.0
        return vector

    def mirrored(self) -> 'InitialLevel':
        """Level under the 1 <-> 3 inversion map."""
        return InitialLevel(4 - self.value)

    @classmethod
    def parse(cls, value: Any) -> 'InitialLevel':
        if isinstance(value, cls):
            return value
        try:
            return cls(int(value))
        except (TypeError, ValueError) as e:
            raise DomainError(f"initial level must be 1, 2 or 3, got {value!r}") from e


class FieldKind(Enum):
    """Field states the atom can be coupled to."""

    CLASSICAL = "classical"
    NUMBER = "number"
    COHERENT = "coherent"


class OutputFormat(Enum):
    """Supported trace file formats."""

    CSV = "csv"
    JSON = "json"


class Method(Enum):
    """How a trace is computed."""

    AUTO = "auto"
    ANALYTIC = "analytic"
    ORACLE = "oracle"


class SymmetryKind(Enum):
    """Field regimes in which the lambda/vee inversion symmetry is tested."""

    SEMICLASSICAL = "semiclassical"
    QUANTIZED = "quantized"
    COHERENT = "coherent"


class Weighting(Enum):
    """How Poisson weights are attached to the quantized manifolds."""

    LITERAL = "literal"        # W_n W_m on the manifold labels
    OCCUPATION = "occupation"  # W on the photon numbers of the occupied bare state


@dataclass(frozen=True)
class ShiftOperators:
    """T, U and V ladder operators plus their diagonal partners."""

    t_plus: ComplexMatrix3
    t_minus: ComplexMatrix3
    u_plus: ComplexMatrix3
    u_minus: ComplexMatrix3
    v_plus: ComplexMatrix3
    v_minus: ComplexMatrix3
    t3: ComplexMatrix3
    u3: ComplexMatrix3
    v3: ComplexMatrix3

    def raising(self, family: str) -> ComplexMatrix3:
        return getattr(self, f"{family}_plus")

    def lowering(self, family: str) -> ComplexMatrix3:
        return getattr(self, f"{family}_minus")

    def diagonal(self, family: str) -> ComplexMatrix3:
        return getattr(self, f"{family}3")

    def as_dict(self) -> Dict[str, ComplexMatrix3]:
        return {
            "T+": self.t_plus, "T-": self.t_minus, "T3": self.t3,
            "U+": self.u_plus, "U-": self.u_minus, "U3": self.u3,
            "V+": self.v_plus, "V-": self.v_minus, "V3": self.v3,
        }


@dataclass(frozen=True)
class StructureConstants:
    """SU(3) structure constants, stored 0-based internally.

    Use ``f_at`` and ``d_at`` for the 1-based indices of the Gell-Mann basis.
    """

    f: np.ndarray
    d: np.ndarray

    def f_at(self, i: int, j: int, k: int) -> float:
        return float(self.f[i - 1, j - 1, k - 1])

    def d_at(self, i: int, j: int, k: int) -> float:
        return float(self.d[i - 1, j - 1, k - 1])


@dataclass(frozen=True)
class RelationCheck:
    """One named algebraic identity and how far it is from holding."""

    name: str
    deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.deviation <= self.tolerance


@dataclass(frozen=True)
class AtomParams:
    """Atomic frequencies.

    For the lambda atom the level energies are E1 = -omega1, E2 = -omega2 and
    E3 = omega1 + omega2; the vee and cascade atoms use the same pair through
    their own diagonal generators.
    """

    omega1: float = 1.0
    omega2: float = 0.5


def _require_non_negative(**values: float) -> None:
    for name, value in values.items():
        if value < 0 or math.isnan(value):
            raise DomainError(f"{name} must be >= 0, got {value}")


@dataclass(frozen=True)
class DriveParams:
    """Bichromatic classical drive."""

    kappa1: float
    kappa2: float
    big_omega1: float = 0.0
    big_omega2: float = 0.0

    def __post_init__(self):
        _require_non_negative(kappa1=self.kappa1, kappa2=self.kappa2)

    @property
    def frequencies(self) -> Tuple[float, float]:
        return (self.big_omega1, self.big_omega2)

    def with_frequencies(self, big_omega1: float, big_omega2: float) -> 'DriveParams':
        return replace(self, big_omega1=big_omega1, big_omega2=big_omega2)


@dataclass(frozen=True)
class CavityParams:
    """Two quantized cavity modes and their couplings to the atom."""

    g1: float
    g2: float
    big_omega1: float = 0.0
    big_omega2: float = 0.0

    def __post_init__(self):
        _require_non_negative(g1=self.g1, g2=self.g2)

    @property
    def frequencies(self) -> Tuple[float, float]:
        return (self.big_omega1, self.big_omega2)

    def with_frequencies(self, big_omega1: float, big_omega2: float) -> 'CavityParams':
        return replace(self, big_omega1=big_omega1, big_omega2=big_omega2)


@dataclass(frozen=True)
class DetuningSet:
    """Detunings of the two drive (or cavity) modes from their transitions."""

    delta1: float
    delta2: float
    configuration: Configuration

    @property
    def on_resonance_manifold(self) -> bool:
        """True where the free and interaction Hamiltonians commute."""
        if self.configuration is Configuration.CASCADE:
            return math.isclose(self.delta1, self.delta2, abs_tol=1e-12)
        return math.isclose(self.delta1, -self.delta2, abs_tol=1e-12)


@dataclass(frozen=True)
class ProbabilityTriple:
    """Level populations at a single instant."""

    p1: float
    p2: float
    p3: float

    @property
    def total(self) -> float:
        return self.p1 + self.p2 + self.p3

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.p1, self.p2, self.p3)

    def swapped(self) -> 'ProbabilityTriple':
        """Populations under the 1 <-> 3 inversion map."""
        return ProbabilityTriple(self.p3, self.p2, self.p1)


@dataclass(frozen=True)
class RabiSpec:
    """Oscillation frequencies of the semiclassical and quantized problems."""

    delta: float = 0.0
    omega_nm: float = 0.0

    def __post_init__(self):
        _require_non_negative(delta=self.delta, omega_nm=self.omega_nm)


@dataclass(frozen=True)
class DressedBasis:
    """Diagonalization of one quantized interaction block.

    ``rotation`` rows are the dressed states written in the bare basis and
    ``eigenvalues`` are listed in row order, i.e. (+Omega, 0, -Omega).
    ``spectrum`` gives the same values in ascending order.
    ``euler_angles`` holds the closed-form angles and is only used for
    validation.
    """

    eigenvalues: Tuple[float, float, float]
    rotation: np.ndarray
    euler_angles: Tuple[float, float, float]
    omega: float

    @property
    def spectrum(self) -> Tuple[float, float, float]:
        """Eigenvalues sorted ascending: (-Omega, 0, +Omega)."""
        low, mid, high = sorted(self.eigenvalues)
        return (low, mid, high)


@dataclass(frozen=True)
class CoherentSpec:
    """Two-mode coherent field truncated to a finite photon range."""

    nbar: float
    mbar: float
    cutoff_n: int
    cutoff_m: int

    def __post_init__(self):
        _require_non_negative(nbar=self.nbar, mbar=self.mbar)
        if self.cutoff_n < 0 or self.cutoff_m < 0:
            raise DomainError("cutoffs must be >= 0")


@dataclass
class Trace:
    """Uniform time grid with one population triple per sample.

    ``probabilities`` has shape (samples, 3) with columns (p1, p2, p3).
    """

    times: np.ndarray
    probabilities: np.ndarray
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.probabilities = np.asarray(self.probabilities, dtype=float)
        if self.probabilities.shape != (self.times.size, 3):
            raise DomainError(
                f"probabilities must have shape ({self.times.size}, 3), "
                f"got {self.probabilities.shape}"
            )

    @property
    def p1(self) -> np.ndarray:
        return self.probabilities[:, 0]

    @property
    def p2(self) -> np.ndarray:
        return self.probabilities[:, 1]

    @property
    def p3(self) -> np.ndarray:
        return self.probabilities[:, 2]

    @property
    def samples(self) -> int:
        return int(self.times.size)

    def level(self, level: int) -> np.ndarray:
        """Population series of atomic level 1, 2 or 3."""
        if level not in (1, 2, 3):
            raise DomainError(f"level must be 1, 2 or 3, got {level}")
        return self.probabilities[:, level - 1]

    def at(self, index: int) -> ProbabilityTriple:
        return ProbabilityTriple(*(float(v) for v in self.probabilities[index]))

    def swapped(self) -> np.ndarray:
        """Population columns reordered to (p3, p2, p1)."""
        return self.probabilities[:, ::-1]

    def normalization_error(self, expected: float = 1.0) -> float:
        if self.samples == 0:
            return 0.0
        return float(np.max(np.abs(self.probabilities.sum(axis=1) - expected)))

    def summary(self) -> Dict[str, Tuple[float, float]]:
        """Min and max of each population series."""
        return {
            f"p{k}": (float(np.min(self.level(k))), float(np.max(self.level(k))))
            for k in (1, 2, 3)
        }

    def rows(self) -> Iterator[Dict[str, float]]:
        for t, (p1, p2, p3) in zip(self.times, self.probabilities):
            yield {"t": float(t), "p1": float(p1), "p2": float(p2), "p3": float(p3)}


@dataclass
class AveragedTrace(Trace):
    """Coherent-field trace with the averaging inputs attached."""

    spec: Optional[CoherentSpec] = None
    mean_rabi_frequency: float = 0.0
    truncated_mass: float = 1.0


@dataclass(frozen=True)
class EnvelopeMetrics:
    """Oscillation amplitudes of a collapse/revival trace."""

    window_width: float
    initial_amplitude: float
    collapse_amplitude: float
    collapse_time: float
    revival_amplitude: float
    revival_time: float
    window_centers: Tuple[float, ...] = ()
    window_amplitudes: Tuple[float, ...] = ()

    @property
    def collapse_detected(self) -> bool:
        return self.collapse_amplitude < 0.2 * self.initial_amplitude

    @property
    def revival_detected(self) -> bool:
        return self.revival_amplitude > 2.0 * self.collapse_amplitude


@dataclass(frozen=True)
class OracleConfig:
    """Fixed-step integration settings."""

    step: float
    tolerance: float = 1e-6
    t_max: float = 100.0

    def __post_init__(self):
        if not (self.step > 0 and self.tolerance > 0 and self.t_max > 0):
            raise DomainError("step, tolerance and t_max must all be > 0")


@dataclass(frozen=True)
class ComparisonReport:
    """Result of comparing two population series."""

    max_abs_error: float
    argmax_time: float
    series_compared: Tuple[str, str]
    tolerance: float
    passed: bool
    notes: List[str] = field(default_factory=list)

    @classmethod
    def build(cls, max_abs_error: float, argmax_time: float,
              series_compared: Tuple[str, str], tolerance: float,
              notes: Optional[List[str]] = None) -> 'ComparisonReport':
        return cls(
            max_abs_error=float(max_abs_error),
            argmax_time=float(argmax_time),
            series_compared=series_compared,
            tolerance=float(tolerance),
            passed=bool(max_abs_error <= tolerance),
            notes=list(notes or []),
        )

    @property
    def broken(self) -> bool:
        """Distance clearly above tolerance: more than 10x it and more than 0.01."""
        return self.max_abs_error > max(10.0 * self.tolerance, 0.01)


@dataclass
class AmplitudeTrace:
    """Integrated amplitudes in the (|3>, |2>, |1>) basis, one row per sample."""

    times: np.ndarray
    amplitudes: np.ndarray
    norm_drift: float = 0.0
    metadata: Dict[str, Any] = field(default_factory=dict)

    def to_trace(self) -> Trace:
        """Populations as a Trace with columns (p1, p2, p3)."""
        return Trace(self.times, np.abs(self.amplitudes[:, ::-1]) ** 2, dict(self.metadata))
