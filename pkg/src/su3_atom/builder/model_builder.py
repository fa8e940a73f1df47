"""
Fluent builder for fully specified atom-field models.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple, Union

from ..errors import UsageError
from .models import (
    AtomParams,
    CavityParams,
    Configuration,
    DriveParams,
    FieldKind,
    InitialLevel,
    Method,
    Weighting,
)


@dataclass(frozen=True)
class ModelSpec:
    """A validated model: atom, field, initial level and time horizon."""

    configuration: Configuration
    field_kind: FieldKind
    initial: InitialLevel
    atom: AtomParams = field(default_factory=AtomParams)
    drive: Optional[DriveParams] = None
    cavity: Optional[CavityParams] = None
    photons: Optional[Tuple[int, int]] = None
    mean_photons: Optional[Tuple[float, float]] = None
    t_max: Optional[float] = None
    samples: Optional[int] = None
    method: Method = Method.AUTO
    weighting: Weighting = Weighting.LITERAL
    detuning: Tuple[float, float] = (0.0, 0.0)

    @property
    def resolved_method(self) -> Method:
        """AUTO resolves to the closed forms whenever they apply."""
        if self.method is not Method.AUTO:
            return self.method
        if self.configuration.has_closed_form and self.detuning == (0.0, 0.0):
            return Method.ANALYTIC
        return Method.ORACLE

    def metadata(self) -> Dict[str, Any]:
        """Flat, JSON-friendly description used in trace headers."""
        meta: Dict[str, Any] = {
            "model": self.configuration.value,
            "field": self.field_kind.value,
            "initial_level": self.initial.value,
            "method": self.resolved_method.value,
        }
        if self.drive is not None:
            meta.update(kappa1=self.drive.kappa1, kappa2=self.drive.kappa2)
        if self.cavity is not None:
            meta.update(g1=self.cavity.g1, g2=self.cavity.g2)
        if self.photons is not None:
            meta.update(n=self.photons[0], m=self.photons[1])
        if self.mean_photons is not None:
            meta.update(nbar=self.mean_photons[0], mbar=self.mean_photons[1],
                        weighting=self.weighting.value)
        if self.resolved_method is Method.ORACLE:
            meta.update(omega1=self.atom.omega1, omega2=self.atom.omega2,
                        delta1=self.detuning[0], delta2=self.detuning[1])
        return meta


class ModelBuilder:
    """
    Fluent interface for assembling a ModelSpec.

    Example usage:
        spec = (ModelBuilder()
                .configuration('lambda')
                .classical(kappa1=0.2, kappa2=0.1)
                .initial(1)
                .horizon(100.0, samples=2000)
                .build())
    """

    def __init__(self):
        """Initialize an empty builder."""
        self._configuration: Optional[Configuration] = None
        self._field: Optional[FieldKind] = None
        self._initial: InitialLevel = InitialLevel.LEVEL_1
        self._atom: AtomParams = AtomParams()
        self._drive: Optional[DriveParams] = None
        self._cavity: Optional[CavityParams] = None
        self._photons: Optional[Tuple[int, int]] = None
        self._mean_photons: Optional[Tuple[float, float]] = None
        self._t_max: Optional[float] = None
        self._samples: Optional[int] = None
        self._method: Method = Method.AUTO
        self._weighting: Weighting = Weighting.LITERAL
        self._detuning: Tuple[float, float] = (0.0, 0.0)

    def configuration(self, config: Union[str, Configuration]) -> 'ModelBuilder':
        """
        Set the atom configuration.

        Args:
            config: 'lambda', 'vee', 'cascade' or a Configuration

        Returns:
            ModelBuilder instance for method chaining
        """
        self._configuration = _coerce(Configuration, config, "model")
        return self

    def atom(self, omega1: float, omega2: float) -> 'ModelBuilder':
        """Set the atomic frequencies used by the oracle path."""
        self._atom = AtomParams(omega1=float(omega1), omega2=float(omega2))
        return self

    def classical(self, kappa1: float, kappa2: float) -> 'ModelBuilder':
        """
        Couple the atom to a classical bichromatic drive.

        Args:
            kappa1: Coupling of mode 1
            kappa2: Coupling of mode 2

        Returns:
            ModelBuilder instance for method chaining
        """
        self._field = FieldKind.CLASSICAL
        self._drive = DriveParams(kappa1=float(kappa1), kappa2=float(kappa2))
        return self

    def number_state(self, g1: float, g2: float, n: int, m: int) -> 'ModelBuilder':
        """
        Couple the atom to a two-mode number state.

        Args:
            g1: Cavity coupling of mode 1
            g2: Cavity coupling of mode 2
            n: First manifold photon label
            m: Second manifold photon label

        Returns:
            ModelBuilder instance for method chaining
        """
        self._field = FieldKind.NUMBER
        self._cavity = CavityParams(g1=float(g1), g2=float(g2))
        self._photons = (int(n), int(m))
        return self

    def coherent_state(self, g1: float, g2: float, nbar: float, mbar: float) -> 'ModelBuilder':
        """
        Couple the atom to a two-mode coherent state.

        Returns:
            ModelBuilder instance for method chaining
        """
        self._field = FieldKind.COHERENT
        self._cavity = CavityParams(g1=float(g1), g2=float(g2))
        self._mean_photons = (float(nbar), float(mbar))
        return self

    def initial(self, level: Union[int, InitialLevel]) -> 'ModelBuilder':
        self._initial = InitialLevel.parse(level)
        return self

    def horizon(self, t_max: Optional[float], samples: Optional[int] = None) -> 'ModelBuilder':
        """
        Set the time horizon and sample count.

        Either may be None, in which case the pipeline picks a default.

        Returns:
            ModelBuilder instance for method chaining
        """
        self._t_max = None if t_max is None else float(t_max)
        self._samples = None if samples is None else int(samples)
        return self

    def method(self, method: Union[str, Method]) -> 'ModelBuilder':
        self._method = _coerce(Method, method, "method")
        return self

    def weighting(self, weighting: Union[str, Weighting]) -> 'ModelBuilder':
        self._weighting = _coerce(Weighting, weighting, "weighting")
        return self

    def detuning(self, delta1: float, delta2: float) -> 'ModelBuilder':
        """Detune the classical drive (oracle path only)."""
        self._detuning = (float(delta1), float(delta2))
        return self

    def build(self) -> ModelSpec:
        """
        Validate and freeze the model.

        Returns:
            ModelSpec

        Raises:
            UsageError: If a required part is missing or parts are inconsistent
        """
        if self._configuration is None:
            raise UsageError("model must be specified")
        if self._field is None:
            raise UsageError("field must be specified (classical, number or coherent)")
        config = self._configuration

        _require_finite(self._finite_values())
        if self._t_max is not None and not self._t_max > 0:
            raise UsageError(f"t_max must be > 0, got {self._t_max}")
        if self._samples is not None and self._samples < 2:
            raise UsageError(f"samples must be >= 2, got {self._samples}")
        if self._photons is not None and min(self._photons) < 0:
            raise UsageError(f"photon numbers must be >= 0, got {self._photons}")
        if self._mean_photons is not None and min(self._mean_photons) < 0:
            raise UsageError(f"mean photon numbers must be >= 0, got {self._mean_photons}")

        if config is Configuration.CASCADE:
            if self._method is Method.ANALYTIC:
                raise UsageError("cascade has no closed-form dynamics; use method 'oracle'")
            if self._field is FieldKind.COHERENT:
                raise UsageError("coherent averaging needs closed forms; cascade is not supported")
        if self._field is FieldKind.COHERENT and self._method is Method.ORACLE:
            raise UsageError("coherent fields are evaluated from closed forms only")
        if self._detuning != (0.0, 0.0):
            if self._field is not FieldKind.CLASSICAL:
                raise UsageError("detunings apply to classical fields only")
            if self._method is Method.ANALYTIC:
                raise UsageError("closed forms hold on resonance only; use method 'oracle'")

        return ModelSpec(
            configuration=config,
            field_kind=self._field,
            initial=self._initial,
            atom=self._atom,
            drive=self._drive,
            cavity=self._cavity,
            photons=self._photons,
            mean_photons=self._mean_photons,
            t_max=self._t_max,
            samples=self._samples,
            method=self._method,
            weighting=self._weighting,
            detuning=self._detuning,
        )

    def _finite_values(self) -> Dict[str, float]:
        values = {"omega1": self._atom.omega1, "omega2": self._atom.omega2,
                  "delta1": self._detuning[0], "delta2": self._detuning[1]}
        if self._t_max is not None:
            values["t_max"] = self._t_max
        if self._drive is not None:
            values.update(kappa1=self._drive.kappa1, kappa2=self._drive.kappa2)
        if self._cavity is not None:
            values.update(g1=self._cavity.g1, g2=self._cavity.g2)
        if self._mean_photons is not None:
            values.update(nbar=self._mean_photons[0], mbar=self._mean_photons[1])
        return values

    def __repr__(self) -> str:
        config = self._configuration.value if self._configuration else None
        kind = self._field.value if self._field else None
        return f"ModelBuilder(model={config}, field={kind}, initial={self._initial.value})"


def _coerce(enum_type, value, label: str):
    if isinstance(value, enum_type):
        return value
    try:
        return enum_type(str(value).lower())
    except ValueError as e:
        choices = ", ".join(member.value for member in enum_type)
        raise UsageError(f"unknown {label} {value!r}; expected one of {choices}") from e


def _require_finite(values: Dict[str, float]) -> None:
    for name, value in values.items():
        if not math.isfinite(value):
            raise UsageError(f"{name} must be finite, got {value!r}")
