"""
Closed-form level populations for lambda and vee atoms.

Both the semiclassical and the quantized problems reduce, on resonance, to a
three-level star: one hub level coupled to the other two with squared leg
weights x and y, Omega^2 = x + y. The hub is level 3 for lambda and level 1
for vee; x weights the leg addressed by mode 1. One table keyed by
(configuration, initial level) therefore serves both field types:

    semiclassical:  x = kappa1^2,       y = kappa2^2
    lambda (n, m):  x = (m + 1) g1^2,   y = n g2^2
    vee (n, m):     x = m g1^2,         y = (n + 1) g2^2

For the quantized problem the normative path is the dressed-basis propagator;
the table is kept as a second, independent rendering of the same result.
"""

import logging
import math
from typing import Callable, Dict, Tuple, Union

import numpy as np

from ..builder.hamiltonians import occupied_photons
from ..builder.models import (
    CavityParams,
    Configuration,
    DressedBasis,
    InitialLevel,
    ProbabilityTriple,
    RabiSpec,
)
from ..errors import ContractViolation, DegenerateManifoldError, DomainError

logger = logging.getLogger(__name__)

TimeLike = Union[float, np.ndarray]
Probabilities = Union[ProbabilityTriple, np.ndarray]

NORMALIZATION_TOLERANCE = 1e-12

_SQRT2 = math.sqrt(2.0)


def _require_closed_form(config: Configuration) -> None:
    if not config.has_closed_form:
        raise DomainError(f"{config.value} has no closed-form dynamics")


# Each entry maps (x, y, Omega^2, cos(Omega t)) to (p1, p2, p3).
_Row = Callable[[float, float, float, np.ndarray], Tuple[np.ndarray, np.ndarray, np.ndarray]]


def _lambda_level1(x, y, w2, c):
    s2, h2 = 1 - c * c, (1 - c) ** 2
    return ((y + x * c) ** 2 / w2 ** 2, x * y * h2 / w2 ** 2, x * s2 / w2)


def _lambda_level2(x, y, w2, c):
    s2, h2 = 1 - c * c, (1 - c) ** 2
    return (x * y * h2 / w2 ** 2, (x + y * c) ** 2 / w2 ** 2, y * s2 / w2)


def _lambda_level3(x, y, w2, c):
    s2 = 1 - c * c
    return (x * s2 / w2, y * s2 / w2, c * c)


def _vee_level1(x, y, w2, c):
    s2 = 1 - c * c
    return (c * c, y * s2 / w2, x * s2 / w2)


def _vee_level2(x, y, w2, c):
    s2, h2 = 1 - c * c, (1 - c) ** 2
    return (y * s2 / w2, (x + y * c) ** 2 / w2 ** 2, x * y * h2 / w2 ** 2)


def _vee_level3(x, y, w2, c):
    s2, h2 = 1 - c * c, (1 - c) ** 2
    return (x * s2 / w2, x * y * h2 / w2 ** 2, (y + x * c) ** 2 / w2 ** 2)


# 4 sin^4(Omega t / 2) is written as (1 - cos Omega t)^2 above.
_CLOSED_FORMS: Dict[Tuple[Configuration, InitialLevel], _Row] = {
    (Configuration.LAMBDA, InitialLevel.LEVEL_1): _lambda_level1,
    (Configuration.LAMBDA, InitialLevel.LEVEL_2): _lambda_level2,
    (Configuration.LAMBDA, InitialLevel.LEVEL_3): _lambda_level3,
    (Configuration.VEE, InitialLevel.LEVEL_1): _vee_level1,
    (Configuration.VEE, InitialLevel.LEVEL_2): _vee_level2,
    (Configuration.VEE, InitialLevel.LEVEL_3): _vee_level3,
}


def closed_form_probabilities(config: Configuration, initial: InitialLevel,
                              x: float, y: float, t: TimeLike) -> np.ndarray:
    """
    Evaluate the closed-form table for given leg weights.

    Args:
        config: LAMBDA or VEE
        initial: Level occupied at t = 0
        x: Squared coupling on the mode-1 leg
        y: Squared coupling on the mode-2 leg
        t: Time or array of times

    Returns:
        Array of shape t.shape + (3,) with columns (p1, p2, p3)
    """
    _require_closed_form(config)
    t = np.asarray(t, dtype=float)
    w2 = x + y
    if w2 <= 0.0:
        frozen = np.zeros(t.shape + (3,))
        frozen[..., initial.value - 1] = 1.0
        return frozen
    c = np.cos(math.sqrt(w2) * t)
    p1, p2, p3 = _CLOSED_FORMS[(config, initial)](x, y, w2, c)
    return np.stack(np.broadcast_arrays(p1, p2, p3), axis=-1)


def _package(values: np.ndarray, t: TimeLike) -> Probabilities:
    if np.ndim(t) == 0:
        return ProbabilityTriple(*(float(v) for v in values))
    return values


def leg_weights(config: Configuration, cavity: CavityParams, n: float, m: float) -> Tuple[float, float]:
    """
    Squared couplings (x, y) of the quantized manifold (n, m).

    Labels of -1 are accepted here; the matching coefficient is then zero.
    """
    _require_closed_form(config)
    if config is Configuration.LAMBDA:
        return (max(m + 1, 0) * cavity.g1 ** 2, max(n, 0) * cavity.g2 ** 2)
    return (max(m, 0) * cavity.g1 ** 2, max(n + 1, 0) * cavity.g2 ** 2)


def matched_couplings(config: Configuration, cavity: CavityParams, n: int, m: int) -> Tuple[float, float]:
    """Classical couplings (kappa1, kappa2) that reproduce manifold (n, m)."""
    x, y = leg_weights(config, cavity, n, m)
    return (math.sqrt(x), math.sqrt(y))


def rabi_spec(config: Configuration, kappa1: float = 0.0, kappa2: float = 0.0,
              cavity: CavityParams = None, n: int = 0, m: int = 0) -> RabiSpec:
    """Generalized Rabi frequency and, when a cavity is given, the manifold frequency."""
    omega_nm = 0.0
    if cavity is not None:
        omega_nm = math.sqrt(sum(leg_weights(config, cavity, n, m)))
    return RabiSpec(delta=math.hypot(kappa1, kappa2), omega_nm=omega_nm)


def semiclassical_probabilities(config: Configuration, kappa1: float, kappa2: float,
                                initial: InitialLevel, t: TimeLike) -> Probabilities:
    """
    Populations under a resonant classical drive.

    With kappa1 = kappa2 = 0 the initial distribution is returned unchanged.

    Args:
        config: LAMBDA or VEE
        kappa1: Coupling of mode 1
        kappa2: Coupling of mode 2
        initial: Level occupied at t = 0
        t: Time (returns a ProbabilityTriple) or array (returns an (N, 3) array)

    Returns:
        Populations (p1, p2, p3)
    """
    if kappa1 < 0 or kappa2 < 0:
        raise DomainError("couplings must be >= 0")
    values = closed_form_probabilities(config, initial, kappa1 ** 2, kappa2 ** 2, t)
    return _package(values, t)


def _check_manifold(config: Configuration, initial: InitialLevel, n: int, m: int,
                    check_occupancy: bool) -> None:
    if n < 0 or m < 0:
        raise DomainError(f"photon numbers must be >= 0, got n={n}, m={m}")
    if check_occupancy and min(occupied_photons(config, initial, n, m)) < 0:
        raise DomainError(
            f"level {initial.value} of the {config.value} manifold (n={n}, m={m}) "
            "has a negative photon number"
        )


def printed_quantized_probabilities(config: Configuration, cavity: CavityParams, n: int, m: int,
                                    initial: InitialLevel, t: TimeLike,
                                    check_occupancy: bool = True) -> Probabilities:
    """Number-state populations from the closed-form table."""
    _require_closed_form(config)
    _check_manifold(config, initial, n, m, check_occupancy)
    x, y = leg_weights(config, cavity, n, m)
    return _package(closed_form_probabilities(config, initial, x, y, t), t)


def euler_rotation(theta1: float, theta2: float, theta3: float) -> np.ndarray:
    """
    Proper z-x-z rotation matrix; theta1 is the tilt about x.

    The (0, 1) entry is c3 s2 + c1 c2 s3, which keeps the product orthogonal.
    """
    c1, s1 = math.cos(theta1), math.sin(theta1)
    c2, s2 = math.cos(theta2), math.sin(theta2)
    c3, s3 = math.cos(theta3), math.sin(theta3)
    return np.array([
        [c3 * c2 - c1 * s2 * s3, c3 * s2 + c1 * c2 * s3, s3 * s1],
        [-s3 * c2 - c1 * s2 * c3, -s3 * s2 + c1 * c2 * c3, c3 * s1],
        [s1 * s2, -s1 * c2, c1],
    ])


def extract_euler_angles(rotation: np.ndarray) -> Tuple[float, float, float]:
    """
    Recover (theta1, theta2, theta3) from a proper rotation.

    theta1 is taken in [0, pi]. When sin(theta1) vanishes only theta2 + theta3
    (or their difference) is defined and theta2 is set to 0.
    """
    c1 = float(np.clip(rotation[2][2], -1.0, 1.0))
    theta1 = math.acos(c1)
    s1 = math.sqrt(max(0.0, 1.0 - c1 * c1))
    if s1 < 1e-12:
        if c1 > 0:
            return (theta1, 0.0, math.atan2(rotation[0][1], rotation[0][0]))
        return (theta1, 0.0, math.atan2(-rotation[0][1], rotation[0][0]))
    theta2 = math.atan2(rotation[2][0] / s1, -rotation[2][1] / s1)
    theta3 = math.atan2(rotation[0][2] / s1, rotation[1][2] / s1)
    return (theta1, theta2, theta3)


def _printed_angles(config: Configuration, cavity: CavityParams, n: int, m: int) -> Tuple[float, float, float]:
    g1, g2 = cavity.g1, cavity.g2
    if config is Configuration.LAMBDA:
        theta1 = math.acos(math.sqrt(1 + m) * g1 / math.sqrt(2 * (1 + m) * g1 ** 2 + 2 * n * g2 ** 2))
        wide = math.sqrt((1 + m) * g1 ** 2 + 2 * n * g2 ** 2)
        theta2 = -math.acos(-math.sqrt(n) * g2 / wide)
        theta3 = math.acos(-math.sqrt(2 * n) * g2 / wide)
        return (theta1, theta2, theta3)
    theta2 = math.acos(-math.sqrt(n + 1) * g2 / math.sqrt(m * g1 ** 2 + (1 + n) * g2 ** 2))
    return (-math.pi / 4, theta2, -math.pi / 2)


def dressed_basis(config: Configuration, cavity: CavityParams, n: int, m: int) -> DressedBasis:
    """
    Dressed states of the quantized block for manifold (n, m).

    Args:
        config: LAMBDA or VEE
        cavity: Couplings g1, g2
        n: First photon label
        m: Second photon label

    Returns:
        DressedBasis whose rows are eigenvectors for (+Omega, 0, -Omega)

    Raises:
        DomainError: If n or m is negative
        DegenerateManifoldError: If Omega_nm = 0
    """
    _require_closed_form(config)
    if n < 0 or m < 0:
        raise DomainError(f"photon numbers must be >= 0, got n={n}, m={m}")
    x, y = leg_weights(config, cavity, n, m)
    omega = math.sqrt(x + y)
    if omega == 0.0:
        raise DegenerateManifoldError(
            f"{config.value} manifold (n={n}, m={m}) is uncoupled; dynamics are frozen"
        )
    if config is Configuration.LAMBDA:
        p = cavity.g2 * math.sqrt(n) / omega
        q = cavity.g1 * math.sqrt(m + 1) / omega
        rotation = np.array([
            [1 / _SQRT2, p / _SQRT2, q / _SQRT2],
            [0.0, q, -p],
            [-1 / _SQRT2, p / _SQRT2, q / _SQRT2],
        ])
    else:
        a = cavity.g1 * math.sqrt(m) / omega
        b = cavity.g2 * math.sqrt(n + 1) / omega
        rotation = np.array([
            [a / _SQRT2, b / _SQRT2, 1 / _SQRT2],
            [-b, a, 0.0],
            [-a / _SQRT2, -b / _SQRT2, 1 / _SQRT2],
        ])
    rotation.setflags(write=False)
    return DressedBasis(
        eigenvalues=(omega, 0.0, -omega),
        rotation=rotation,
        euler_angles=_printed_angles(config, cavity, n, m),
        omega=omega,
    )


def _propagate(basis: DressedBasis, amplitudes: np.ndarray, t: np.ndarray) -> np.ndarray:
    # T^-1 diag(exp(-i lambda t)) T c0 with T^-1 = T^T
    phases = np.exp(-1j * np.multiply.outer(t, np.asarray(basis.eigenvalues)))
    return (phases * (basis.rotation @ amplitudes)) @ basis.rotation


def quantized_amplitudes(config: Configuration, cavity: CavityParams, n: int, m: int,
                         amplitudes, t: TimeLike) -> np.ndarray:
    """
    Propagate bare-triple amplitudes through the dressed basis.

    Args:
        config: LAMBDA or VEE
        cavity: Couplings g1, g2
        n: First photon label
        m: Second photon label
        amplitudes: Complex triple in the (|3>, |2>, |1>) basis, normalized
        t: Time or array of times

    Returns:
        Amplitudes of shape t.shape + (3,)

    Raises:
        ContractViolation: If the input triple is not normalized
    """
    amplitudes = np.asarray(amplitudes, dtype=complex)
    if amplitudes.shape != (3,):
        raise ContractViolation(f"expected three amplitudes, got shape {amplitudes.shape}")
    norm = float(np.sum(np.abs(amplitudes) ** 2))
    if abs(norm - 1.0) > NORMALIZATION_TOLERANCE:
        raise ContractViolation(f"initial amplitudes must be normalized, norm is {norm!r}")
    t = np.asarray(t, dtype=float)
    try:
        basis = dressed_basis(config, cavity, n, m)
    except DegenerateManifoldError:
        logger.debug("Frozen %s manifold (n=%d, m=%d)", config.value, n, m)
        return np.broadcast_to(amplitudes, t.shape + (3,)).copy()
    return _propagate(basis, amplitudes, t)


def quantized_probabilities(config: Configuration, cavity: CavityParams, n: int, m: int,
                            initial: InitialLevel, t: TimeLike,
                            check_occupancy: bool = True) -> Probabilities:
    """
    Number-state populations from the dressed-basis propagator.

    Args:
        config: LAMBDA or VEE
        cavity: Couplings g1, g2
        n: First photon label
        m: Second photon label
        initial: Level occupied at t = 0
        t: Time (returns a ProbabilityTriple) or array (returns an (N, 3) array)
        check_occupancy: Reject manifolds whose occupied bare state would carry
            a negative photon number

    Returns:
        Populations (p1, p2, p3)

    Raises:
        DomainError: For negative labels, or an unoccupiable initial state
    """
    _require_closed_form(config)
    _check_manifold(config, initial, n, m, check_occupancy)
    amplitudes = quantized_amplitudes(config, cavity, n, m, initial.amplitudes(), t)
    # basis order is (|3>, |2>, |1>)
    values = np.abs(amplitudes[..., ::-1]) ** 2
    return _package(values, t)
