"""
Independent numerical oracles and the symmetry/correspondence analyses.

The oracles share no code with the closed forms: the semiclassical one
integrates the time-dependent amplitude equations with fixed-step RK4, the
quantized one exponentiates the interaction block with scipy.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import expm

from ..builder.algebra import orthogonality_deviation, shift_operators, verify_closed_algebra
from ..builder.hamiltonians import (
    commutation_check,
    detunings,
    free_atomic_hamiltonian,
    quantized_block,
    resonant_drive,
)
from ..builder.models import (
    AmplitudeTrace,
    AtomParams,
    CavityParams,
    ComparisonReport,
    Configuration,
    DetuningSet,
    DriveParams,
    InitialLevel,
    OracleConfig,
    RelationCheck,
    SymmetryKind,
    Weighting,
)
from ..builder.utils import max_deviation, time_grid
from ..errors import DomainError, OracleQualityError, UsageError
from .analytic import (
    dressed_basis,
    euler_rotation,
    extract_euler_angles,
    leg_weights,
    matched_couplings,
    printed_quantized_probabilities,
    quantized_probabilities,
    semiclassical_probabilities,
)
from .coherent import averaged_probabilities, coherent_spec, revival_time_estimate

logger = logging.getLogger(__name__)

STEPS_PER_PERIOD = 2000
DEFAULT_HORIZON = 100.0
NORM_DRIFT_LIMIT = 1e-6
NORM_DRIFT_WARNING = 1e-8
# RK4 steps whose coupling matrices are held in memory at once
RK4_CHUNK_STEPS = 4096

SEMICLASSICAL_TOLERANCE = 1e-6
QUANTIZED_TOLERANCE = 1e-10
EXACT_TOLERANCE = 1e-12
RESTORATION_BAND = 0.05

# Figure parameter sets
FIG3_KAPPAS = (0.2, 0.1)
FIG5_CAVITY = CavityParams(g1=0.2, g2=0.1)
FIG5_PHOTONS = (1, 1)
FIG7_MEANS = (30.0, 20.0)


def default_oracle_config(config: Configuration, atom: AtomParams, drive: DriveParams,
                          t_max: float = DEFAULT_HORIZON,
                          tolerance: float = SEMICLASSICAL_TOLERANCE) -> OracleConfig:
    """
    Step of min(Rabi period, fastest detuning period) / 2000.

    Args:
        config: Atom configuration
        atom: Level frequencies
        drive: Couplings and field frequencies
        t_max: Horizon
        tolerance: Comparison bound carried on the config

    Returns:
        OracleConfig
    """
    detuned = detunings(config, atom, drive.frequencies)
    fastest = max(math.hypot(drive.kappa1, drive.kappa2), abs(detuned.delta1), abs(detuned.delta2))
    period = 2.0 * math.pi / fastest if fastest > 0 else t_max
    return OracleConfig(step=period / STEPS_PER_PERIOD, tolerance=tolerance, t_max=t_max)


def _interaction_couplings(config: Configuration, atom: AtomParams, drive: DriveParams,
                           times: np.ndarray) -> np.ndarray:
    """Coupling matrices exp(iH0 t) H_c(t) exp(-iH0 t), shape (len(times), 3, 3)."""
    ops = shift_operators()
    first, second = config.generators
    t = times[:, None, None]
    couplings = np.zeros((times.size, 3, 3), dtype=complex)
    for family, kappa, big_omega in ((first, drive.kappa1, drive.big_omega1),
                                     (second, drive.kappa2, drive.big_omega2)):
        phase = np.exp(-1j * big_omega * t)
        couplings += kappa * (phase * ops.raising(family) + np.conj(phase) * ops.lowering(family))
    energies = np.real(np.diag(free_atomic_hamiltonian(config, atom)))
    gaps = energies[:, None] - energies[None, :]
    return couplings * np.exp(1j * gaps[None, :, :] * t)


def rk4_propagator(config: Configuration, atom: AtomParams, drive: DriveParams,
                   times: np.ndarray, step: float) -> Tuple[np.ndarray, float]:
    """
    Integrate i dC/dt = V(t) C for all three initial levels at once.

    The grid must be uniform; each sample interval is split into equal RK4
    steps no longer than ``step``.

    Returns:
        (propagators of shape (len(times), 3, 3), worst norm drift)

    Raises:
        OracleQualityError: If the norm drifts by more than 1e-6
    """
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size < 2:
        raise DomainError("RK4 needs a 1-D grid of at least two samples")
    spacing = np.diff(times)
    if np.any(spacing <= 0) or not np.allclose(spacing, spacing[0], rtol=1e-9, atol=0.0):
        raise DomainError("RK4 needs a uniform, increasing time grid")
    substeps = max(1, math.ceil(spacing[0] / step - 1e-9))
    h = spacing[0] / substeps
    total = (times.size - 1) * substeps
    logger.debug("RK4 %s: %d steps of %.3e up to t=%.6g", config.value, total, h, times[-1])

    state = np.eye(3, dtype=complex)
    out = np.empty((times.size, 3, 3), dtype=complex)
    out[0] = state
    for start in range(0, total, RK4_CHUNK_STEPS):
        stop = min(start + RK4_CHUNK_STEPS, total)
        half_grid = times[0] + 0.5 * h * np.arange(2 * start, 2 * stop + 1)
        couplings = _interaction_couplings(config, atom, drive, half_grid)
        for k in range(start, stop):
            j = 2 * (k - start)
            v0, vm, v1 = couplings[j], couplings[j + 1], couplings[j + 2]
            k1 = -1j * (v0 @ state)
            k2 = -1j * (vm @ (state + 0.5 * h * k1))
            k3 = -1j * (vm @ (state + 0.5 * h * k2))
            k4 = -1j * (v1 @ (state + h * k3))
            state = state + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
            if (k + 1) % substeps == 0:
                out[(k + 1) // substeps] = state

    drift = float(np.max(np.abs(np.sum(np.abs(out) ** 2, axis=1) - 1.0)))
    if drift > NORM_DRIFT_LIMIT:
        raise OracleQualityError(f"RK4 norm drift {drift:.3e} exceeds {NORM_DRIFT_LIMIT:g}; reduce the step")
    if drift > NORM_DRIFT_WARNING:
        logger.warning("RK4 norm drift %.3e above %.0e", drift, NORM_DRIFT_WARNING)
    return out, drift


def rk4_semiclassical(config: Configuration, atom: AtomParams, drive: DriveParams,
                      initial: InitialLevel, oracle: Optional[OracleConfig] = None,
                      times: Optional[np.ndarray] = None) -> AmplitudeTrace:
    """
    Fixed-step RK4 amplitudes under the full time-dependent drive.

    Resonance is not assumed. Amplitudes are in the frame rotating with the
    bare atomic energies, which leaves the populations unchanged.

    Args:
        config: LAMBDA, VEE or CASCADE
        atom: Level frequencies
        drive: Couplings and field frequencies
        initial: Level occupied at t = 0
        oracle: Step and horizon; defaults to ``default_oracle_config``
        times: Output grid; defaults to 2001 samples over [0, oracle.t_max]

    Returns:
        AmplitudeTrace
    """
    oracle = oracle or default_oracle_config(config, atom, drive)
    if times is None:
        times = time_grid(oracle.t_max, 2001)
    propagators, drift = rk4_propagator(config, atom, drive, times, oracle.step)
    return AmplitudeTrace(
        times=np.asarray(times, dtype=float),
        amplitudes=propagators[:, :, initial.index],
        norm_drift=drift,
        metadata={
            "model": config.value,
            "field": "classical",
            "initial_level": initial.value,
            "kappa1": drive.kappa1,
            "kappa2": drive.kappa2,
            "method": "oracle",
        },
    )


def block_exponential(config: Configuration, cavity: CavityParams, n: int, m: int, t: float) -> np.ndarray:
    """exp(-i H_block t) by scaling and squaring (scipy.linalg.expm)."""
    return expm(-1j * float(t) * quantized_block(config, cavity, n, m))


def block_probabilities(config: Configuration, cavity: CavityParams, n: int, m: int,
                        initial: InitialLevel, times: np.ndarray) -> np.ndarray:
    """Populations (p1, p2, p3) by exponentiating the block at every sample, shape (len(times), 3)."""
    block = quantized_block(config, cavity, n, m)
    times = np.asarray(times, dtype=float)
    # expm works on the stacked (len(times), 3, 3) array in one call
    propagators = expm(-1j * times[:, None, None] * block[None, :, :])
    return (np.abs(propagators[:, :, initial.index]) ** 2)[:, ::-1]


def compare_series(times: np.ndarray, first: np.ndarray, second: np.ndarray,
                   names: Tuple[str, str], tolerance: float,
                   notes: Optional[List[str]] = None) -> ComparisonReport:
    """L-infinity distance between two (N, k) series."""
    diff = np.abs(np.asarray(first) - np.asarray(second))
    if diff.ndim > 1:
        diff = diff.max(axis=1)
    worst = int(np.argmax(diff))
    return ComparisonReport.build(diff[worst], times[worst], names, tolerance, notes)


def semiclassical_oracle_report(config: Configuration, kappa1: float, kappa2: float,
                                initial: InitialLevel, atom: Optional[AtomParams] = None,
                                t_max: float = DEFAULT_HORIZON, samples: int = 2001,
                                tolerance: float = SEMICLASSICAL_TOLERANCE) -> ComparisonReport:
    """Closed form against RK4 at resonance over [0, t_max]."""
    atom = atom or AtomParams()
    drive = DriveParams(kappa1, kappa2).with_frequencies(*resonant_drive(config, atom))
    times = time_grid(t_max, samples)
    oracle = rk4_semiclassical(config, atom, drive, initial, times=times).to_trace()
    closed = semiclassical_probabilities(config, kappa1, kappa2, initial, times)
    return compare_series(times, closed, oracle.probabilities,
                          (f"{config.value} closed form, level {initial.value}", "rk4"), tolerance)


def _one_period(omega: float, samples: int = 2001) -> np.ndarray:
    return time_grid(2.0 * math.pi / omega if omega > 0 else 1.0, samples)


def quantized_oracle_report(config: Configuration, cavity: CavityParams, n: int, m: int,
                            initial: InitialLevel, times: Optional[np.ndarray] = None,
                            tolerance: float = QUANTIZED_TOLERANCE,
                            source: str = "propagator") -> ComparisonReport:
    """
    Dressed-basis propagator (or the printed table) against block exponentiation.

    Args:
        source: 'propagator' or 'printed'
    """
    if times is None:
        times = _one_period(math.sqrt(sum(leg_weights(config, cavity, n, m))))
    if source == "printed":
        closed = printed_quantized_probabilities(config, cavity, n, m, initial, times)
    elif source == "propagator":
        closed = quantized_probabilities(config, cavity, n, m, initial, times)
    else:
        raise UsageError(f"unknown source {source!r}")
    oracle = block_probabilities(config, cavity, n, m, initial, times)
    return compare_series(times, closed, oracle,
                          (f"{config.value} {source}, level {initial.value}", "expm"), tolerance)


def dressed_basis_checks(config: Configuration, cavity: CavityParams, n: int, m: int) -> List[RelationCheck]:
    """Orthogonality, eigen-residuals and Euler reconstructions of the dressed basis."""
    basis = dressed_basis(config, cavity, n, m)
    block = np.real(quantized_block(config, cavity, n, m))
    rotation = basis.rotation
    residual = max(
        max_deviation(block @ row, value * row)
        for row, value in zip(rotation, basis.eigenvalues)
    )
    spectrum = max_deviation(np.sort(basis.eigenvalues), np.linalg.eigvalsh(block))
    extracted = euler_rotation(*extract_euler_angles(rotation))
    printed = euler_rotation(*basis.euler_angles)
    label = f"{config.value} (n={n}, m={m})"
    return [
        RelationCheck(f"{label} T T^T = 1", max_deviation(rotation @ rotation.T, np.eye(3)), EXACT_TOLERANCE),
        RelationCheck(f"{label} eigenvector residual", residual, EXACT_TOLERANCE),
        RelationCheck(f"{label} eigenvalues vs eigvalsh", spectrum, EXACT_TOLERANCE),
        RelationCheck(f"{label} Euler product, extracted angles", max_deviation(extracted, rotation), 1e-10),
        RelationCheck(f"{label} Euler product, closed-form angles", max_deviation(printed, rotation), math.inf),
    ]


def _check_case_pair(lambda_case: InitialLevel, vee_case: InitialLevel) -> None:
    if vee_case is not lambda_case.mirrored():
        raise UsageError(
            f"lambda level {lambda_case.value} pairs with vee level {lambda_case.mirrored().value}, "
            f"not {vee_case.value}"
        )


def symmetry_report(kind: SymmetryKind, lambda_case: InitialLevel, vee_case: InitialLevel, *,
                    kappa1: Optional[float] = None, kappa2: Optional[float] = None,
                    cavity: Optional[CavityParams] = None,
                    n: Optional[int] = None, m: Optional[int] = None,
                    nbar: Optional[float] = None, mbar: Optional[float] = None,
                    times: Optional[np.ndarray] = None, tolerance: Optional[float] = None,
                    levels: Sequence[int] = (1, 2, 3), matched: bool = True,
                    weighting: Weighting = Weighting.LITERAL,
                    report_unmatched: bool = False) -> ComparisonReport:
    """
    Distance between a lambda trace and the level-swapped vee trace.

    Lambda level k is paired with vee level 4 - k, and vee populations are
    compared with p1 and p3 exchanged.

    Args:
        kind: SEMICLASSICAL, QUANTIZED or COHERENT
        lambda_case: Initial level of the lambda atom
        vee_case: Initial level of the vee atom
        kappa1, kappa2: Classical couplings (semiclassical)
        cavity, n, m: Cavity couplings and manifold (quantized)
        cavity, nbar, mbar: Cavity couplings and mean photon numbers (coherent)
        times: Comparison grid; defaults to one period, or two revival times
        tolerance: Defaults to 1e-12, 1e-10 or the 0.05 restoration band
        levels: Lambda-side levels to compare
        matched: Coherent only; give the vee side means (nbar - 1, mbar + 1)
            so the mean couplings of both sides coincide
        weighting: Coherent weighting mode
        report_unmatched: Coherent only; add the unmatched distance as a note

    Returns:
        ComparisonReport

    Raises:
        UsageError: For mismatched cases or missing parameters
    """
    _check_case_pair(lambda_case, vee_case)
    columns = [level - 1 for level in levels]
    notes: List[str] = []

    if kind is SymmetryKind.SEMICLASSICAL:
        if kappa1 is None or kappa2 is None:
            raise UsageError("semiclassical symmetry needs kappa1 and kappa2")
        tolerance = EXACT_TOLERANCE if tolerance is None else tolerance
        if times is None:
            times = _one_period(math.hypot(kappa1, kappa2))
        first = semiclassical_probabilities(Configuration.LAMBDA, kappa1, kappa2, lambda_case, times)
        second = semiclassical_probabilities(Configuration.VEE, kappa1, kappa2, vee_case, times)

    elif kind is SymmetryKind.QUANTIZED:
        if cavity is None or n is None or m is None:
            raise UsageError("quantized symmetry needs cavity, n and m")
        tolerance = QUANTIZED_TOLERANCE if tolerance is None else tolerance
        if times is None:
            omegas = [math.sqrt(sum(leg_weights(c, cavity, n, m)))
                      for c in (Configuration.LAMBDA, Configuration.VEE)]
            positive = [w for w in omegas if w > 0]
            times = _one_period(min(positive) if positive else 0.0)
        first = quantized_probabilities(Configuration.LAMBDA, cavity, n, m, lambda_case, times)
        second = quantized_probabilities(Configuration.VEE, cavity, n, m, vee_case, times)

    elif kind is SymmetryKind.COHERENT:
        if cavity is None or nbar is None or mbar is None:
            raise UsageError("coherent symmetry needs cavity, nbar and mbar")
        tolerance = RESTORATION_BAND if tolerance is None else tolerance
        lambda_spec = coherent_spec(nbar, mbar)
        if times is None:
            t_r = revival_time_estimate(Configuration.LAMBDA, cavity, lambda_spec, lambda_case, weighting)
            times = time_grid(2.0 * t_r, 4001)
        first = averaged_probabilities(Configuration.LAMBDA, cavity, lambda_spec, lambda_case,
                                       times, weighting).probabilities
        vee_means = (max(nbar - 1.0, 0.0), mbar + 1.0) if matched else (nbar, mbar)
        second = averaged_probabilities(Configuration.VEE, cavity, coherent_spec(*vee_means), vee_case,
                                        times, weighting).probabilities
        notes.append(f"vee means nbar={vee_means[0]:g}, mbar={vee_means[1]:g}")
        if matched and report_unmatched:
            unmatched = averaged_probabilities(Configuration.VEE, cavity, coherent_spec(nbar, mbar),
                                               vee_case, times, weighting).probabilities
            distance = np.max(np.abs(first[:, columns] - unmatched[:, ::-1][:, columns]))
            notes.append(f"unmatched distance {distance:.6g}")

    else:
        raise UsageError(f"unknown symmetry kind {kind!r}")

    names = (f"lambda level {lambda_case.value}", f"vee level {vee_case.value} swapped")
    report = compare_series(np.asarray(times), first[:, columns], second[:, ::-1][:, columns],
                            names, tolerance, notes)
    if kind is SymmetryKind.QUANTIZED and not report.broken:
        logger.warning("Quantized lambda/vee symmetry holds at this parameter point (coincidence)")
    return report


def bohr_correspondence(config: Configuration, cavity: CavityParams, n: int, m: int,
                        case: InitialLevel, times: Optional[np.ndarray] = None,
                        tolerance: float = EXACT_TOLERANCE) -> ComparisonReport:
    """
    Number-state populations against the semiclassical ones at matched couplings.

    kappa1 = g1 sqrt(m + 1), kappa2 = g2 sqrt(n) for lambda and
    kappa1 = g1 sqrt(m), kappa2 = g2 sqrt(n + 1) for vee.
    """
    kappa1, kappa2 = matched_couplings(config, cavity, n, m)
    if times is None:
        times = _one_period(math.hypot(kappa1, kappa2))
    quantized = quantized_probabilities(config, cavity, n, m, case, times)
    classical = semiclassical_probabilities(config, kappa1, kappa2, case, times)
    names = (f"{config.value} number state (n={n}, m={m}), level {case.value}",
             f"semiclassical kappa=({kappa1:.6g}, {kappa2:.6g})")
    return compare_series(np.asarray(times), quantized, classical, names, tolerance)


@dataclass(frozen=True)
class SuiteCheck:
    """One line of a verification suite."""

    name: str
    deviation: float
    passed: bool
    expected_failure: bool = False

    def format(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        if self.expected_failure and self.passed:
            status = "PASS (broken as expected)"
        return f"{self.name}: max_dev={self.deviation:.3e} {status}"


def _from_relation(check: RelationCheck) -> SuiteCheck:
    return SuiteCheck(check.name, check.deviation, check.passed)


def _from_report(name: str, report: ComparisonReport) -> SuiteCheck:
    return SuiteCheck(name, report.max_abs_error, report.passed)


def algebra_suite() -> List[SuiteCheck]:
    checks = [_from_relation(c) for c in verify_closed_algebra()]
    gram = orthogonality_deviation()
    checks.append(SuiteCheck("tr(λi λj) = 2δij", gram, gram <= EXACT_TOLERANCE))
    return checks


def _random_cavities(count: int, seed: int) -> List[Tuple[CavityParams, int, int]]:
    rng = np.random.default_rng(seed)
    return [
        (CavityParams(g1=float(rng.uniform(0.05, 0.3)), g2=float(rng.uniform(0.05, 0.3))),
         int(rng.integers(1, 6)), int(rng.integers(1, 6)))
        for _ in range(count)
    ]


def _commutation_checks(atom: AtomParams, cavity: CavityParams, seed: int = 7) -> List[SuiteCheck]:
    rng = np.random.default_rng(seed)
    magnitudes = rng.uniform(0.01, 1.0, size=10)
    checks = []
    for config in Configuration:
        on, off = 0.0, math.inf
        for n in range(1, 6):
            for m in range(1, 6):
                for delta in magnitudes:
                    along = delta if config is Configuration.CASCADE else -delta
                    on = max(on, commutation_check(config, atom, cavity, n, m,
                                                   DetuningSet(delta, along, config)))
                    off = min(off, commutation_check(config, atom, cavity, n, m,
                                                     DetuningSet(delta, -along, config)))
        checks.append(SuiteCheck(f"{config.value} [H_I, H_II] on resonance line", on, on <= EXACT_TOLERANCE))
        checks.append(SuiteCheck(f"{config.value} [H_I, H_II] off resonance line (min)", off, off > 0.0))
    return checks


def oracle_suite(seed: int = 2024) -> List[SuiteCheck]:
    """Closed forms against RK4 and block exponentiation, plus dressed-basis checks."""
    checks: List[SuiteCheck] = []
    atom = AtomParams()
    kappa1, kappa2 = FIG3_KAPPAS
    n, m = FIG5_PHOTONS
    for config in (Configuration.LAMBDA, Configuration.VEE):
        for level in InitialLevel:
            report = semiclassical_oracle_report(config, kappa1, kappa2, level, atom)
            checks.append(_from_report(f"{config.value} level {level.value} closed form vs RK4", report))
    cascade_drive = DriveParams(kappa1, kappa2).with_frequencies(*resonant_drive(Configuration.CASCADE, atom))
    trace = rk4_semiclassical(Configuration.CASCADE, atom, cascade_drive, InitialLevel.LEVEL_1)
    checks.append(SuiteCheck("cascade RK4 norm drift", trace.norm_drift, trace.norm_drift <= NORM_DRIFT_WARNING))

    parameter_sets = [(FIG5_CAVITY, n, m)] + _random_cavities(10, seed)
    for config in (Configuration.LAMBDA, Configuration.VEE):
        for level in InitialLevel:
            for source in ("propagator", "printed"):
                worst = max(
                    (quantized_oracle_report(config, cavity, pn, pm, level, source=source)
                     for cavity, pn, pm in parameter_sets),
                    key=lambda r: r.max_abs_error,
                )
                checks.append(_from_report(
                    f"{config.value} level {level.value} {source} vs expm ({len(parameter_sets)} sets)", worst))
        for check in dressed_basis_checks(config, FIG5_CAVITY, n, m):
            checks.append(_from_relation(check))
    checks.extend(_commutation_checks(atom, FIG5_CAVITY))
    return checks


_CASE_PAIRS = (
    (InitialLevel.LEVEL_1, InitialLevel.LEVEL_3),
    (InitialLevel.LEVEL_2, InitialLevel.LEVEL_2),
    (InitialLevel.LEVEL_3, InitialLevel.LEVEL_1),
)


def symmetry_suite(seed: int = 11, include_coherent: bool = True) -> List[SuiteCheck]:
    """Inversion symmetry: exact semiclassically, broken by the vacuum, restored by coherent fields."""
    checks: List[SuiteCheck] = []
    rng = np.random.default_rng(seed)
    kappas = [FIG3_KAPPAS] + [tuple(rng.uniform(0.01, 1.0, size=2)) for _ in range(20)]
    for lambda_case, vee_case in _CASE_PAIRS:
        worst = max(
            (symmetry_report(SymmetryKind.SEMICLASSICAL, lambda_case, vee_case, kappa1=k1, kappa2=k2)
             for k1, k2 in kappas),
            key=lambda r: r.max_abs_error,
        )
        checks.append(_from_report(
            f"semiclassical lambda {lambda_case.value} vs vee {vee_case.value} ({len(kappas)} sets)", worst))

    n, m = FIG5_PHOTONS
    for lambda_case, vee_case in _CASE_PAIRS[:2]:
        report = symmetry_report(SymmetryKind.QUANTIZED, lambda_case, vee_case, cavity=FIG5_CAVITY, n=n, m=m)
        checks.append(SuiteCheck(
            f"number state lambda {lambda_case.value} vs vee {vee_case.value}",
            report.max_abs_error, report.broken, expected_failure=True))

    if include_coherent:
        nbar, mbar = FIG7_MEANS
        for (lambda_case, vee_case), levels in ((_CASE_PAIRS[0], (1, 2, 3)), (_CASE_PAIRS[1], (2,))):
            report = symmetry_report(SymmetryKind.COHERENT, lambda_case, vee_case,
                                     cavity=FIG5_CAVITY, nbar=nbar, mbar=mbar, levels=levels)
            label = "p2" if levels == (2,) else "all levels"
            checks.append(_from_report(
                f"coherent lambda {lambda_case.value} vs vee {vee_case.value} ({label})", report))
    return checks


def correspondence_suite(seed: int = 5) -> List[SuiteCheck]:
    """Number-state dynamics equal semiclassical dynamics at matched couplings."""
    checks: List[SuiteCheck] = []
    parameter_sets = [(FIG5_CAVITY, 1, 1), (FIG5_CAVITY, 400, 400)] + _random_cavities(10, seed)
    for config in (Configuration.LAMBDA, Configuration.VEE):
        for case in InitialLevel:
            worst = max(
                (bohr_correspondence(config, cavity, n, m, case) for cavity, n, m in parameter_sets),
                key=lambda r: r.max_abs_error,
            )
            checks.append(_from_report(
                f"{config.value} level {case.value} number state vs matched drive ({len(parameter_sets)} sets)",
                worst))
    return checks


SUITES: Dict[str, Callable[[], List[SuiteCheck]]] = {
    "algebra": algebra_suite,
    "oracle": oracle_suite,
    "symmetry": symmetry_suite,
    "correspondence": correspondence_suite,
}


def run_suite(name: str) -> List[SuiteCheck]:
    """
    Run one named suite, or every suite for 'all'.

    Raises:
        UsageError: For an unknown suite name
    """
    if name == "all":
        return [check for suite in SUITES.values() for check in suite()]
    if name not in SUITES:
        raise UsageError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}, all")
    return SUITES[name]()
