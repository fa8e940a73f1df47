"""
Semiclassical and quantized Hamiltonians for lambda, vee and cascade atoms.

Every matrix is written in the (|3>, |2>, |1>) basis. A configuration drives
two generator families (see ``Configuration.generators``): mode 1 drives the
first family, mode 2 the second.

Quantized blocks act on the coupled bare triple of a manifold labelled
(n, m). Each triple member is a (slot1, slot2, level) label; the photon slots
map onto modes as follows:

    lambda:  |n-1, m, 3>, |n, m, 2>, |n-1, m+1, 1>     slot1 = mode 2, slot2 = mode 1
    vee:     |n+1, m-1, 3>, |n, m, 2>, |n+1, m, 1>     slot1 = mode 2, slot2 = mode 1
    cascade: |n-1, m-1, 3>, |n-1, m, 2>, |n, m, 1>     slot1 = mode 1, slot2 = mode 2

The cascade free Hamiltonian keeps the (Omega1 + w2 - w1, Omega2 + w1 - w2)
prefactors exactly as they are usually printed. Their sign pattern differs
from the lambda and vee ones; with them the free and interaction parts
commute on the Delta1 = Delta2 line.
"""

import logging
import math
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from ..errors import DomainError
from .algebra import shift_operators
from .models import (
    AtomParams,
    CavityParams,
    ComplexMatrix3,
    Configuration,
    DetuningSet,
    DriveParams,
    InitialLevel,
)
from .utils import commutator, max_deviation

logger = logging.getLogger(__name__)

COMMUTATION_TOLERANCE = 1e-12

Frequencies = Tuple[float, float]

# Transition frequencies (w1, w2) such that Delta_i = w_i - Omega_i.
_TRANSITIONS: Dict[Configuration, Callable[[AtomParams], Frequencies]] = {
    Configuration.LAMBDA: lambda a: (2 * a.omega1 + a.omega2, a.omega1 + 2 * a.omega2),
    Configuration.VEE: lambda a: (2 * a.omega1 + a.omega2, 2 * a.omega2 + a.omega1),
    Configuration.CASCADE: lambda a: (2 * a.omega1 - a.omega2, 2 * a.omega2 - a.omega1),
}

# Prefactors of the two diagonal generators in the free Hamiltonian H_I.
_FREE_PREFACTORS: Dict[Configuration, Callable[[AtomParams, Frequencies], Frequencies]] = {
    Configuration.LAMBDA: lambda a, w: (w[0] - a.omega1 - a.omega2, w[1] - a.omega1 - a.omega2),
    Configuration.VEE: lambda a, w: (w[0] - a.omega1 - a.omega2, w[1] - a.omega1 - a.omega2),
    Configuration.CASCADE: lambda a, w: (w[0] + a.omega2 - a.omega1, w[1] + a.omega1 - a.omega2),
}

# Photon-slot offsets of the triple members (state 3, state 2, state 1).
_TRIPLE_OFFSETS: Dict[Configuration, Tuple[Tuple[int, int], ...]] = {
    Configuration.LAMBDA: ((-1, 0), (0, 0), (-1, 1)),
    Configuration.VEE: ((1, -1), (0, 0), (1, 0)),
    Configuration.CASCADE: ((-1, -1), (-1, 0), (0, 0)),
}

# Mode (1 or 2) counted by each photon slot.
_SLOT_MODES: Dict[Configuration, Tuple[int, int]] = {
    Configuration.LAMBDA: (2, 1),
    Configuration.VEE: (2, 1),
    Configuration.CASCADE: (1, 2),
}


def transition_frequencies(config: Configuration, atom: AtomParams) -> Frequencies:
    """Bare transition frequencies addressed by modes 1 and 2."""
    return _TRANSITIONS[config](atom)


def detunings(config: Configuration, atom: AtomParams, frequencies: Frequencies) -> DetuningSet:
    """
    Detunings of the two fields from their transitions.

    Args:
        config: Atom configuration
        atom: Level frequencies
        frequencies: Field frequencies (Omega1, Omega2)

    Returns:
        DetuningSet tagged with the configuration
    """
    w1, w2 = transition_frequencies(config, atom)
    return DetuningSet(delta1=w1 - frequencies[0], delta2=w2 - frequencies[1], configuration=config)


def drive_frequencies_for(config: Configuration, atom: AtomParams,
                          delta1: float, delta2: float) -> Frequencies:
    """Field frequencies that realize the requested detunings."""
    w1, w2 = transition_frequencies(config, atom)
    return (w1 - delta1, w2 - delta2)


def resonant_drive(config: Configuration, atom: AtomParams) -> Frequencies:
    """Field frequencies with both detunings zero."""
    return drive_frequencies_for(config, atom, 0.0, 0.0)


def free_atomic_hamiltonian(config: Configuration, atom: AtomParams) -> ComplexMatrix3:
    """Bare atomic Hamiltonian omega1*G1_3 + omega2*G2_3 (diagonal)."""
    ops = shift_operators()
    first, second = config.generators
    return atom.omega1 * ops.diagonal(first) + atom.omega2 * ops.diagonal(second)


def semiclassical_hamiltonian(config: Configuration, atom: AtomParams,
                              drive: DriveParams, t: float) -> ComplexMatrix3:
    """
    Full semiclassical Hamiltonian at time t.

    H = H_I + H_II with the detuning terms folded into the diagonal, so the
    diagonal is the bare atomic spectrum and each coupling carries the phase
    exp(-i Omega_i t) on its raising part.

    Args:
        config: Atom configuration
        atom: Level frequencies
        drive: Coupling strengths and field frequencies
        t: Time

    Returns:
        Hermitian 3x3 matrix
    """
    ops = shift_operators()
    first, second = config.generators
    hamiltonian = free_atomic_hamiltonian(config, atom)
    for family, kappa, big_omega in ((first, drive.kappa1, drive.big_omega1),
                                     (second, drive.kappa2, drive.big_omega2)):
        phase = np.exp(-1j * big_omega * t)
        hamiltonian = hamiltonian + kappa * (phase * ops.raising(family)
                                             + np.conj(phase) * ops.lowering(family))
    return hamiltonian


def semiclassical_coupling(config: Configuration, kappa1: float, kappa2: float) -> ComplexMatrix3:
    """Time-independent interaction matrix seen on resonance in the rotating frame."""
    ops = shift_operators()
    first, second = config.generators
    return (kappa1 * (ops.raising(first) + ops.lowering(first))
            + kappa2 * (ops.raising(second) + ops.lowering(second)))


def _check_photons(n: int, m: int) -> None:
    if n < 0 or m < 0:
        raise DomainError(f"photon numbers must be >= 0, got n={n}, m={m}")


def coupled_triple(config: Configuration, n: int, m: int) -> List[Tuple[int, int, int]]:
    """Bare-state labels (slot1, slot2, level) of manifold (n, m), state 3 first."""
    return [
        (n + dn, m + dm, level)
        for (dn, dm), level in zip(_TRIPLE_OFFSETS[config], (3, 2, 1))
    ]


def occupied_photons(config: Configuration, level: InitialLevel, n: int, m: int) -> Tuple[int, int]:
    """Photon slots (slot1, slot2) of the bare state on ``level`` in manifold (n, m)."""
    dn, dm = _TRIPLE_OFFSETS[config][level.index]
    return (n + dn, m + dm)


def manifold_for_occupation(config: Configuration, level: InitialLevel,
                            photons: Tuple[int, int]) -> Tuple[int, int]:
    """Manifold label whose ``level`` member carries the given photon slots."""
    dn, dm = _TRIPLE_OFFSETS[config][level.index]
    return (photons[0] - dn, photons[1] - dm)


def slot_modes(config: Configuration) -> Tuple[int, int]:
    return _SLOT_MODES[config]


def coupling_entries(config: Configuration, cavity: CavityParams,
                     n: float, m: float) -> Dict[Tuple[int, int], float]:
    """
    Nonzero upper-triangle couplings of the quantized block.

    Photon labels may be fractional or -1 here; callers that need a physical
    block go through ``quantized_block``.
    """
    if config is Configuration.LAMBDA:
        return {(0, 1): cavity.g2 * math.sqrt(max(n, 0)),
                (0, 2): cavity.g1 * math.sqrt(max(m + 1, 0))}
    if config is Configuration.VEE:
        return {(0, 2): cavity.g1 * math.sqrt(max(m, 0)),
                (1, 2): cavity.g2 * math.sqrt(max(n + 1, 0))}
    return {(0, 1): cavity.g2 * math.sqrt(max(m, 0)),
            (1, 2): cavity.g1 * math.sqrt(max(n, 0))}


def quantized_block(config: Configuration, cavity: CavityParams, n: int, m: int) -> ComplexMatrix3:
    """
    Interaction Hamiltonian restricted to the coupled triple of manifold (n, m).

    Args:
        config: Atom configuration
        cavity: Mode couplings g1, g2
        n: First photon label of the manifold
        m: Second photon label of the manifold

    Returns:
        Real symmetric 3x3 matrix (complex dtype) with zero diagonal

    Raises:
        DomainError: If n or m is negative
    """
    _check_photons(n, m)
    block = np.zeros((3, 3), dtype=complex)
    for (row, col), value in coupling_entries(config, cavity, n, m).items():
        block[row, col] = value
        block[col, row] = value
    return block


def free_block(config: Configuration, atom: AtomParams, cavity: CavityParams,
               n: int, m: int) -> ComplexMatrix3:
    """
    Free Hamiltonian H_I on the coupled triple: atomic prefactors plus field energy.

    Raises:
        DomainError: If n or m is negative
    """
    _check_photons(n, m)
    ops = shift_operators()
    first, second = config.generators
    c1, c2 = _FREE_PREFACTORS[config](atom, cavity.frequencies)
    atomic = np.real(np.diag(c1 * ops.diagonal(first) + c2 * ops.diagonal(second)))
    mode_frequency = {1: cavity.big_omega1, 2: cavity.big_omega2}
    mode1, mode2 = _SLOT_MODES[config]
    field_energy = [
        mode_frequency[mode1] * slot1 + mode_frequency[mode2] * slot2
        for slot1, slot2, _ in coupled_triple(config, n, m)
    ]
    return np.diag(atomic + np.array(field_energy)).astype(complex)


def commutation_check(config: Configuration, atom: AtomParams, cavity: CavityParams,
                      n: int, m: int, detunings: Optional[DetuningSet] = None) -> float:
    """
    Largest entry of [H_I, H_II] on the coupled triple of manifold (n, m).

    Args:
        config: Atom configuration
        atom: Level frequencies
        cavity: Couplings and (unless detunings are given) mode frequencies
        n: First photon label
        m: Second photon label
        detunings: If given, the mode frequencies are derived from these

    Returns:
        Max entrywise magnitude of the commutator
    """
    if detunings is not None:
        if detunings.configuration is not config:
            raise DomainError(
                f"detunings belong to {detunings.configuration.value}, not {config.value}"
            )
        cavity = cavity.with_frequencies(
            *drive_frequencies_for(config, atom, detunings.delta1, detunings.delta2)
        )
    deviation = max_deviation(commutator(free_block(config, atom, cavity, n, m),
                                         quantized_block(config, cavity, n, m)))
    logger.debug("[H_I, H_II] for %s at (n=%d, m=%d): %.3e", config.value, n, m, deviation)
    return deviation
