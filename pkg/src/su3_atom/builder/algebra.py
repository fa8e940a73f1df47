"""
SU(3) generator algebra: Gell-Mann matrices, T/U/V shift operators,
structure constants and a checkable listing of the closed algebra.

Indices of the Gell-Mann basis are 1-based, as they are usually written.
"""

import logging
import math
from functools import lru_cache
from typing import Callable, List, Tuple

import numpy as np

from ..errors import DomainError
from .models import ComplexMatrix3, RelationCheck, ShiftOperators, StructureConstants
from .utils import anticommutator, commutator, dagger, max_deviation

logger = logging.getLogger(__name__)

ALGEBRA_TOLERANCE = 1e-15

_SQRT3 = math.sqrt(3.0)


@lru_cache(maxsize=None)
def _gell_mann_table() -> Tuple[np.ndarray, ...]:
    i = 1j
    table = (
        [[0, 1, 0], [1, 0, 0], [0, 0, 0]],
        [[0, -i, 0], [i, 0, 0], [0, 0, 0]],
        [[1, 0, 0], [0, -1, 0], [0, 0, 0]],
        [[0, 0, 1], [0, 0, 0], [1, 0, 0]],
        [[0, 0, -i], [0, 0, 0], [i, 0, 0]],
        [[0, 0, 0], [0, 0, 1], [0, 1, 0]],
        [[0, 0, 0], [0, 0, -i], [0, i, 0]],
        np.diag([1, 1, -2]) / _SQRT3,
    )
    matrices = []
    for entries in table:
        matrix = np.array(entries, dtype=complex)
        matrix.setflags(write=False)
        matrices.append(matrix)
    return tuple(matrices)


def gell_mann(index: int) -> ComplexMatrix3:
    """
    Return the Gell-Mann matrix lambda_index.

    Args:
        index: Generator index, 1..8

    Returns:
        Hermitian, traceless 3x3 complex matrix (a fresh copy)

    Raises:
        DomainError: If index is outside 1..8
    """
    if isinstance(index, bool) or not isinstance(index, (int, np.integer)) or not 1 <= index <= 8:
        raise DomainError(f"Gell-Mann index must be an integer in 1..8, got {index!r}")
    return _gell_mann_table()[int(index) - 1].copy()


def gell_mann_basis() -> List[ComplexMatrix3]:
    """All eight generators, lambda_1 first."""
    return [gell_mann(k) for k in range(1, 9)]


def shift_operators() -> ShiftOperators:
    """
    Build the T, U and V shift operators from the Gell-Mann basis.

    T couples |3> and |2>, V couples |3> and |1>, U couples |2> and |1>.

    Returns:
        ShiftOperators with the raising, lowering and diagonal members
    """
    lam = gell_mann_basis()
    t_plus = (lam[0] + 1j * lam[1]) / 2
    u_plus = (lam[5] + 1j * lam[6]) / 2
    v_plus = (lam[3] + 1j * lam[4]) / 2
    return ShiftOperators(
        t_plus=t_plus,
        t_minus=dagger(t_plus),
        u_plus=u_plus,
        u_minus=dagger(u_plus),
        v_plus=v_plus,
        v_minus=dagger(v_plus),
        t3=lam[2].copy(),
        u3=(_SQRT3 * lam[7] - lam[2]) / 2,
        v3=(_SQRT3 * lam[7] + lam[2]) / 2,
    )


def structure_constants() -> StructureConstants:
    """
    Compute f and d from trace formulas over the Gell-Mann basis.

    f_ijk = -(i/4) tr([l_i, l_j] l_k) and d_ijk = (1/4) tr({l_i, l_j} l_k).

    Returns:
        StructureConstants with real 8x8x8 arrays
    """
    lam = np.array(gell_mann_basis())
    products = np.einsum('iab,jbc->ijac', lam, lam)
    comm = products - products.transpose(1, 0, 2, 3)
    anti = products + products.transpose(1, 0, 2, 3)
    f = np.einsum('ijab,kba->ijk', comm, lam) * (-0.25j)
    d = np.einsum('ijab,kba->ijk', anti, lam) * 0.25
    return StructureConstants(f=np.real(f), d=np.real(d))


def _shift_relations(ops: ShiftOperators) -> List[Tuple[str, Callable[[], float]]]:
    T, U, V = "t", "u", "v"
    plus, minus = ops.raising, ops.lowering
    diag = ops.diagonal

    def eq(lhs, rhs) -> Callable[[], float]:
        return lambda: max_deviation(lhs, rhs)

    def both_signs(d_family, family, coefficient) -> Callable[[], float]:
        # [X3, Y(+/-)] = +/- coefficient Y(+/-)
        def check() -> float:
            up = max_deviation(commutator(diag(d_family), plus(family)), coefficient * plus(family))
            down = max_deviation(commutator(diag(d_family), minus(family)), -coefficient * minus(family))
            return max(up, down)
        return check

    return [
        ("[U+,U-]=U3", eq(commutator(plus(U), minus(U)), diag(U))),
        ("[V+,V-]=V3", eq(commutator(plus(V), minus(V)), diag(V))),
        ("[T+,T-]=T3", eq(commutator(plus(T), minus(T)), diag(T))),
        ("[T3,T±]=±2T±", both_signs(T, T, 2)),
        ("[T3,U±]=∓U±", both_signs(T, U, -1)),
        ("[T3,V±]=±V±", both_signs(T, V, 1)),
        ("[V3,T±]=±T±", both_signs(V, T, 1)),
        ("[V3,U±]=±U±", both_signs(V, U, 1)),
        ("[V3,V±]=±2V±", both_signs(V, V, 2)),
        ("[U3,T±]=∓T±", both_signs(U, T, -1)),
        ("[U3,U±]=±2U±", both_signs(U, U, 2)),
        ("[U3,V±]=±V±", both_signs(U, V, 1)),
        ("[T+,V-]=-U-", eq(commutator(plus(T), minus(V)), -minus(U))),
        ("[T+,U+]=V+", eq(commutator(plus(T), plus(U)), plus(V))),
        ("[U+,V-]=T-", eq(commutator(plus(U), minus(V)), minus(T))),
        ("[T-,V+]=U+", eq(commutator(minus(T), plus(V)), plus(U))),
        ("[T-,U-]=-V-", eq(commutator(minus(T), minus(U)), -minus(V))),
        ("[U-,V+]=-T+", eq(commutator(minus(U), plus(V)), -plus(T))),
    ]


def _structure_relations(constants: StructureConstants) -> List[Tuple[str, Callable[[], float]]]:
    lam = gell_mann_basis()
    identity = np.eye(3)

    def commutation() -> float:
        worst = 0.0
        for i in range(8):
            for j in range(8):
                rhs = 2j * np.einsum('k,kab->ab', constants.f[i, j], np.array(lam))
                worst = max(worst, max_deviation(commutator(lam[i], lam[j]), rhs))
        return worst

    def anticommutation() -> float:
        worst = 0.0
        for i in range(8):
            for j in range(8):
                rhs = (4.0 / 3.0) * (i == j) * identity
                rhs = rhs + 2 * np.einsum('k,kab->ab', constants.d[i, j], np.array(lam))
                worst = max(worst, max_deviation(anticommutator(lam[i], lam[j]), rhs))
        return worst

    return [
        ("[λi,λj]=2i f_ijk λk", commutation),
        ("{λi,λj}=(4/3)δij+2 d_ijk λk", anticommutation),
    ]


def orthogonality_deviation() -> float:
    """Largest deviation of tr(l_i l_j) from 2 delta_ij over all 64 pairs."""
    lam = np.array(gell_mann_basis())
    gram = np.einsum('iab,jba->ij', lam, lam)
    return max_deviation(gram, 2 * np.eye(8))


def verify_closed_algebra(tolerance: float = ALGEBRA_TOLERANCE) -> List[RelationCheck]:
    """
    Evaluate the shift-operator algebra and both structure-constant relations.

    Deviations are reported as data; nothing is raised when a relation fails.

    Args:
        tolerance: Pass threshold attached to each check

    Returns:
        One RelationCheck per relation, shift-operator relations first
    """
    relations = _shift_relations(shift_operators()) + _structure_relations(structure_constants())
    report = [RelationCheck(name, check(), tolerance) for name, check in relations]
    logger.debug("Checked %d algebra relations", len(report))
    return report
