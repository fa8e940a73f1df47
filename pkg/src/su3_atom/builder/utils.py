"""
Utility functions for three-level atom computations.
"""

from typing import Iterable, Optional

import numpy as np

from ..errors import DomainError


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Return [a, b] = ab - ba."""
    return a @ b - b @ a


def anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Return {a, b} = ab + ba."""
    return a @ b + b @ a


def dagger(a: np.ndarray) -> np.ndarray:
    return np.conj(a).T


def max_deviation(a: np.ndarray, b: Optional[np.ndarray] = None) -> float:
    """
    Largest entrywise magnitude of ``a - b`` (or of ``a`` alone).

    Args:
        a: Array to measure
        b: Optional reference array of the same shape

    Returns:
        Maximum absolute deviation as a Python float
    """
    diff = np.asarray(a) if b is None else np.asarray(a) - np.asarray(b)
    if diff.size == 0:
        return 0.0
    return float(np.max(np.abs(diff)))


def is_hermitian(a: np.ndarray, tol: float = 1e-15) -> bool:
    return max_deviation(a, dagger(a)) <= tol


def format_float(value: float) -> str:
    """
    Format a float with the shortest decimal text that parses back exactly.

    Args:
        value: Number to format

    Returns:
        Round-trip decimal representation (``repr`` of a Python float)
    """
    return repr(float(value))


def time_grid(t_max: float, samples: int) -> np.ndarray:
    """
    Uniform grid of ``samples`` points on [0, t_max].

    Raises:
        DomainError: If samples < 2 or t_max <= 0
    """
    if samples < 2:
        raise DomainError(f"samples must be >= 2, got {samples}")
    if not t_max > 0:
        raise DomainError(f"t_max must be > 0, got {t_max}")
    return np.linspace(0.0, float(t_max), int(samples))


def neumaier_sum(terms: Iterable[np.ndarray], shape) -> np.ndarray:
    """
    Compensated elementwise sum of arrays, in iteration order.

    Args:
        terms: Arrays to add, all broadcastable to ``shape``
        shape: Shape of the accumulator

    Returns:
        The sum with the running compensation folded in
    """
    total = np.zeros(shape, dtype=float)
    compensation = np.zeros(shape, dtype=float)
    for term in terms:
        candidate = total + term
        big = np.abs(total) >= np.abs(term)
        compensation += np.where(big, (total - candidate) + term, (term - candidate) + total)
        total = candidate
    return total + compensation
