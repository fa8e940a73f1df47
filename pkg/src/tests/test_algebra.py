import unittest
import sys
import os
import math

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

import numpy as np

from su3_atom.builder.algebra import (
    gell_mann,
    gell_mann_basis,
    orthogonality_deviation,
    shift_operators,
    structure_constants,
    verify_closed_algebra,
)
from su3_atom.builder.utils import commutator, is_hermitian
from su3_atom.errors import DomainError


def unit(row, col):
    matrix = np.zeros((3, 3), dtype=complex)
    matrix[row, col] = 1.0
    return matrix


class TestGellMann(unittest.TestCase):
    """Test the Gell-Mann basis."""

    def test_hermitian_and_traceless(self):
        for k in range(1, 9):
            with self.subTest(index=k):
                lam = gell_mann(k)
                self.assertTrue(is_hermitian(lam))
                self.assertAlmostEqual(abs(np.trace(lam)), 0.0, places=15)

    def test_orthogonality(self):
        self.assertLessEqual(orthogonality_deviation(), 1e-15)

    def test_index_out_of_range(self):
        for bad in (0, 9, -1, 1.5, True, "3"):
            with self.subTest(index=bad):
                with self.assertRaises(DomainError):
                    gell_mann(bad)

    def test_returns_copy(self):
        lam = gell_mann(3)
        lam[0, 0] = 42
        self.assertEqual(gell_mann(3)[0, 0], 1)

    def test_basis_order(self):
        basis = gell_mann_basis()
        self.assertEqual(len(basis), 8)
        np.testing.assert_array_equal(basis[0], gell_mann(1))
        np.testing.assert_allclose(basis[7], np.diag([1, 1, -2]) / math.sqrt(3))


class TestShiftOperators(unittest.TestCase):
    """Test the T, U and V shift operators."""

    def setUp(self):
        self.ops = shift_operators()

    def test_raising_operators_are_matrix_units(self):
        np.testing.assert_allclose(self.ops.t_plus, unit(0, 1))
        np.testing.assert_allclose(self.ops.v_plus, unit(0, 2))
        np.testing.assert_allclose(self.ops.u_plus, unit(1, 2))

    def test_lowering_is_adjoint(self):
        for family in ("t", "u", "v"):
            with self.subTest(family=family):
                np.testing.assert_array_equal(self.ops.lowering(family),
                                              np.conj(self.ops.raising(family)).T)

    def test_diagonals(self):
        np.testing.assert_allclose(np.diag(self.ops.t3), [1, -1, 0], atol=1e-15)
        np.testing.assert_allclose(np.diag(self.ops.u3), [0, 1, -1], atol=1e-15)
        np.testing.assert_allclose(np.diag(self.ops.v3), [1, 0, -1], atol=1e-15)

    def test_as_dict_has_nine_members(self):
        self.assertEqual(len(self.ops.as_dict()), 9)

    def test_t_plus_u_plus_gives_v_plus(self):
        np.testing.assert_allclose(commutator(self.ops.t_plus, self.ops.u_plus), self.ops.v_plus)


class TestStructureConstants(unittest.TestCase):
    """Test f and d computed from trace formulas."""

    def setUp(self):
        self.constants = structure_constants()

    def test_known_values(self):
        self.assertAlmostEqual(self.constants.f_at(1, 2, 3), 1.0, places=14)
        self.assertAlmostEqual(self.constants.f_at(4, 5, 8), math.sqrt(3) / 2, places=14)
        self.assertAlmostEqual(self.constants.f_at(1, 4, 7), 0.5, places=14)
        self.assertAlmostEqual(self.constants.d_at(1, 1, 8), 1 / math.sqrt(3), places=14)
        self.assertAlmostEqual(self.constants.d_at(8, 8, 8), -1 / math.sqrt(3), places=14)

    def test_f_is_antisymmetric(self):
        f = self.constants.f
        np.testing.assert_allclose(f, -f.transpose(1, 0, 2), atol=1e-15)
        np.testing.assert_allclose(f, -f.transpose(0, 2, 1), atol=1e-15)

    def test_d_is_symmetric(self):
        d = self.constants.d
        np.testing.assert_allclose(d, d.transpose(1, 0, 2), atol=1e-15)


class TestClosedAlgebra(unittest.TestCase):
    """Test the listing of algebra relations."""

    def test_all_relations_hold(self):
        checks = verify_closed_algebra()
        self.assertEqual(len(checks), 20)
        for check in checks:
            with self.subTest(relation=check.name):
                self.assertTrue(check.passed, f"{check.name}: {check.deviation:.3e}")

    def test_deviations_reported_not_raised(self):
        checks = verify_closed_algebra(tolerance=-1.0)
        self.assertTrue(all(not c.passed for c in checks))


if __name__ == '__main__':
    unittest.main()
