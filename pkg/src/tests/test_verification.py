import unittest
import sys
import os
import math
from unittest import mock

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

import numpy as np

from su3_atom.builder.hamiltonians import drive_frequencies_for, resonant_drive
from su3_atom.builder.models import (
    AtomParams,
    CavityParams,
    Configuration,
    DriveParams,
    InitialLevel,
    SymmetryKind,
)
from su3_atom.builder.utils import time_grid
from su3_atom.dynamics import verification
from su3_atom.dynamics.verification import (
    NORM_DRIFT_WARNING,
    SuiteCheck,
    block_exponential,
    block_probabilities,
    bohr_correspondence,
    correspondence_suite,
    default_oracle_config,
    dressed_basis_checks,
    oracle_suite,
    quantized_oracle_report,
    rk4_propagator,
    rk4_semiclassical,
    run_suite,
    semiclassical_oracle_report,
    symmetry_report,
    symmetry_suite,
)
from su3_atom.errors import DomainError, UsageError

CLOSED = (Configuration.LAMBDA, Configuration.VEE)
FIG5 = CavityParams(g1=0.2, g2=0.1)


class TestSemiclassicalOracle(unittest.TestCase):
    """Closed forms against fixed-step RK4."""

    def test_closed_forms_match_rk4(self):
        for config in CLOSED:
            for level in InitialLevel:
                with self.subTest(config=config, level=level):
                    report = semiclassical_oracle_report(config, 0.2, 0.1, level)
                    self.assertTrue(report.passed, report.max_abs_error)
                    self.assertEqual(report.tolerance, 1e-6)

    def test_default_step(self):
        atom = AtomParams()
        drive = DriveParams(0.2, 0.1).with_frequencies(*resonant_drive(Configuration.LAMBDA, atom))
        oracle = default_oracle_config(Configuration.LAMBDA, atom, drive)
        self.assertAlmostEqual(oracle.step, 2 * math.pi / math.hypot(0.2, 0.1) / 2000, places=15)
        self.assertEqual(oracle.t_max, 100.0)

    def test_detuned_drive_keeps_norm(self):
        atom = AtomParams()
        for config in Configuration:
            with self.subTest(config=config):
                drive = DriveParams(0.2, 0.1).with_frequencies(*drive_frequencies_for(config, atom, 0.3, -0.2))
                trace = rk4_semiclassical(config, atom, drive, InitialLevel.LEVEL_2,
                                          times=time_grid(50.0, 501))
                self.assertLessEqual(trace.norm_drift, NORM_DRIFT_WARNING)
                self.assertEqual(trace.metadata["method"], "oracle")
                self.assertLess(trace.to_trace().normalization_error(), 1e-8)

    def test_uncoupled_drive_keeps_populations(self):
        atom = AtomParams()
        drive = DriveParams(0.0, 0.0).with_frequencies(*resonant_drive(Configuration.VEE, atom))
        trace = rk4_semiclassical(Configuration.VEE, atom, drive, InitialLevel.LEVEL_3,
                                  times=time_grid(10.0, 11)).to_trace()
        np.testing.assert_allclose(trace.p3, 1.0, atol=1e-15)

    def test_couplings_are_built_in_chunks(self):
        atom = AtomParams()
        drive = DriveParams(0.2, 0.1).with_frequencies(*drive_frequencies_for(Configuration.CASCADE, atom, 0.3, 0.0))
        times = time_grid(20.0, 5)
        whole, _ = rk4_propagator(Configuration.CASCADE, atom, drive, times, 0.01)

        sizes = []
        original = verification._interaction_couplings

        def recording(*args):
            sizes.append(args[-1].size)
            return original(*args)

        with mock.patch.object(verification, "RK4_CHUNK_STEPS", 64), \
                mock.patch.object(verification, "_interaction_couplings", side_effect=recording):
            chunked, _ = rk4_propagator(Configuration.CASCADE, atom, drive, times, 0.01)
        self.assertEqual(len(sizes), math.ceil(2000 / 64))
        self.assertLessEqual(max(sizes), 2 * 64 + 1)
        np.testing.assert_allclose(chunked, whole, atol=1e-13)

    def test_rejects_non_uniform_grid(self):
        atom = AtomParams()
        drive = DriveParams(0.2, 0.1)
        with self.assertRaises(DomainError):
            rk4_propagator(Configuration.LAMBDA, atom, drive, np.array([0.0, 1.0, 3.0]), 0.01)
        with self.assertRaises(DomainError):
            rk4_propagator(Configuration.LAMBDA, atom, drive, np.array([0.0]), 0.01)


class TestQuantizedOracle(unittest.TestCase):
    """Dressed propagator and closed-form table against expm."""

    def test_both_sources_match_expm(self):
        for config in CLOSED:
            for level in InitialLevel:
                for source in ("propagator", "printed"):
                    with self.subTest(config=config, level=level, source=source):
                        report = quantized_oracle_report(config, FIG5, 2, 3, level, source=source)
                        self.assertTrue(report.passed, report.max_abs_error)

    def test_unknown_source(self):
        with self.assertRaises(UsageError):
            quantized_oracle_report(Configuration.LAMBDA, FIG5, 1, 1, InitialLevel.LEVEL_1, source="table")

    def test_batched_expm_matches_single(self):
        times = np.array([0.0, 3.5, 17.25])
        batched = block_probabilities(Configuration.VEE, FIG5, 1, 2, InitialLevel.LEVEL_2, times)
        for row, t in zip(batched, times):
            single = np.abs(block_exponential(Configuration.VEE, FIG5, 1, 2, t)[:, 1]) ** 2
            np.testing.assert_allclose(row, single[::-1], atol=1e-12)

    def test_block_exponential_group_property(self):
        rng = np.random.default_rng(9)
        for config in Configuration:
            np.testing.assert_allclose(block_exponential(config, FIG5, 2, 2, 0.0), np.eye(3), atol=1e-15)
            for t1, t2 in rng.uniform(0.0, 50.0, size=(3, 2)):
                with self.subTest(config=config, t1=t1, t2=t2):
                    u1 = block_exponential(config, FIG5, 2, 2, t1)
                    u2 = block_exponential(config, FIG5, 2, 2, t2)
                    np.testing.assert_allclose(u1 @ u2, block_exponential(config, FIG5, 2, 2, t1 + t2),
                                               atol=1e-12)
                    np.testing.assert_allclose(u1 @ u1.conj().T, np.eye(3), atol=1e-12)

    def test_dressed_basis_checks(self):
        for config in CLOSED:
            for n, m in ((1, 1), (0, 2), (5, 3)):
                with self.subTest(config=config, n=n, m=m):
                    checks = dressed_basis_checks(config, FIG5, n, m)
                    self.assertEqual(len(checks), 5)
                    for check in checks:
                        self.assertTrue(check.passed, check.name)


class TestSymmetry(unittest.TestCase):
    """Lambda/vee inversion symmetry."""

    def test_semiclassical_symmetry_is_exact(self):
        pairs = ((InitialLevel.LEVEL_1, InitialLevel.LEVEL_3),
                 (InitialLevel.LEVEL_2, InitialLevel.LEVEL_2),
                 (InitialLevel.LEVEL_3, InitialLevel.LEVEL_1))
        for lam, vee in pairs:
            with self.subTest(lam=lam):
                report = symmetry_report(SymmetryKind.SEMICLASSICAL, lam, vee, kappa1=0.2, kappa2=0.1)
                self.assertTrue(report.passed)
                self.assertLessEqual(report.max_abs_error, 1e-12)

    def test_vacuum_breaks_symmetry(self):
        report = symmetry_report(SymmetryKind.QUANTIZED, InitialLevel.LEVEL_1, InitialLevel.LEVEL_3,
                                 cavity=FIG5, n=1, m=1)
        self.assertFalse(report.passed)
        self.assertTrue(report.broken)

    def test_matched_means_restore_symmetry_better(self):
        times = time_grid(300.0, 3001)
        kwargs = dict(cavity=FIG5, nbar=30.0, mbar=20.0, times=times)
        matched = symmetry_report(SymmetryKind.COHERENT, InitialLevel.LEVEL_1, InitialLevel.LEVEL_3,
                                  matched=True, **kwargs)
        unmatched = symmetry_report(SymmetryKind.COHERENT, InitialLevel.LEVEL_1, InitialLevel.LEVEL_3,
                                    matched=False, **kwargs)
        self.assertLess(matched.max_abs_error, unmatched.max_abs_error)
        self.assertEqual(matched.tolerance, 0.05)
        self.assertIn("vee means nbar=29, mbar=21", matched.notes)

    def test_coherent_fields_restore_symmetry(self):
        for (lam, vee), levels in (((InitialLevel.LEVEL_1, InitialLevel.LEVEL_3), (1, 2, 3)),
                                   ((InitialLevel.LEVEL_2, InitialLevel.LEVEL_2), (2,))):
            with self.subTest(lam=lam, levels=levels):
                report = symmetry_report(SymmetryKind.COHERENT, lam, vee, cavity=FIG5,
                                         nbar=30.0, mbar=20.0, levels=levels)
                self.assertTrue(report.passed, report.max_abs_error)
                self.assertLessEqual(report.max_abs_error, 0.05)

    def test_mismatched_cases(self):
        with self.assertRaises(UsageError):
            symmetry_report(SymmetryKind.SEMICLASSICAL, InitialLevel.LEVEL_1, InitialLevel.LEVEL_1,
                            kappa1=0.2, kappa2=0.1)

    def test_missing_parameters(self):
        with self.assertRaises(UsageError):
            symmetry_report(SymmetryKind.SEMICLASSICAL, InitialLevel.LEVEL_2, InitialLevel.LEVEL_2, kappa1=0.2)
        with self.assertRaises(UsageError):
            symmetry_report(SymmetryKind.QUANTIZED, InitialLevel.LEVEL_2, InitialLevel.LEVEL_2, cavity=FIG5)
        with self.assertRaises(UsageError):
            symmetry_report(SymmetryKind.COHERENT, InitialLevel.LEVEL_2, InitialLevel.LEVEL_2, cavity=FIG5)

    def test_suite_without_coherent(self):
        checks = symmetry_suite(include_coherent=False)
        self.assertEqual(len(checks), 5)
        self.assertTrue(all(c.passed for c in checks))
        self.assertEqual(sum(c.expected_failure for c in checks), 2)


class TestCorrespondence(unittest.TestCase):
    """Number states against matched classical drives."""

    def test_matched_couplings_reproduce_number_state(self):
        for config in CLOSED:
            for case in InitialLevel:
                for n, m in ((1, 1), (3, 7), (400, 400)):
                    with self.subTest(config=config, case=case, n=n, m=m):
                        report = bohr_correspondence(config, FIG5, n, m, case)
                        self.assertTrue(report.passed, report.max_abs_error)


class TestSuites(unittest.TestCase):
    """Suite runner and report lines."""

    def test_algebra_suite(self):
        checks = run_suite("algebra")
        self.assertGreater(len(checks), 20)
        self.assertTrue(all(c.passed for c in checks))

    def test_oracle_suite(self):
        checks = oracle_suite()
        self.assertEqual(len(checks), 35)
        self.assertEqual([c.name for c in checks if not c.passed], [])
        self.assertIn("lambda level 1 printed vs expm (11 sets)", [c.name for c in checks])

    def test_symmetry_suite(self):
        checks = symmetry_suite()
        self.assertEqual(len(checks), 7)
        self.assertEqual([c.name for c in checks if not c.passed], [])
        self.assertIn("semiclassical lambda 1 vs vee 3 (21 sets)", [c.name for c in checks])
        self.assertIn("coherent lambda 2 vs vee 2 (p2)", [c.name for c in checks])

    def test_correspondence_suite(self):
        checks = correspondence_suite()
        self.assertEqual(len(checks), 6)
        self.assertEqual([c.name for c in checks if not c.passed], [])
        self.assertTrue(all(c.name.endswith("(12 sets)") for c in checks))

    def test_unknown_suite(self):
        with self.assertRaises(UsageError):
            run_suite("bogus")

    def test_format(self):
        self.assertEqual(SuiteCheck("x", 1.5e-13, True).format(), "x: max_dev=1.500e-13 PASS")
        self.assertEqual(SuiteCheck("x", 0.5, False).format(), "x: max_dev=5.000e-01 FAIL")
        self.assertEqual(SuiteCheck("x", 0.5, True, expected_failure=True).format(),
                         "x: max_dev=5.000e-01 PASS (broken as expected)")


if __name__ == '__main__':
    unittest.main()
