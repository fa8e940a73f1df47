import unittest
import sys
import os
import json
import tempfile

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

import numpy as np

from su3_atom.data_bindings.config import RunConfig
from su3_atom.data_bindings.destinations import read_trace
from su3_atom.data_bindings.pipeline import INDEX_FILE, TracePipeline, coerce_value, run_name
from su3_atom.data_bindings.sources import (
    ClassicalSource,
    CoherentSource,
    NumberStateSource,
    create_source,
)
from su3_atom.errors import DomainError, UsageError


class TestSources(unittest.TestCase):
    """Test source selection and default grids."""

    def test_create_source(self):
        self.assertIsInstance(create_source(RunConfig.for_figure(3).to_model_spec()), ClassicalSource)
        self.assertIsInstance(create_source(RunConfig.for_figure(5).to_model_spec()), NumberStateSource)
        self.assertIsInstance(create_source(RunConfig.for_figure(7).to_model_spec()), CoherentSource)

    def test_source_field_mismatch(self):
        with self.assertRaises(UsageError):
            ClassicalSource(RunConfig.for_figure(5).to_model_spec())

    def test_default_grid(self):
        trace = create_source(RunConfig.for_figure(4).to_model_spec()).trace()
        self.assertEqual(trace.samples, 2000)
        self.assertEqual(trace.times[-1], 100.0)
        self.assertEqual(trace.metadata["model"], "vee")
        self.assertEqual(trace.metadata["method"], "analytic")
        self.assertLess(trace.normalization_error(), 1e-12)

    def test_coherent_default_horizon(self):
        source = create_source(RunConfig.for_figure(7).merged({"nbar": 4.0, "mbar": 3.0}).to_model_spec())
        times = source.times()
        self.assertAlmostEqual(times[-1], source.default_t_max())
        self.assertGreaterEqual(times.size, 2000)

    def test_number_state_oracle_path(self):
        analytic = TracePipeline(RunConfig.for_figure(5, initial_level=2).merged({"samples": 200})).compute()
        oracle = TracePipeline(RunConfig.for_figure(5, initial_level=2).merged(
            {"samples": 200, "method": "oracle"})).compute()
        np.testing.assert_allclose(analytic.probabilities, oracle.probabilities, atol=1e-10)
        self.assertEqual(oracle.metadata["method"], "oracle")

    def test_cascade_number_state(self):
        config = RunConfig(model="cascade", field="number", g1=0.2, g2=0.1, n=2, m=2,
                           initial_level=1, samples=300)
        trace = TracePipeline(config).compute()
        self.assertLess(trace.normalization_error(), 1e-12)
        self.assertLess(trace.p1.min(), 1.0)

    def test_detuned_classical_records_drift(self):
        config = RunConfig.for_figure(3).merged({"delta1": 0.2, "delta2": 0.1, "t_max": 40.0, "samples": 401})
        trace = TracePipeline(config).compute()
        self.assertIn("norm_drift", trace.metadata)
        self.assertLess(trace.normalization_error(), 1e-8)

    def test_unoccupiable_state_surfaces_domain_error(self):
        config = RunConfig.for_figure(5, initial_level=3).merged({"n": 0})
        with self.assertRaises(DomainError):
            TracePipeline(config).compute()


class TestSimulate(unittest.TestCase):
    """Test single runs written to disk."""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def test_reruns_are_byte_identical(self):
        path = os.path.join(self.tmp.name, "fig5.csv")
        config = RunConfig.for_figure(5).merged({"output_path": path})
        TracePipeline(config).simulate()
        with open(path, "rb") as handle:
            first = handle.read()
        TracePipeline(config).simulate()
        with open(path, "rb") as handle:
            self.assertEqual(handle.read(), first)

    def test_refuses_overwrite_without_force(self):
        path = os.path.join(self.tmp.name, "fig3.json")
        config = RunConfig.for_figure(3).merged({"output_path": path, "format": "json", "samples": 50})
        TracePipeline(config).simulate()
        with self.assertRaises(UsageError):
            TracePipeline(config).simulate(force=False)

    def test_no_output_path(self):
        result = TracePipeline(RunConfig.for_figure(3).merged({"samples": 10})).simulate()
        self.assertIsNone(result.path)
        self.assertEqual(result.trace.samples, 10)


class TestSweep(unittest.TestCase):
    """Test one-parameter sweeps."""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.out = os.path.join(self.tmp.name, "sweep")
        self.pipeline = TracePipeline(RunConfig.for_figure(3).merged({"samples": 100}))

    def test_sweep_writes_runs_and_index(self):
        result = self.pipeline.sweep("initial_level", ["1", "2", "3"], self.out, workers=2)
        self.assertEqual(len(result.runs), 3)
        with open(result.index_path) as handle:
            index = json.load(handle)
        self.assertEqual(index["parameter"], "initial_level")
        self.assertEqual([run["file"] for run in index["runs"]],
                         ["lambda_classical_initial_level-1.csv",
                          "lambda_classical_initial_level-2.csv",
                          "lambda_classical_initial_level-3.csv"])
        self.assertNotIn("output_path", index["runs"][0]["config"])
        loaded = read_trace(os.path.join(self.out, index["runs"][2]["file"]))
        self.assertEqual(loaded.metadata["initial_level"], 3)

    def test_sweep_is_independent_of_workers(self):
        first = self.pipeline.sweep("kappa1", [0.1, 0.3], os.path.join(self.tmp.name, "a"), workers=1)
        second = self.pipeline.sweep("kappa1", [0.1, 0.3], os.path.join(self.tmp.name, "b"), workers=4)
        for left, right in zip(first.runs, second.runs):
            with open(left.path, "rb") as a, open(right.path, "rb") as b:
                self.assertEqual(a.read(), b.read())

    def test_sweep_over_format_uses_each_suffix(self):
        result = self.pipeline.sweep("format", ["csv", "json"], self.out)
        self.assertEqual([os.path.basename(run.path) for run in result.runs],
                         ["lambda_classical_format-csv.csv", "lambda_classical_format-json.json"])
        with open(result.runs[1].path) as handle:
            self.assertTrue(handle.read().startswith("{"))
        for run in result.runs:
            np.testing.assert_array_equal(read_trace(run.path).p1, run.trace.p1)

    def test_existing_files_need_force(self):
        self.pipeline.sweep("kappa2", [0.1], self.out)
        with self.assertRaises(UsageError):
            self.pipeline.sweep("kappa2", [0.1], self.out)
        self.pipeline.sweep("kappa2", [0.1], self.out, force=True)

    def test_bad_ranges(self):
        with self.assertRaises(UsageError):
            self.pipeline.sweep("kappa1", [], self.out)
        with self.assertRaises(UsageError):
            self.pipeline.sweep("kappa1", ["0.1", "0.10"], self.out)
        with self.assertRaises(UsageError):
            self.pipeline.sweep("output_path", ["x"], self.out)
        with self.assertRaises(UsageError):
            self.pipeline.sweep("samples", ["12.5"], self.out)

    def test_coerce_and_name(self):
        self.assertEqual(coerce_value("n", "3"), 3)
        self.assertEqual(coerce_value("model", "vee"), "vee")
        self.assertEqual(coerce_value("kappa1", "0.25"), 0.25)
        with self.assertRaises(UsageError):
            coerce_value("kappa1", "abc")
        self.assertEqual(run_name(RunConfig.for_figure(7), "nbar", 30.0), "lambda_coherent_nbar-30.0")


if __name__ == '__main__':
    unittest.main()
