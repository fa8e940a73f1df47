import unittest
import sys
import os

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from su3_atom import ModelBuilder
from su3_atom.builder.models import Configuration, FieldKind, InitialLevel, Method, Weighting
from su3_atom.errors import DomainError, UsageError


class TestModelBuilder(unittest.TestCase):
    """Test the fluent ModelBuilder."""

    def setUp(self):
        self.builder = ModelBuilder()

    def test_classical_model(self):
        spec = (self.builder
                .configuration('lambda')
                .classical(kappa1=0.2, kappa2=0.1)
                .initial(2)
                .horizon(50.0, samples=500)
                .build())
        self.assertIs(spec.configuration, Configuration.LAMBDA)
        self.assertIs(spec.field_kind, FieldKind.CLASSICAL)
        self.assertIs(spec.initial, InitialLevel.LEVEL_2)
        self.assertEqual((spec.drive.kappa1, spec.drive.kappa2), (0.2, 0.1))
        self.assertEqual((spec.t_max, spec.samples), (50.0, 500))
        self.assertIs(spec.resolved_method, Method.ANALYTIC)

    def test_cascade_resolves_to_oracle(self):
        spec = self.builder.configuration('cascade').classical(0.2, 0.1).build()
        self.assertIs(spec.resolved_method, Method.ORACLE)

    def test_detuning_resolves_to_oracle(self):
        spec = self.builder.configuration('vee').classical(0.2, 0.1).detuning(0.1, -0.1).build()
        self.assertIs(spec.resolved_method, Method.ORACLE)
        self.assertEqual(spec.metadata()["delta1"], 0.1)

    def test_metadata(self):
        spec = (self.builder
                .configuration(Configuration.VEE)
                .coherent_state(0.2, 0.1, 30, 20)
                .weighting('occupation')
                .initial(3)
                .build())
        meta = spec.metadata()
        self.assertEqual(meta["model"], "vee")
        self.assertEqual(meta["field"], "coherent")
        self.assertEqual(meta["initial_level"], 3)
        self.assertEqual((meta["nbar"], meta["mbar"]), (30.0, 20.0))
        self.assertEqual(meta["weighting"], "occupation")
        self.assertIs(spec.weighting, Weighting.OCCUPATION)

    def test_missing_model(self):
        with self.assertRaises(UsageError):
            self.builder.classical(0.2, 0.1).build()

    def test_missing_field(self):
        with self.assertRaises(UsageError):
            self.builder.configuration('lambda').build()

    def test_unknown_model(self):
        with self.assertRaises(UsageError):
            self.builder.configuration('ladder')

    def test_invalid_level(self):
        with self.assertRaises(DomainError):
            self.builder.initial(4)

    def test_invalid_horizon(self):
        for t_max, samples in ((0.0, 100), (-1.0, 100), (10.0, 1)):
            with self.subTest(t_max=t_max, samples=samples):
                with self.assertRaises(UsageError):
                    ModelBuilder().configuration('lambda').classical(0.2, 0.1).horizon(t_max, samples).build()

    def test_non_finite_values(self):
        nan, inf = float('nan'), float('inf')
        builds = {
            'kappa1': lambda b: b.classical(inf, 0.1),
            'g2': lambda b: b.number_state(0.2, inf, 1, 1),
            'mbar': lambda b: b.coherent_state(0.2, 0.1, 30, nan),
            'nbar': lambda b: b.coherent_state(0.2, 0.1, inf, 20),
            'omega1': lambda b: b.classical(0.2, 0.1).atom(nan, 1.0),
            'delta2': lambda b: b.classical(0.2, 0.1).detuning(0.0, -inf),
            't_max': lambda b: b.classical(0.2, 0.1).horizon(inf, 100),
        }
        for name, build in builds.items():
            with self.subTest(name=name):
                with self.assertRaisesRegex(UsageError, f"{name} must be finite"):
                    build(ModelBuilder().configuration('lambda')).build()

    def test_negative_photons(self):
        with self.assertRaises(UsageError):
            self.builder.configuration('lambda').number_state(0.2, 0.1, -1, 1).build()

    def test_cascade_rejects_closed_forms(self):
        with self.assertRaises(UsageError):
            self.builder.configuration('cascade').classical(0.2, 0.1).method('analytic').build()
        with self.assertRaises(UsageError):
            ModelBuilder().configuration('cascade').coherent_state(0.2, 0.1, 5, 5).build()

    def test_coherent_rejects_oracle(self):
        with self.assertRaises(UsageError):
            self.builder.configuration('lambda').coherent_state(0.2, 0.1, 5, 5).method('oracle').build()

    def test_detuning_rules(self):
        with self.assertRaises(UsageError):
            self.builder.configuration('lambda').number_state(0.2, 0.1, 1, 1).detuning(0.1, 0.0).build()
        with self.assertRaises(UsageError):
            (ModelBuilder().configuration('lambda').classical(0.2, 0.1)
             .detuning(0.1, 0.0).method('analytic').build())

    def test_repr(self):
        self.builder.configuration('lambda').classical(0.2, 0.1)
        self.assertEqual(repr(self.builder), "ModelBuilder(model=lambda, field=classical, initial=1)")


if __name__ == '__main__':
    unittest.main()
